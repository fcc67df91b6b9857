#include "cosserat/stepper.hpp"

#include <cmath>
#include <sstream>

namespace cosserat {

namespace {

const Vec3 kE3(0.0, 0.0, 1.0);

std::vector<double> effective_e(const std::vector<Vec3>& x, const RodProperties& props)
{
    const double ln = props.element_length();
    std::vector<double> e(x.size() - 1);
    for (std::size_t q = 0; q + 1 < x.size(); ++q)
        e[q] = props.model == Model::modified ? dilatation(x[q], x[q + 1], ln) : 1.0;
    return e;
}

/// vee(J_d F - F^T J_d): the body angular momentum (times h) carried by F.
Vec3 momentum_of(const Rotation& F, const Mat3& Jd)
{
    const Mat3 M = Jd * F.matrix();
    return 2.0 * vee(antisym(M));
}

std::vector<Vec3> translation_update(const TwoLevelState& two, const std::vector<Rotation>& F,
                                     const StrainGradient& grad, const RodProperties& props,
                                     const LoadProgram& loads, const BoundarySpec& bc, std::size_t k)
{
    const RodState& now = two.current;
    const double h = now.h;
    const double t = static_cast<double>(k) * h;
    const std::vector<double> w = node_lengths(props);
    const std::vector<Vec3> kinetic = rotational_kinetic_force(now, F, props);

    std::vector<Vec3> next(now.x.size());
    for (std::size_t q = 0; q < now.x.size(); ++q) {
        if (bc.fixed(q)) {
            next[q] = bc.base_position;
            continue;
        }
        const Vec3 force = -grad.position[q] + kinetic[q] + loads.force(q, t);
        next[q] = 2.0 * now.x[q] - two.x_prev[q] + (h * h / (props.mass_per_length * w[q])) * force;
    }
    return next;
}

Vec3 rhs_at(const TwoLevelState& two, const StrainGradient& grad, const std::vector<double>& ebar_now,
            const std::vector<double>& ebar_prev, const Mat3& Jd, const RodProperties& props,
            const LoadProgram& loads, std::size_t k, std::size_t q)
{
    const RodState& now = two.current;
    const double h = now.h;
    const double t = static_cast<double>(k) * h;
    const Vec3 torque = -grad.rotation[q] + loads.body_moment(q, t, now.R[q]);
    return (ebar_now[q] / ebar_prev[q]) * momentum_of(two.F_prev[q], Jd)
         + (2.0 * h * h * ebar_now[q] / props.element_length()) * torque;
}

void check_two_level(const TwoLevelState& two, const RodProperties& props)
{
    check_grid(two.current, props);
    const std::size_t nodes = props.elements + 1;
    if (two.x_prev.size() != nodes || two.F_prev.size() != nodes)
        throw std::invalid_argument("two-level state: previous level does not match the grid");
    if (!(two.current.h > 0.0))
        throw std::invalid_argument("two-level state: time step must be positive");
}

} // namespace

void StepperConfig::validate() const
{
    if (!(h > 0.0) || !std::isfinite(h))
        throw std::invalid_argument("stepper.h must be positive");
    if (!(newton_tol > 0.0))
        throw std::invalid_argument("stepper.newton_tol must be positive");
    if (newton_max_iters < 1)
        throw std::invalid_argument("stepper.newton_max_iters must be at least 1");
    if (!(fd_check_step > 0.0))
        throw std::invalid_argument("stepper.fd_check_step must be positive");
}

TwoLevelState initialize(const std::vector<Vec3>& x0, const std::vector<Rotation>& R0,
                         const std::vector<Vec3>& v0, const std::vector<Vec3>& w0,
                         const StepperConfig& cfg, const BoundarySpec& bc)
{
    cfg.validate();
    const std::size_t n = x0.size();
    if (n < 2 || R0.size() != n || v0.size() != n || w0.size() != n) {
        std::ostringstream os;
        os << "initialize: inconsistent array lengths (x " << x0.size() << ", R " << R0.size() << ", v "
           << v0.size() << ", w " << w0.size() << ")";
        throw std::invalid_argument(os.str());
    }
    TwoLevelState two;
    two.current.x = x0;
    two.current.R = R0;
    two.current.step = 0;
    two.current.h = cfg.h;
    two.x_prev.resize(n);
    two.F_prev.resize(n);
    for (std::size_t q = 0; q < n; ++q) {
        if (bc.fixed(q)) {
            two.current.x[q] = bc.base_position;
            two.current.R[q] = bc.base_rotation;
            two.x_prev[q] = bc.base_position;
            two.F_prev[q] = Rotation::identity();
            continue;
        }
        two.x_prev[q] = x0[q] - cfg.h * v0[q];
        two.F_prev[q] = cay(cfg.h * w0[q]);
    }
    return two;
}

StrainGradient strain_gradient(const RodState& state, const RodProperties& props)
{
    check_grid(state, props);
    const double ln = props.element_length();
    const Mat3 C = props.stiffness_c();
    const Mat3 K = props.stiffness_k();
    const bool modified = props.model == Model::modified;

    StrainGradient g;
    g.position.assign(state.x.size(), Vec3::Zero());
    g.rotation.assign(state.x.size(), Vec3::Zero());

    for (std::size_t q = 0; q < props.elements; ++q) {
        const Mat3& Ra = state.R[q].matrix();
        const Mat3& Rb = state.R[q + 1].matrix();
        const Vec3 dx = state.x[q + 1] - state.x[q];
        const double e_geo = dilatation(state.x[q], state.x[q + 1], ln);
        const double e = modified ? e_geo : 1.0;

        const Vec3 Va = Ra.transpose() * dx / ln;
        const Vec3 Vb = Rb.transpose() * dx / ln;
        const Vec3 a = Va - kE3;
        const Vec3 b = Vb - kE3;
        const Vec3 Ca = C * a;
        const Vec3 Cb = C * b;

        const Mat3 G = Ra.transpose() * Rb;
        const Vec3 psi = inv_cay(G);
        const Vec3 Kpsi = K * psi;
        const double e3 = e * e * e;

        // Dependence through the strains at fixed e.
        Vec3 d_dx = (0.5 / e) * (Ra * Ca + Rb * Cb);
        if (modified) {
            // Dependence through e = |dx| / l_n.
            const double dE_de = -0.25 * ln / (e * e) * (a.dot(Ca) + b.dot(Cb))
                               - 1.5 / (ln * e3 * e) * psi.dot(Kpsi);
            d_dx += dE_de * dx / (e_geo * ln * ln);
        }
        g.position[q] -= d_dx;
        g.position[q + 1] += d_dx;

        g.rotation[q] += (0.5 * ln / e) * Ca.cross(Va);
        g.rotation[q + 1] += (0.5 * ln / e) * Cb.cross(Vb);

        const Vec3 m = inv_cay_left_jacobian(psi).transpose() * (Kpsi / (ln * e3));
        g.rotation[q + 1] += m;
        g.rotation[q] -= G * m;
    }
    return g;
}

Vec3 internal_force(const RodState& state, const RodProperties& props, std::size_t q)
{
    if (q >= state.x.size())
        throw std::out_of_range("internal_force: node index out of range");
    return -strain_gradient(state, props).position[q];
}

Vec3 elastic_torque(const RodState& state, const RodProperties& props, std::size_t q)
{
    if (q >= state.x.size())
        throw std::out_of_range("elastic_torque: node index out of range");
    return -strain_gradient(state, props).rotation[q];
}

std::vector<Vec3> rotational_kinetic_force(const RodState& state, const std::vector<Rotation>& F,
                                           const RodProperties& props)
{
    check_grid(state, props);
    std::vector<Vec3> out(state.x.size(), Vec3::Zero());
    if (props.model == Model::standard)
        return out;
    if (F.size() != state.x.size())
        throw std::invalid_argument("rotational_kinetic_force: increment count does not match the grid");

    const double ln = props.element_length();
    const double h = state.h;
    const Mat3 Jd = nonstandard_inertia(props.inertia());
    const Mat3 I = Mat3::Identity();

    // T_rot = sum_j (c_j + c_{j+1}) / e_j, c_q = l_n/(4h^2) tr[(F_q - I)^T J_d (F_q - I)].
    std::vector<double> c(state.x.size());
    for (std::size_t q = 0; q < c.size(); ++q) {
        const Mat3 D = F[q].matrix() - I;
        c[q] = 0.25 * ln / (h * h) * (D.transpose() * Jd * D).trace();
    }
    for (std::size_t j = 0; j < props.elements; ++j) {
        const Vec3 dx = state.x[j + 1] - state.x[j];
        const double e = dilatation(state.x[j], state.x[j + 1], ln);
        const Vec3 dT_ddx = -(c[j] + c[j + 1]) / (e * e) * dx / (e * ln * ln);
        out[j] -= dT_ddx;
        out[j + 1] += dT_ddx;
    }
    return out;
}

Vec3 rotational_rhs(const TwoLevelState& two, const RodProperties& props, const LoadProgram& loads,
                    std::size_t k, std::size_t q)
{
    check_two_level(two, props);
    if (q > props.elements)
        throw std::out_of_range("rotational_rhs: node index out of range");
    const StrainGradient grad = strain_gradient(two.current, props);
    const std::vector<double> ebar_now = node_weights(effective_e(two.current.x, props));
    const std::vector<double> ebar_prev = node_weights(effective_e(two.x_prev, props));
    const Mat3 Jd = nonstandard_inertia(props.inertia());
    return rhs_at(two, grad, ebar_now, ebar_prev, Jd, props, loads, k, q);
}

Vec3 implicit_map(const Vec3& f, const Mat3& Jd)
{
    const Mat3 M = cay(f).matrix() * Jd;
    return 2.0 * vee(antisym(M));
}

ImplicitSolution solve_implicit_rotation(const Vec3& g, const Mat3& Jd, const StepperConfig& cfg,
                                         const Vec3& guess)
{
    ImplicitSolution sol;
    Vec3 f = guess;
    for (int it = 0;; ++it) {
        const Vec3 r = implicit_map(f, Jd) - g;
        const double rn = r.norm();
        sol.residuals.push_back(rn);
        if (!std::isfinite(rn))
            break;
        if (rn <= cfg.newton_tol) {
            sol.f = f;
            sol.F = cay(f);
            sol.iterations = it;
            return sol;
        }
        if (it >= cfg.newton_max_iters)
            break;

        Mat3 jac;
        if (cfg.fd_jacobian) {
            const double d = cfg.fd_check_step;
            for (int i = 0; i < 3; ++i) {
                const Vec3 step = d * Vec3::Unit(i);
                jac.col(i) = (implicit_map(f + step, Jd) - implicit_map(f - step, Jd)) / (2.0 * d);
            }
        } else {
            // d cay(f) = A^{-1} df^ A^{-1}, A = I - f^/2.
            const Mat3 Ainv = cay_half_factor(f);
            for (int i = 0; i < 3; ++i) {
                const Mat3 M = Ainv * hat(Vec3::Unit(i)).matrix() * Ainv * Jd;
                jac.col(i) = 2.0 * vee(antisym(M));
            }
        }
        const Eigen::PartialPivLU<Mat3> lu(jac);
        if (!(std::abs(lu.determinant()) > 1e-300))
            break;
        f -= lu.solve(r);
    }

    std::ostringstream os;
    os << "implicit rotational update did not converge (residuals:";
    for (double rn : sol.residuals)
        os << ' ' << rn;
    os << "); reduce the time step";
    throw StepSizeError(os.str(), sol.residuals);
}

std::vector<Vec3> step_translation(const TwoLevelState& two, const std::vector<Rotation>& F,
                                   const RodProperties& props, const LoadProgram& loads,
                                   const BoundarySpec& bc, std::size_t k)
{
    check_two_level(two, props);
    return translation_update(two, F, strain_gradient(two.current, props), props, loads, bc, k);
}

TwoLevelState step(const TwoLevelState& two, const RodProperties& props, const LoadProgram& loads,
                   const BoundarySpec& bc, const StepperConfig& cfg)
{
    check_two_level(two, props);
    const RodState& now = two.current;
    const std::size_t k = now.step;
    const std::size_t nodes = now.x.size();

    const StrainGradient grad = strain_gradient(now, props);
    const std::vector<double> ebar_now = node_weights(effective_e(now.x, props));
    const std::vector<double> ebar_prev = node_weights(effective_e(two.x_prev, props));
    const Mat3 Jd = nonstandard_inertia(props.inertia());

    // Rotations first: the translational update of the modified model needs
    // F^k through the dilatation dependence of the rotational kinetic energy.
    std::vector<Rotation> F(nodes);
    for (std::size_t q = 0; q < nodes; ++q) {
        if (bc.fixed(q))
            continue;
        const Vec3 g = rhs_at(two, grad, ebar_now, ebar_prev, Jd, props, loads, k, q);
        F[q] = solve_implicit_rotation(g, Jd, cfg, inv_cay(two.F_prev[q])).F;
    }

    TwoLevelState out;
    out.current.x = translation_update(two, F, grad, props, loads, bc, k);
    out.current.R.resize(nodes);
    for (std::size_t q = 0; q < nodes; ++q)
        out.current.R[q] = bc.fixed(q) ? bc.base_rotation : now.R[q] * F[q];
    out.current.step = k + 1;
    out.current.h = now.h;
    out.x_prev = now.x;
    out.F_prev = std::move(F);
    return out;
}

std::size_t step_count(double horizon, double h)
{
    if (!(horizon >= 0.0) || !(h > 0.0))
        throw std::invalid_argument("horizon must be non-negative and h positive");
    const double steps = std::round(horizon / h);
    if (std::abs(steps * h - horizon) > 1e-9) {
        std::ostringstream os;
        os << "horizon " << horizon << " is not a multiple of the time step " << h;
        throw std::invalid_argument(os.str());
    }
    return static_cast<std::size_t>(steps);
}

TwoLevelState run(const TwoLevelState& initial, const RodProperties& props, const LoadProgram& loads,
                  const BoundarySpec& bc, const StepperConfig& cfg, double horizon, const DiagnosticsSink& sink)
{
    props.validate();
    cfg.validate();
    loads.validate(props.elements);
    const std::size_t steps = step_count(horizon, cfg.h);

    TwoLevelState two = initial;
    const std::size_t k0 = two.current.step;
    std::size_t k = k0;
    try {
        for (;;) {
            // The record of level k needs level k+1 for its velocities.
            TwoLevelState next = step(two, props, loads, bc, cfg);
            if (sink)
                sink(make_record(two.current, next.current, props), two.current);
            if (k - k0 == steps)
                break;
            two = std::move(next);
            ++k;
        }
    } catch (const SimulationError&) {
        throw;
    } catch (const std::exception& ex) {
        throw SimulationError(k, ex.what());
    }
    return two;
}

} // namespace cosserat
