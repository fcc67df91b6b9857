#include "cosserat/rod.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cosserat {

namespace {

const Vec3 kE3(0.0, 0.0, 1.0);

void require_positive(const Vec3& v, const char* what)
{
    if (!(v.minCoeff() > 0.0) || !v.allFinite())
        throw std::invalid_argument(std::string(what) + " entries must be positive and finite");
}

} // namespace

const char* to_string(Model m) { return m == Model::modified ? "modified" : "standard"; }

Model model_from_string(const std::string& s)
{
    if (s == "modified")
        return Model::modified;
    if (s == "standard")
        return Model::standard;
    throw std::invalid_argument("unknown model '" + s + "' (expected modified|standard)");
}

void RodProperties::validate() const
{
    if (!(length > 0.0) || !std::isfinite(length))
        throw std::invalid_argument("rod length must be positive");
    if (elements < 2)
        throw std::invalid_argument("rod needs at least 2 elements");
    if (!(mass_per_length > 0.0))
        throw std::invalid_argument("mass per length must be positive");
    if (!(reference_area > 0.0))
        throw std::invalid_argument("reference area must be positive");
    require_positive(inertia_per_length, "inertia per length");
    require_positive(shear_stretch_stiffness, "shear/stretch stiffness");
    require_positive(bend_twist_stiffness, "bend/twist stiffness");
}

RodState straight_rod(const RodProperties& props, const Vec3& base, const Rotation& frame)
{
    RodState s;
    const double ln = props.element_length();
    const Vec3 t = frame * kE3;
    s.x.reserve(props.elements + 1);
    for (std::size_t q = 0; q <= props.elements; ++q)
        s.x.push_back(base + static_cast<double>(q) * ln * t);
    s.R.assign(props.elements + 1, frame);
    return s;
}

double dilatation(const Vec3& x0, const Vec3& x1, double element_length)
{
    if (!(element_length > 0.0))
        throw std::invalid_argument("element length must be positive");
    const double len = (x1 - x0).norm();
    if (!(len >= 1e-12 * element_length)) {
        std::ostringstream os;
        os << "degenerate element: length " << len << " below 1e-12 * l_n";
        throw DegenerateElementError(os.str());
    }
    return len / element_length;
}

std::vector<double> node_weights(const std::vector<double>& e)
{
    if (e.empty())
        throw std::invalid_argument("node_weights: no elements");
    for (double v : e) {
        if (!(v > 0.0))
            throw DegenerateElementError("node_weights: non-positive dilatation");
    }
    std::vector<double> inv(e.size() + 1, 0.0);
    for (std::size_t j = 0; j < e.size(); ++j) {
        inv[j] += 1.0 / e[j];
        inv[j + 1] += 1.0 / e[j];
    }
    std::vector<double> w(inv.size());
    for (std::size_t q = 0; q < inv.size(); ++q)
        w[q] = 1.0 / inv[q];
    return w;
}

Vec3 linear_strain(const Rotation& r, const Vec3& x0, const Vec3& x1, double element_length)
{
    if (!(element_length > 0.0))
        throw std::invalid_argument("element length must be positive");
    return r.matrix().transpose() * (x1 - x0) / element_length - kE3;
}

Vec3 rotational_strain(const Rotation& r0, const Rotation& r1)
{
    return inv_cay(Mat3(r0.matrix().transpose() * r1.matrix()));
}

std::vector<double> dilatations(const RodState& state, double element_length)
{
    std::vector<double> e(state.elements());
    for (std::size_t q = 0; q < e.size(); ++q)
        e[q] = dilatation(state.x[q], state.x[q + 1], element_length);
    return e;
}

ElementStrains strains(const RodState& state, double element_length)
{
    ElementStrains s;
    s.e = dilatations(state, element_length);
    const std::size_t n = state.elements();
    s.shear.resize(n);
    s.psi.resize(n);
    s.kappa.resize(n);
    for (std::size_t q = 0; q < n; ++q) {
        s.shear[q] = linear_strain(state.R[q], state.x[q], state.x[q + 1], element_length);
        s.psi[q] = rotational_strain(state.R[q], state.R[q + 1]);
        s.kappa[q] = s.psi[q] / element_length;
    }
    return s;
}

std::vector<double> effective_dilatations(const RodState& state, const RodProperties& props)
{
    std::vector<double> e = dilatations(state, props.element_length());
    if (props.model == Model::standard)
        std::fill(e.begin(), e.end(), 1.0);
    return e;
}

Mat3 nonstandard_inertia(const Mat3& j, double tol)
{
    if (!((j - j.transpose()).cwiseAbs().maxCoeff() <= tol))
        throw std::invalid_argument("nonstandard_inertia: inertia matrix is not symmetric");
    return 0.5 * j.trace() * Mat3::Identity() - j;
}

void check_grid(const RodState& state, const RodProperties& props)
{
    const std::size_t nodes = props.elements + 1;
    if (state.x.size() != nodes || state.R.size() != nodes) {
        std::ostringstream os;
        os << "grid mismatch: state has " << state.x.size() << " positions and " << state.R.size()
           << " rotations, rod has " << nodes << " nodes";
        throw std::invalid_argument(os.str());
    }
}

EnergyBreakdown strain_energy(const RodState& state, const RodProperties& props)
{
    check_grid(state, props);
    const double ln = props.element_length();
    const std::vector<double> e = effective_dilatations(state, props);
    const Mat3 C = props.stiffness_c();
    const Mat3 K = props.stiffness_k();

    EnergyBreakdown out;
    for (std::size_t q = 0; q < props.elements; ++q) {
        const Vec3 dx = state.x[q + 1] - state.x[q];
        const Vec3 a = state.R[q].matrix().transpose() * dx / ln - kE3;
        const Vec3 b = state.R[q + 1].matrix().transpose() * dx / ln - kE3;
        out.linear_strain += 0.25 * ln / e[q] * (a.dot(C * a) + b.dot(C * b));
        const Vec3 psi = rotational_strain(state.R[q], state.R[q + 1]);
        out.angular_strain += 0.5 / (ln * e[q] * e[q] * e[q]) * psi.dot(K * psi);
    }
    return out;
}

EnergyBreakdown discrete_energy(const RodState& now, const RodState& next, const RodProperties& props)
{
    check_grid(now, props);
    check_grid(next, props);
    if (!(now.h > 0.0))
        throw std::invalid_argument("discrete_energy: time step must be positive");
    const double h = now.h;
    const double ln = props.element_length();
    const std::vector<double> ebar = node_weights(effective_dilatations(now, props));
    const std::vector<double> w = node_lengths(props);
    const Mat3 Jd = nonstandard_inertia(props.inertia());
    const Mat3 I = Mat3::Identity();

    EnergyBreakdown out = strain_energy(now, props);
    for (std::size_t q = 0; q <= props.elements; ++q) {
        out.translational += 0.5 * props.mass_per_length * w[q] * (next.x[q] - now.x[q]).squaredNorm() / (h * h);
        const Mat3 D = now.R[q].matrix().transpose() * next.R[q].matrix() - I;
        out.rotational += 0.25 * ln / (h * h) * (D.transpose() * (Jd / ebar[q]) * D).trace();
    }
    return out;
}

double element_volume(double e, const RodProperties& props)
{
    if (!(e > 0.0))
        throw DegenerateElementError("element_volume: non-positive dilatation");
    const double ln = props.element_length();
    if (props.model == Model::modified)
        return (props.reference_area / e) * (e * ln);
    return props.reference_area * (e * ln);
}

double rod_length(const RodState& state)
{
    double len = 0.0;
    for (std::size_t q = 0; q + 1 < state.x.size(); ++q)
        len += (state.x[q + 1] - state.x[q]).norm();
    return len;
}

std::vector<double> node_lengths(const RodProperties& props)
{
    const double ln = props.element_length();
    std::vector<double> w(props.elements + 1, ln);
    w.front() = 0.5 * ln;
    w.back() = 0.5 * ln;
    return w;
}

} // namespace cosserat
