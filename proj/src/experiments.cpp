#include "cosserat/experiments.hpp"

#include <algorithm>
#include <future>
#include <sstream>
#include <stdexcept>

namespace cosserat {

namespace {

const Vec3 kE1(1, 0, 0), kE2(0, 1, 0), kE3(0, 0, 1);

NodalLoad force_at(std::size_t node, const Vec3& dir, const ScalarEnvelope& env)
{
    NodalLoad l;
    l.node = node;
    l.force = VectorProfile{dir, env};
    return l;
}

NodalLoad moment_at(std::size_t node, const Vec3& dir, const ScalarEnvelope& env, Frame frame)
{
    NodalLoad l;
    l.node = node;
    l.moment = VectorProfile{dir, env};
    l.moment_frame = frame;
    return l;
}

/// Material of the benchmark rods: L = 10, GA = EA = 1e4, EI = GJ = 500,
/// rho A = 1, rho I = 10 (polar 20).
RodProperties benchmark_rod(std::size_t n)
{
    RodProperties p;
    p.length = 10.0;
    p.elements = n;
    return p;
}

Scenario tip_loaded_cantilever(std::string name, std::size_t n, double horizon, const ScalarEnvelope& force_env,
                               double force_scale, const ScalarEnvelope& moment_env, double moment_scale)
{
    Scenario s;
    s.name = std::move(name);
    s.rod = benchmark_rod(n);
    s.boundary = BoundaryKind::cantilever;
    s.horizon = horizon;
    s.h = 1e-4;
    s.loads.loads.push_back(force_at(n, force_scale * kE3, force_env));
    if (moment_scale != 0.0)
        s.loads.loads.push_back(moment_at(n, moment_scale * kE2, moment_env, Frame::body));
    return s;
}

bool same_rod(const RodProperties& a, const RodProperties& b)
{
    return a.length == b.length && a.elements == b.elements && a.mass_per_length == b.mass_per_length
           && a.inertia_per_length == b.inertia_per_length && a.shear_stretch_stiffness == b.shear_stretch_stiffness
           && a.bend_twist_stiffness == b.bend_twist_stiffness && a.reference_area == b.reference_area
           && a.model == b.model;
}

} // namespace

ScalarEnvelope default_g(double peak) { return ScalarEnvelope::hat(peak, 0.0, 5.0); }

ScalarEnvelope q_envelope() { return ScalarEnvelope({{5.0, 0.0}, {7.5, 200.0}, {10.0, 0.0}}); }

ScalarEnvelope u_envelope() { return ScalarEnvelope({{0.0, 0.0}, {1.0, 200.0}, {2.0, 0.0}}); }

Rotation InitialShape::frame() const
{
    const double angle = frame_rotation.norm();
    if (angle == 0.0)
        return Rotation::identity();
    return Rotation::from_matrix(Eigen::AngleAxisd(angle, frame_rotation / angle).toRotationMatrix());
}

BoundarySpec Scenario::boundary_spec() const
{
    BoundarySpec bc;
    bc.kind = boundary;
    bc.base_position = initial.base;
    bc.base_rotation = initial.frame();
    return bc;
}

void Scenario::validate() const
{
    rod.validate();
    loads.validate(rod.elements);
    if (!(horizon >= 0.0) || !std::isfinite(horizon))
        throw std::invalid_argument("scenario '" + name + "': horizon must be non-negative");
    if (!(h > 0.0) || !std::isfinite(h))
        throw std::invalid_argument("scenario '" + name + "': h must be positive");
    step_count(horizon, h);
}

bool Scenario::operator==(const Scenario& o) const
{
    return name == o.name && same_rod(rod, o.rod) && boundary == o.boundary && loads == o.loads
           && initial == o.initial && horizon == o.horizon && h == o.h;
}

Scenario flying_beam(const ScalarEnvelope& g, double inclination)
{
    Scenario s;
    s.name = "flying_beam";
    s.rod = benchmark_rod(100);
    s.boundary = BoundaryKind::free_free;
    s.horizon = 15.0;
    s.h = 1e-4;
    // e3 -> e1 by a quarter turn about e2, then `inclination` about e3.
    const Mat3 frame = (Eigen::AngleAxisd(inclination, kE3) * Eigen::AngleAxisd(0.5 * M_PI, kE2)).toRotationMatrix();
    const Eigen::AngleAxisd aa(frame);
    s.initial.frame_rotation = aa.angle() * aa.axis();
    s.loads.loads.push_back(force_at(0, 0.1 * kE1, g));
    s.loads.loads.push_back(moment_at(0, -0.5 * kE2, g, Frame::inertial));
    s.loads.loads.push_back(moment_at(0, -1.0 * kE3, g, Frame::inertial));
    return s;
}

Scenario pure_stretching(const ScalarEnvelope& g)
{
    return tip_loaded_cantilever("pure_stretching", 100, 15.0, g, 6.0, {}, 0.0);
}

Scenario bending_stretching(const ScalarEnvelope& g)
{
    return tip_loaded_cantilever("bending_stretching", 20, 20.0, q_envelope(), 5.0, g, -0.5);
}

Scenario convergence_beam()
{
    const ScalarEnvelope u = u_envelope();
    return tip_loaded_cantilever("convergence", 50, 2.0, u, 5.0, u, -0.5);
}

const std::vector<std::string>& preset_names()
{
    static const std::vector<std::string> names{"flying_beam", "pure_stretching", "bending_stretching", "convergence"};
    return names;
}

Scenario preset(const std::string& name, const ScalarEnvelope& g)
{
    if (name == "flying_beam")
        return flying_beam(g);
    if (name == "pure_stretching")
        return pure_stretching(g);
    if (name == "bending_stretching")
        return bending_stretching(g);
    if (name == "convergence")
        return convergence_beam();
    throw std::invalid_argument("unknown scenario '" + name + "'");
}

Scenario with_elements(Scenario s, std::size_t n)
{
    const std::size_t old_tip = s.rod.elements;
    for (NodalLoad& l : s.loads.loads) {
        if (l.node == old_tip)
            l.node = n;
        else if (l.node != 0)
            throw std::invalid_argument("cannot regrid a load on interior node " + std::to_string(l.node));
    }
    s.rod.elements = n;
    return s;
}

TwoLevelState initial_state(const Scenario& s, const StepperConfig& cfg)
{
    const RodState rest = straight_rod(s.rod, s.initial.base, s.initial.frame());
    const std::vector<Vec3> zero(rest.x.size(), Vec3::Zero());
    return initialize(rest.x, rest.R, zero, zero, cfg, s.boundary_spec());
}

TwoLevelState simulate(const Scenario& s, Model model, const StepperConfig& cfg, const DiagnosticsSink& sink)
{
    s.validate();
    RodProperties props = s.rod;
    props.model = model;
    return run(initial_state(s, cfg), props, s.loads, s.boundary_spec(), cfg, s.horizon, sink);
}

ComparisonMetrics compare_models(const Scenario& s, const StepperConfig& cfg, const DiagnosticsSink& modified_sink,
                                 const DiagnosticsSink& standard_sink)
{
    s.validate();
    cfg.validate();
    RodProperties pm = s.rod, ps = s.rod;
    pm.model = Model::modified;
    ps.model = Model::standard;
    const BoundarySpec bc = s.boundary_spec();
    const std::size_t steps = step_count(s.horizon, cfg.h);
    const double ln = s.rod.element_length();
    const double v0 = s.rod.reference_area * ln;

    TwoLevelState m = initial_state(s, cfg), st = m;
    ComparisonMetrics out;
    std::size_t k = 0;
    try {
        for (;; ++k) {
            TwoLevelState mn = step(m, pm, s.loads, bc, cfg);
            TwoLevelState sn = step(st, ps, s.loads, bc, cfg);
            const DiagnosticsRecord rm = make_record(m.current, mn.current, pm);
            const DiagnosticsRecord rs = make_record(st.current, sn.current, ps);
            if (modified_sink)
                modified_sink(rm, m.current);
            if (standard_sink)
                standard_sink(rs, st.current);

            out.energy = std::max(out.energy, std::abs(rm.energy.total() - rs.energy.total()));
            out.length = std::max(out.length, std::abs(rm.length - rs.length) / s.rod.length);
            const std::vector<double> em = dilatations(m.current, ln);
            const std::vector<double> es = dilatations(st.current, ln);
            for (std::size_t q = 0; q < em.size(); ++q)
                out.volume = std::max(out.volume,
                                      std::abs(element_volume(em[q], pm) - element_volume(es[q], ps)) / v0);
            if (k == steps)
                break;
            m = std::move(mn);
            st = std::move(sn);
        }
    } catch (const SimulationError&) {
        throw;
    } catch (const std::exception& ex) {
        throw SimulationError(k, ex.what());
    }
    return out;
}

const char* to_string(SweepMode m) { return m == SweepMode::space ? "space" : "time"; }

SweepMode sweep_mode_from_string(const std::string& s)
{
    if (s == "space")
        return SweepMode::space;
    if (s == "time")
        return SweepMode::time;
    throw std::invalid_argument("unknown sweep mode '" + s + "' (expected space|time)");
}

void SweepLadder::validate() const
{
    if (elements.empty() || steps.empty())
        throw std::invalid_argument("convergence ladders must not be empty");
    for (std::size_t n : elements)
        if (n < 2 || n > reference_elements)
            throw std::invalid_argument("space ladder entries must lie in [2, reference_elements]");
    for (double h : steps)
        if (!(h > 0.0) || h < reference_step)
            throw std::invalid_argument("time ladder entries must be positive and not finer than the reference step");
    if (!(space_h > 0.0) || !(reference_step > 0.0))
        throw std::invalid_argument("ladder time steps must be positive");
    if (time_elements < 2 || reference_elements < 2)
        throw std::invalid_argument("ladder grids need at least 2 elements");
    if (!(sample_interval > 0.0))
        throw std::invalid_argument("sample_interval must be positive");
}

namespace {

/// States at t = j * interval, j = 0..horizon/interval.
std::vector<RodState> sampled_run(const Scenario& s, Model model, StepperConfig cfg, double interval)
{
    const std::size_t every = step_count(interval, cfg.h);
    if (every == 0)
        throw std::invalid_argument("sample interval shorter than the time step");
    std::vector<RodState> out;
    simulate(s, model, cfg, [&](const DiagnosticsRecord& r, const RodState& state) {
        if (r.k % every == 0)
            out.push_back(state);
    });
    return out;
}

} // namespace

std::vector<ConvergenceMetrics> convergence_sweep(const Scenario& s, SweepMode mode, const SweepLadder& ladder,
                                                  const StepperConfig& cfg, Model model)
{
    ladder.validate();
    struct Entry {
        std::size_t n;
        double h;
    };
    std::vector<Entry> entries;
    Entry ref{};
    if (mode == SweepMode::space) {
        for (std::size_t n : ladder.elements)
            entries.push_back({n, ladder.space_h});
        ref = {ladder.reference_elements, ladder.space_h};
    } else {
        for (double h : ladder.steps)
            entries.push_back({ladder.time_elements, h});
        ref = {ladder.time_elements, ladder.reference_step};
    }
    step_count(s.horizon, ladder.sample_interval);

    auto launch = [&](const Entry& e) {
        StepperConfig c = cfg;
        c.h = e.h;
        Scenario sc = with_elements(s, e.n);
        sc.h = e.h;
        return std::async(std::launch::async, sampled_run, sc, model, c, ladder.sample_interval);
    };
    auto ref_future = launch(ref);
    std::vector<std::future<std::vector<RodState>>> futures;
    for (const Entry& e : entries)
        futures.push_back(launch(e));
    const std::vector<RodState> reference = ref_future.get();

    std::vector<ConvergenceMetrics> out;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const std::vector<RodState> run = futures[i].get();
        if (run.size() != reference.size())
            throw std::logic_error("convergence sweep: sample counts differ");
        ConvergenceMetrics m;
        m.elements = entries[i].n;
        m.h = entries[i].h;
        m.nested = ref.n % entries[i].n == 0;
        for (std::size_t j = 0; j < run.size(); ++j) {
            for (std::size_t q = 0; q <= entries[i].n; ++q) {
                // Node q sits at S = q L / n; nearest reference node when the grids do not nest.
                const std::size_t qr = static_cast<std::size_t>(
                    std::llround(static_cast<double>(q) * static_cast<double>(ref.n) / static_cast<double>(entries[i].n)));
                const Vec3& xr = reference[j].x[qr];
                const double xr_norm = xr.norm();
                if (xr_norm > 0.0)
                    m.eps_pos = std::max(m.eps_pos, (run[j].x[q] - xr).norm() / xr_norm);
                // ||I - R_ref^T R||_F = ||R_ref - R||_F for orthogonal R_ref; the
                // latter does not pick up the orthonormality round-off of R_ref.
                m.eps_rot = std::max(m.eps_rot, (reference[j].R[qr].matrix() - run[j].R[q].matrix()).norm());
            }
        }
        out.push_back(m);
    }
    return out;
}

} // namespace cosserat
