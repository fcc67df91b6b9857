#include "cosserat/selftest.hpp"

#include "cosserat/experiments.hpp"
#include "cosserat/stepper.hpp"

#include <algorithm>
#include <cstdio>

namespace cosserat {

namespace {

Vec3 uniform_vec(std::mt19937_64& rng, double scale)
{
    std::uniform_real_distribution<double> u(-scale, scale);
    return Vec3(u(rng), u(rng), u(rng));
}

double strain_total(const RodState& s, const RodProperties& p)
{
    const EnergyBreakdown e = strain_energy(s, p);
    return e.linear_strain + e.angular_strain;
}

double rel(const Vec3& a, const Vec3& b)
{
    const double scale = std::max({a.norm(), b.norm(), 1e-300});
    return (a - b).norm() / scale;
}

std::string fmt(const char* f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

SelfTestResult cayley_round_trip()
{
    std::mt19937_64 rng(1);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const Vec3 w = uniform_vec(rng, 3.0);
        worst = std::max(worst, (inv_cay(cay(w)) - w).norm() / std::max(1.0, w.norm()));
    }
    return {"cayley round trip", worst <= 1e-12, fmt("max error %.3e", worst)};
}

SelfTestResult gradients()
{
    std::mt19937_64 rng(2);
    double worst = 0.0;
    for (Model model : {Model::modified, Model::standard}) {
        RodProperties p;
        p.length = 2.0;
        p.elements = 8;
        p.model = model;
        for (int i = 0; i < 10; ++i)
            worst = std::max(worst, gradient_check(random_state(p, rng), p));
    }
    return {"strain gradient vs finite differences", worst <= 1e-6, fmt("max relative error %.3e", worst)};
}

SelfTestResult implicit_solve()
{
    std::mt19937_64 rng(3);
    const Mat3 Jd = nonstandard_inertia(Vec3(10.0, 10.0, 20.0).asDiagonal());
    const StepperConfig cfg;
    double worst = 0.0;
    int iters = 0;
    for (int i = 0; i < 200; ++i) {
        Vec3 f = uniform_vec(rng, 0.3);
        if (f.norm() > 0.3)
            f *= 0.3 / f.norm();
        const ImplicitSolution s = solve_implicit_rotation(implicit_map(f, Jd), Jd, cfg);
        worst = std::max(worst, (s.F.matrix() - cay(f).matrix()).norm());
        iters = std::max(iters, s.iterations);
    }
    return {"implicit rotation solve round trip", worst <= 1e-10 && iters <= 10,
            fmt("max error %.3e", worst) + ", max iterations " + std::to_string(iters)};
}

std::vector<SelfTestResult> short_stretch()
{
    Scenario s = with_elements(pure_stretching(default_g()), 10);
    s.horizon = 2.0;
    StepperConfig cfg;
    cfg.h = 1e-3;
    double vol_m = 0.0, vol_s = 0.0, ortho = 0.0;
    simulate(s, Model::modified, cfg, [&](const DiagnosticsRecord& r, const RodState&) {
        vol_m = std::max(vol_m, r.volume_deviation_max);
        ortho = std::max(ortho, r.ortho_defect);
    });
    simulate(s, Model::standard, cfg,
             [&](const DiagnosticsRecord& r, const RodState&) { vol_s = std::max(vol_s, r.volume_deviation_max); });
    return {
        {"volume identity (modified model)", vol_m <= 1e-12, fmt("max relative deviation %.3e", vol_m)},
        {"volume changes (standard model)", vol_s > 1e-3, fmt("max relative deviation %.3e", vol_s)},
        {"orthonormality", ortho <= 1e-10, fmt("max defect %.3e", ortho)},
    };
}

} // namespace

RodState random_state(const RodProperties& props, std::mt19937_64& rng, double pos_noise, double rot_noise)
{
    RodState s = straight_rod(props);
    const double ln = props.element_length();
    for (std::size_t q = 0; q < s.x.size(); ++q) {
        s.x[q] += ln * uniform_vec(rng, pos_noise);
        s.R[q] = s.R[q] * cay(uniform_vec(rng, rot_noise));
    }
    return s;
}

double gradient_check(const RodState& state, const RodProperties& props, double d)
{
    const StrainGradient g = strain_gradient(state, props);
    double worst = 0.0;
    for (std::size_t q = 0; q < state.x.size(); ++q) {
        Vec3 gx, gr;
        for (int i = 0; i < 3; ++i) {
            RodState plus = state, minus = state;
            plus.x[q][i] += d;
            minus.x[q][i] -= d;
            gx[i] = (strain_total(plus, props) - strain_total(minus, props)) / (2 * d);

            plus = state;
            minus = state;
            plus.R[q] = state.R[q] * cay(d * Vec3::Unit(i));
            minus.R[q] = state.R[q] * cay(-d * Vec3::Unit(i));
            gr[i] = (strain_total(plus, props) - strain_total(minus, props)) / (2 * d);
        }
        worst = std::max({worst, rel(g.position[q], gx), rel(g.rotation[q], gr)});
    }
    return worst;
}

std::vector<SelfTestResult> run_selftest()
{
    std::vector<SelfTestResult> out{cayley_round_trip(), gradients(), implicit_solve()};
    for (SelfTestResult& r : short_stretch())
        out.push_back(std::move(r));
    return out;
}

} // namespace cosserat
