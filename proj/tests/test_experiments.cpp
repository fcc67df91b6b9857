#include "cosserat/experiments.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace cosserat;
using namespace cosserat::testing;

TEST_CASE("load envelopes")
{
    const ScalarEnvelope q = q_envelope();
    CHECK(q(7.5) == 200.0);
    CHECK(q(12.0) == 0.0);
    CHECK(q(3.0) == 0.0);
    CHECK(q(6.0) == doctest::Approx(80.0));
    CHECK(q(9.0) == doctest::Approx(80.0));

    const ScalarEnvelope u = u_envelope();
    CHECK(u(0.5) == 100.0);
    CHECK(u(1.0) == 200.0);
    CHECK(u(1.5) == 100.0);
    CHECK(u(2.5) == 0.0);

    const ScalarEnvelope g = default_g(3.0);
    CHECK(g(0.0) == 0.0);
    CHECK(g(2.5) == 3.0);
    CHECK(g(5.0) == 0.0);
    CHECK(g(7.0) == 0.0);

    CHECK_THROWS_AS(ScalarEnvelope({{0.0, 1.0}, {0.0, 2.0}}), std::invalid_argument);
    CHECK_THROWS_AS(ScalarEnvelope({{1.0, 1.0}, {0.5, 2.0}}), std::invalid_argument);
    CHECK_THROWS_AS(ScalarEnvelope({{0.0, NAN}}), std::invalid_argument);
}

TEST_CASE("flying beam setup")
{
    const Scenario s = flying_beam(ScalarEnvelope({{0.0, 1.0}, {5.0, 1.0}})); // g = 1
    CHECK(s.rod.elements == 100);
    CHECK(s.rod.length == 10.0);
    CHECK(s.h == 1e-4);
    CHECK(s.horizon == 15.0);
    CHECK(s.boundary == BoundaryKind::free_free);
    CHECK((s.loads.force(0, 1.0) - Vec3(0.1, 0.0, 0.0)).norm() == 0.0);
    CHECK(s.loads.force(1, 1.0).norm() == 0.0);

    // Inertial moment read back in the inertial frame.
    const Rotation r = s.initial.frame();
    const Vec3 m = r * s.loads.body_moment(0, 1.0, r);
    CHECK((m - Vec3(0.0, -0.5, -1.0)).norm() < 1e-14);

    // Inclined 45 degrees in the e1-e2 plane.
    const Vec3 t = r * Vec3::UnitZ();
    CHECK((t - Vec3(std::sqrt(0.5), std::sqrt(0.5), 0.0)).norm() < 1e-14);

    const Scenario flat = flying_beam(default_g(), 0.0);
    CHECK((flat.initial.frame() * Vec3::UnitZ() - Vec3::UnitX()).norm() < 1e-15);
}

TEST_CASE("pure stretching setup")
{
    const Scenario s = pure_stretching(ScalarEnvelope({{0.0, 1.0}, {5.0, 1.0}}));
    CHECK(s.rod.elements == 100);
    CHECK(s.boundary == BoundaryKind::cantilever);
    CHECK(s.loads.force(100, 2.0) == Vec3(0.0, 0.0, 6.0));
    CHECK(s.loads.force(0, 2.0).norm() == 0.0);
    const BoundarySpec bc = s.boundary_spec();
    CHECK(bc.base_position == Vec3::Zero());
    CHECK(bc.base_rotation.matrix() == Mat3::Identity());
    const RodState rest = straight_rod(s.rod, s.initial.base, s.initial.frame());
    CHECK((rest.x.back() - Vec3(0.0, 0.0, 10.0)).norm() < 1e-14);
}

TEST_CASE("bending and stretching setup")
{
    const Scenario s = bending_stretching();
    CHECK(s.rod.elements == 20);
    CHECK(s.horizon == 20.0);
    CHECK(s.loads.force(20, 7.5) == Vec3(0.0, 0.0, 1000.0));
    CHECK(s.loads.force(20, 12.0) == Vec3::Zero());
    // Tip moment -g/2 e2 in the section frame.
    const Rotation r = cay(Vec3(0.3, 0.2, -0.1));
    CHECK((s.loads.body_moment(20, 2.5, r) - Vec3(0.0, -100.0, 0.0)).norm() < 1e-12);
}

TEST_CASE("presets and regridding")
{
    for (const std::string& name : preset_names())
        CHECK(preset(name).name == name);
    CHECK_THROWS_AS(preset("nope"), std::invalid_argument);

    const Scenario s = with_elements(convergence_beam(), 10);
    CHECK(s.rod.elements == 10);
    for (const NodalLoad& l : s.loads.loads)
        CHECK(l.node == 10);
    CHECK(with_elements(flying_beam(), 7).loads.loads.front().node == 0);

    Scenario interior = convergence_beam();
    interior.loads.loads.front().node = 3;
    CHECK_THROWS_AS(with_elements(interior, 10), std::invalid_argument);
    CHECK(convergence_beam() == convergence_beam());
    CHECK(!(convergence_beam() == s));
}

TEST_CASE("model comparison of a resting rod is exactly zero")
{
    Scenario s = pure_stretching(ScalarEnvelope());
    s = with_elements(s, 8); // l_n = 1.25: every rest position is exact
    s.horizon = 0.05;
    StepperConfig cfg;
    cfg.h = 1e-3;
    const ComparisonMetrics m = compare_models(s, cfg);
    CHECK(m.energy == 0.0);
    CHECK(m.length == 0.0);
    CHECK(m.volume == 0.0);
}

TEST_CASE("model comparison of a stretched rod")
{
    Scenario s = with_elements(pure_stretching(default_g(20.0)), 10);
    s.horizon = 2.0;
    StepperConfig cfg;
    cfg.h = 1e-3;
    std::size_t seen_m = 0, seen_s = 0;
    double worst_m = 0.0, worst_s = 0.0;
    const ComparisonMetrics m = compare_models(
        s, cfg,
        [&](const DiagnosticsRecord& r, const RodState&) {
            ++seen_m;
            worst_m = std::max(worst_m, r.volume_deviation_max);
        },
        [&](const DiagnosticsRecord& r, const RodState&) {
            ++seen_s;
            worst_s = std::max(worst_s, r.volume_deviation_max);
        });
    CHECK(seen_m == 2001);
    CHECK(seen_s == 2001);
    CHECK(worst_m < 1e-13);
    CHECK(worst_s > 0.0);
    // The modified volume never moves, so the model difference is the
    // standard model's own deviation.
    CHECK(m.volume == doctest::Approx(worst_s).epsilon(1e-10));
    CHECK(m.length > 0.0);
    CHECK(m.energy > 0.0);
}

TEST_CASE("sweep ladders")
{
    CHECK(sweep_mode_from_string("space") == SweepMode::space);
    CHECK(std::string(to_string(SweepMode::time)) == "time");
    CHECK_THROWS_AS(sweep_mode_from_string("both"), std::invalid_argument);

    SweepLadder bad;
    bad.elements = {200};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = SweepLadder{};
    bad.steps = {1e-6};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("sweep against an identical reference is exactly zero")
{
    Scenario s = convergence_beam();
    s.horizon = 0.2;
    SweepLadder ladder;
    ladder.elements = {8};
    ladder.reference_elements = 8;
    ladder.space_h = 1e-3;
    ladder.steps = {1e-3};
    ladder.reference_step = 1e-3;
    ladder.time_elements = 8;
    ladder.sample_interval = 0.02;
    for (SweepMode mode : {SweepMode::space, SweepMode::time}) {
        const auto rows = convergence_sweep(s, mode, ladder, StepperConfig{});
        REQUIRE(rows.size() == 1);
        CHECK(rows[0].eps_pos == 0.0);
        CHECK(rows[0].eps_rot == 0.0);
        CHECK(rows[0].nested);
    }
}

TEST_CASE("temporal convergence is at least first order" * doctest::timeout(120))
{
    Scenario s = convergence_beam();
    s.horizon = 1.0;
    SweepLadder ladder;
    ladder.steps = {1e-3, 5e-4, 2.5e-4};
    ladder.reference_step = 1e-4;
    ladder.time_elements = 10;
    const auto rows = convergence_sweep(s, SweepMode::time, ladder, StepperConfig{});
    REQUIRE(rows.size() == 3);
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        CHECK(rows[i + 1].eps_pos < rows[i].eps_pos);
        CHECK(rows[i + 1].eps_rot < rows[i].eps_rot);
    }
    const double slope = std::log(rows.front().eps_pos / rows.back().eps_pos) / std::log(rows.front().h / rows.back().h);
    CHECK(slope >= 1.0);
}

TEST_CASE("non-nested grids fall back to nearest nodes")
{
    Scenario s = convergence_beam();
    s.horizon = 0.1;
    SweepLadder ladder;
    ladder.elements = {7};
    ladder.reference_elements = 10;
    ladder.space_h = 1e-3;
    ladder.sample_interval = 0.05;
    const auto rows = convergence_sweep(s, SweepMode::space, ladder, StepperConfig{});
    REQUIRE(rows.size() == 1);
    CHECK(!rows[0].nested);
    CHECK(rows[0].eps_pos > 0.0);
}
