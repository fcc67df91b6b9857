#pragma once

#include "cosserat/loads.hpp"
#include "cosserat/rod.hpp"
#include "cosserat/stepper.hpp"

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

namespace cosserat {

/// Default stand-in for the load history g(t): 0 -> peak -> 0 over [0, 5] s.
ScalarEnvelope default_g(double peak = 200.0);
/// Axial load history of the bending+stretching test: ramps 0 -> 200 -> 0 over [5, 10] s.
ScalarEnvelope q_envelope();
/// Load history of the convergence test: ramps 0 -> 200 -> 0 over [0, 2] s.
ScalarEnvelope u_envelope();

/// Straight rod at rest: base at `base`, cross-sections carrying the frame
/// given by the rotation vector `frame_rotation` (axis * angle), tangent
/// along that frame's third axis.
struct InitialShape {
    Vec3 base = Vec3::Zero();
    Vec3 frame_rotation = Vec3::Zero();

    Rotation frame() const;
    bool operator==(const InitialShape& o) const
    {
        return base == o.base && frame_rotation == o.frame_rotation;
    }
};

struct Scenario {
    std::string name;
    RodProperties rod;
    BoundaryKind boundary = BoundaryKind::free_free;
    LoadProgram loads;
    InitialShape initial;
    double horizon = 0.0;   ///< [s]
    double h = 1e-4;        ///< default time step [s]

    /// Clamp (if any) sits at the initial base position and frame.
    BoundarySpec boundary_spec() const;
    void validate() const;
    bool operator==(const Scenario& o) const;
};

/// Free-free rod inclined by `inclination` [rad] from e1 towards e2 in the
/// e1-e2 plane, loaded at its base.
Scenario flying_beam(const ScalarEnvelope& g = default_g(), double inclination = 0.25 * M_PI);
/// Cantilever along e3 pulled axially at the tip.
Scenario pure_stretching(const ScalarEnvelope& g = default_g());
/// Cantilever along e3 with tip force 5 q(t) e3 and body tip moment -g(t)/2 e2.
Scenario bending_stretching(const ScalarEnvelope& g = default_g());
/// Cantilever along e3 with tip force 5 u(t) e3 and body tip moment -u(t)/2 e2.
Scenario convergence_beam();

const std::vector<std::string>& preset_names();
/// Throws std::invalid_argument for unknown names.
Scenario preset(const std::string& name, const ScalarEnvelope& g = default_g());

/// Same scenario on a grid of `n` elements; loads on the old tip node move
/// to the new tip. Loads on interior nodes cannot be remapped and throw.
Scenario with_elements(Scenario s, std::size_t n);

/// Rest state of the scenario, seeded for the two-step scheme.
TwoLevelState initial_state(const Scenario& s, const StepperConfig& cfg);

/// Runs the scenario under `model` with time step cfg.h.
TwoLevelState simulate(const Scenario& s, Model model, const StepperConfig& cfg, const DiagnosticsSink& sink = {});

struct ComparisonMetrics {
    double energy = 0.0;   ///< max_k |H_m - H_s| [J]
    double length = 0.0;   ///< max_k |L_m - L_s| / L
    double volume = 0.0;   ///< max_k,q |V_m - V_s| / (A l_n)
};

/// Runs both models in lockstep on identical inputs. The sinks, when given,
/// receive each model's records.
ComparisonMetrics compare_models(const Scenario& s, const StepperConfig& cfg,
                                 const DiagnosticsSink& modified_sink = {},
                                 const DiagnosticsSink& standard_sink = {});

enum class SweepMode { space, time };

const char* to_string(SweepMode m);
SweepMode sweep_mode_from_string(const std::string& s);

struct SweepLadder {
    std::vector<std::size_t> elements{10, 25, 50};
    std::size_t reference_elements = 100;
    double space_h = 1e-4;

    std::vector<double> steps{1e-3, 5e-4, 1e-4};
    double reference_step = 5e-5;
    std::size_t time_elements = 25;

    double sample_interval = 1e-2; ///< spacing of the compared output times [s]

    void validate() const;
    bool operator==(const SweepLadder&) const = default;
};

struct ConvergenceMetrics {
    std::size_t elements = 0;
    double h = 0.0;
    double eps_pos = 0.0;
    double eps_rot = 0.0;
    bool nested = true;   ///< false when nodes were matched to the nearest reference node
};

/// Runs every ladder entry and the reference concurrently and measures
/// eps_pos = max ||x - x_ref|| / ||x_ref|| and eps_rot = max ||I - R_ref^T R||_F
/// over common nodes and common sample times. Nodes with x_ref = 0 (a clamp
/// at the origin) carry no relative error and are skipped.
std::vector<ConvergenceMetrics> convergence_sweep(const Scenario& s, SweepMode mode, const SweepLadder& ladder,
                                                  const StepperConfig& cfg, Model model = Model::modified);

} // namespace cosserat
