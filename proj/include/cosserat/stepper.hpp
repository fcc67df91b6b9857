#pragma once

#include "cosserat/diagnostics.hpp"
#include "cosserat/loads.hpp"
#include "cosserat/rod.hpp"

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cosserat {

struct StepperConfig {
    double h = 1e-4;                ///< time step [s]
    double newton_tol = 1e-12;      ///< residual norm accepted by the implicit solve
    int newton_max_iters = 50;
    double fd_check_step = 1e-6;    ///< finite-difference step used by self-tests
    bool fd_jacobian = false;       ///< use a central-difference Newton Jacobian (self-test only)

    void validate() const;
};

/// The implicit rotational update failed to converge; the time step is too
/// large for the current angular momentum. Carries the residual history.
class StepSizeError : public std::runtime_error {
public:
    StepSizeError(const std::string& what, std::vector<double> residuals)
        : std::runtime_error(what), residuals_(std::move(residuals)) {}
    const std::vector<double>& residuals() const { return residuals_; }

private:
    std::vector<double> residuals_;
};

/// Any failure inside run(), tagged with the step at which it occurred.
class SimulationError : public std::runtime_error {
public:
    SimulationError(std::size_t step, const std::string& what)
        : std::runtime_error("step " + std::to_string(step) + ": " + what), step_(step) {}
    std::size_t step() const { return step_; }

private:
    std::size_t step_;
};

/// Data advanced by the two-step scheme: level k, the positions of level
/// k-1 and the rotation increments F^{k-1}_q = (R^{k-1}_q)^T R^k_q.
struct TwoLevelState {
    RodState current;
    std::vector<Vec3> x_prev;
    std::vector<Rotation> F_prev;
};

/// Seeds the scheme: x^{-1} = x0 - h v0, F^{-1} = cay(h w0) with w0 the body
/// angular velocity. Clamped nodes are overridden by `bc`.
TwoLevelState initialize(const std::vector<Vec3>& x0, const std::vector<Rotation>& R0,
                         const std::vector<Vec3>& v0, const std::vector<Vec3>& w0,
                         const StepperConfig& cfg, const BoundarySpec& bc = {});

/// Gradient of the discrete strain energy U_d at one level: with respect to
/// each position, and with respect to each rotation along R_q -> R_q cay(eta).
struct StrainGradient {
    std::vector<Vec3> position;
    std::vector<Vec3> rotation;
};

StrainGradient strain_gradient(const RodState& state, const RodProperties& props);

/// -dU_d/dx_q.
Vec3 internal_force(const RodState& state, const RodProperties& props, std::size_t q);

/// -dU_d/deta_q, body frame.
Vec3 elastic_torque(const RodState& state, const RodProperties& props, std::size_t q);

/// dT_rot/dx of the rotational kinetic energy of the step whose increments
/// are `F` (nonzero only for the modified model, where the node inertia
/// depends on the dilatations).
std::vector<Vec3> rotational_kinetic_force(const RodState& state, const std::vector<Rotation>& F,
                                           const RodProperties& props);

/// Right-hand side g of F J_d - J_d F^T = g^ for node q at step k.
Vec3 rotational_rhs(const TwoLevelState& two, const RodProperties& props, const LoadProgram& loads,
                    std::size_t k, std::size_t q);

struct ImplicitSolution {
    Rotation F;
    Vec3 f = Vec3::Zero();          ///< F = cay(f)
    int iterations = 0;
    std::vector<double> residuals;  ///< residual norm before each update and at exit
};

/// vee(cay(f) J_d - J_d cay(f)^T).
Vec3 implicit_map(const Vec3& f, const Mat3& Jd);

/// Solves vee(cay(f) J_d - J_d cay(f)^T) = g by Newton iteration on f,
/// starting from `guess`. Throws StepSizeError on non-convergence.
ImplicitSolution solve_implicit_rotation(const Vec3& g, const Mat3& Jd, const StepperConfig& cfg,
                                         const Vec3& guess = Vec3::Zero());

/// Positions at level k+1 given the rotation increments F^k of the same step.
std::vector<Vec3> step_translation(const TwoLevelState& two, const std::vector<Rotation>& F,
                                   const RodProperties& props, const LoadProgram& loads,
                                   const BoundarySpec& bc, std::size_t k);

/// Advances (x^{k-1}, x^k, R^k, F^{k-1}) to level k+1.
TwoLevelState step(const TwoLevelState& two, const RodProperties& props, const LoadProgram& loads,
                   const BoundarySpec& bc, const StepperConfig& cfg);

using DiagnosticsSink = std::function<void(const DiagnosticsRecord&, const RodState&)>;

/// Steps until t = horizon, calling `sink` once per level k = 0..N with the
/// record of level k and the level-k state. Throws SimulationError.
TwoLevelState run(const TwoLevelState& initial, const RodProperties& props, const LoadProgram& loads,
                  const BoundarySpec& bc, const StepperConfig& cfg, double horizon,
                  const DiagnosticsSink& sink = {});

/// Number of steps covering `horizon`; throws unless horizon is a multiple
/// of h within 1e-9.
std::size_t step_count(double horizon, double h);

} // namespace cosserat
