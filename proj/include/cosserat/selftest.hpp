#pragma once

#include "cosserat/rod.hpp"

#include <random>
#include <string>
#include <vector>

namespace cosserat {

/// Straight rod with every node displaced by up to `pos_noise * l_n` and
/// every frame turned by a Cayley vector of size up to `rot_noise`.
RodState random_state(const RodProperties& props, std::mt19937_64& rng, double pos_noise = 0.2,
                      double rot_noise = 0.15);

/// Largest relative difference between the analytic strain-energy gradient
/// and central differences of step `d`, over all nodes, positions and rotations.
double gradient_check(const RodState& state, const RodProperties& props, double d = 1e-6);

struct SelfTestResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Quick invariant suite: map round trips, gradient checks, implicit-solve
/// round trips, volume identity and orthonormality over a short run.
std::vector<SelfTestResult> run_selftest();

} // namespace cosserat
