#pragma once

#include "cosserat/rod.hpp"

#include <cstddef>

namespace cosserat {

/// One row of the time series.
struct DiagnosticsRecord {
    std::size_t k = 0;
    double t = 0.0;
    EnergyBreakdown energy;
    double length = 0.0;
    double e_min = 0.0;
    double e_max = 0.0;
    double volume_deviation_max = 0.0; ///< max_q |V_q / (A l_n) - 1|
    Vec3 momentum = Vec3::Zero();      ///< sum_q rho A w_q (x^{k+1} - x^k) / h
    double ortho_defect = 0.0;         ///< max_q ||R_q^T R_q - I||_F
};

/// Diagnostics of level `now`, using `next` for the velocity terms.
DiagnosticsRecord make_record(const RodState& now, const RodState& next, const RodProperties& props);

} // namespace cosserat
