#include "cosserat/diagnostics.hpp"

#include <algorithm>
#include <cmath>

namespace cosserat {

DiagnosticsRecord make_record(const RodState& now, const RodState& next, const RodProperties& props)
{
    DiagnosticsRecord r;
    r.k = now.step;
    r.t = static_cast<double>(now.step) * now.h;
    r.energy = discrete_energy(now, next, props);
    r.length = rod_length(now);

    const std::vector<double> e = dilatations(now, props.element_length());
    const auto [lo, hi] = std::minmax_element(e.begin(), e.end());
    r.e_min = *lo;
    r.e_max = *hi;

    const double v0 = props.reference_area * props.element_length();
    for (double eq : e)
        r.volume_deviation_max = std::max(r.volume_deviation_max, std::abs(element_volume(eq, props) / v0 - 1.0));

    const std::vector<double> w = node_lengths(props);
    for (std::size_t q = 0; q < now.x.size(); ++q) {
        r.momentum += props.mass_per_length * w[q] * (next.x[q] - now.x[q]) / now.h;
        r.ortho_defect = std::max(r.ortho_defect, orthonormality_defect(now.R[q]));
    }
    return r;
}

} // namespace cosserat
