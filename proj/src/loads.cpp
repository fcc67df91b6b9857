#include "cosserat/loads.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cosserat {

ScalarEnvelope::ScalarEnvelope(std::vector<std::pair<double, double>> breakpoints)
    : points_(std::move(breakpoints))
{
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const auto [t, v] = points_[i];
        if (!std::isfinite(t) || !std::isfinite(v)) {
            std::ostringstream os;
            os << "envelope breakpoint " << i << " is not finite";
            throw std::invalid_argument(os.str());
        }
        if (i > 0 && !(t > points_[i - 1].first)) {
            std::ostringstream os;
            os << "envelope breakpoints must strictly increase in time (index " << i << ")";
            throw std::invalid_argument(os.str());
        }
    }
}

double ScalarEnvelope::operator()(double t) const
{
    if (points_.empty() || t < points_.front().first || t > points_.back().first)
        return 0.0;
    for (std::size_t i = 1; i < points_.size(); ++i) {
        const auto [t1, v1] = points_[i];
        if (t <= t1) {
            const auto [t0, v0] = points_[i - 1];
            if (t == t0)
                return v0;
            if (t == t1)
                return v1;
            return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
        }
    }
    return points_.front().second; // single breakpoint
}

ScalarEnvelope ScalarEnvelope::hat(double peak, double start, double width)
{
    return ScalarEnvelope({{start, 0.0}, {start + 0.5 * width, peak}, {start + width, 0.0}});
}

const char* to_string(Frame f) { return f == Frame::inertial ? "inertial" : "body"; }

Frame frame_from_string(const std::string& s)
{
    if (s == "inertial")
        return Frame::inertial;
    if (s == "body")
        return Frame::body;
    throw std::invalid_argument("unknown frame '" + s + "' (expected inertial|body)");
}

const char* to_string(BoundaryKind b) { return b == BoundaryKind::free_free ? "free_free" : "cantilever"; }

BoundaryKind boundary_from_string(const std::string& s)
{
    if (s == "free_free")
        return BoundaryKind::free_free;
    if (s == "cantilever")
        return BoundaryKind::cantilever;
    throw std::invalid_argument("unknown boundary '" + s + "' (expected free_free|cantilever)");
}

Vec3 LoadProgram::force(std::size_t node, double t) const
{
    Vec3 f = Vec3::Zero();
    for (const NodalLoad& l : loads) {
        if (l.node == node && l.force)
            f += l.force->at(t);
    }
    return f;
}

Vec3 LoadProgram::body_moment(std::size_t node, double t, const Rotation& r) const
{
    Vec3 m = Vec3::Zero();
    for (const NodalLoad& l : loads) {
        if (l.node != node || !l.moment)
            continue;
        const Vec3 v = l.moment->at(t);
        m += l.moment_frame == Frame::body ? v : Vec3(r.matrix().transpose() * v);
    }
    return m;
}

void LoadProgram::validate(std::size_t max_node) const
{
    for (std::size_t i = 0; i < loads.size(); ++i) {
        if (loads[i].node > max_node) {
            std::ostringstream os;
            os << "load " << i << " targets node " << loads[i].node << " but the rod ends at node " << max_node;
            throw std::invalid_argument(os.str());
        }
    }
}

} // namespace cosserat
