#pragma once

#include "cosserat/so3.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cosserat {

/// Piecewise-linear scalar function through ordered breakpoints, zero
/// outside [t_first, t_last].
class ScalarEnvelope {
public:
    ScalarEnvelope() = default;
    /// Throws std::invalid_argument unless times strictly increase and all
    /// values are finite.
    explicit ScalarEnvelope(std::vector<std::pair<double, double>> breakpoints);

    double operator()(double t) const;
    const std::vector<std::pair<double, double>>& breakpoints() const { return points_; }
    bool empty() const { return points_.empty(); }

    /// 0 -> peak -> 0, linear on [start, start + width/2] and back down.
    static ScalarEnvelope hat(double peak, double start = 0.0, double width = 5.0);

    bool operator==(const ScalarEnvelope&) const = default;

private:
    std::vector<std::pair<double, double>> points_;
};

/// direction * envelope(t).
struct VectorProfile {
    Vec3 direction = Vec3::Zero();
    ScalarEnvelope envelope;

    Vec3 at(double t) const { return direction * envelope(t); }
    bool operator==(const VectorProfile& o) const { return direction == o.direction && envelope == o.envelope; }
};

enum class Frame { inertial, body };

const char* to_string(Frame f);
Frame frame_from_string(const std::string& s);

/// Point force (inertial frame) and/or moment acting on one node.
struct NodalLoad {
    std::size_t node = 0;
    std::optional<VectorProfile> force;
    std::optional<VectorProfile> moment;
    Frame moment_frame = Frame::inertial;

    bool operator==(const NodalLoad&) const = default;
};

struct LoadProgram {
    std::vector<NodalLoad> loads;

    /// Sum of nodal forces on `node` at time t, inertial frame [N].
    Vec3 force(std::size_t node, double t) const;
    /// Sum of nodal moments on `node` at time t, expressed in the body frame
    /// of the cross-section with orientation `r` [N m].
    Vec3 body_moment(std::size_t node, double t, const Rotation& r) const;

    /// Throws std::invalid_argument for node indices beyond `max_node`.
    void validate(std::size_t max_node) const;

    bool operator==(const LoadProgram&) const = default;
};

enum class BoundaryKind { free_free, cantilever };

const char* to_string(BoundaryKind b);
BoundaryKind boundary_from_string(const std::string& s);

/// Cantilever clamps node 0 at (x0, R0); free_free leaves every node free.
struct BoundarySpec {
    BoundaryKind kind = BoundaryKind::free_free;
    Vec3 base_position = Vec3::Zero();
    Rotation base_rotation;

    bool fixed(std::size_t node) const { return kind == BoundaryKind::cantilever && node == 0; }
};

} // namespace cosserat
