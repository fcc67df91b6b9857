#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace cosserat {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Raised when the inverse Cayley map hits a rotation by (close to) pi.
/// In the integrator this means the spatial or temporal step is too coarse.
class CayleySingularityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Element of so(3): a 3x3 matrix with M = -M^T.
class SkewMat {
public:
    SkewMat() : m_(Mat3::Zero()) {}

    /// Validates antisymmetry to `tol` (max-abs of M + M^T) and throws
    /// std::invalid_argument otherwise.
    static SkewMat from_matrix(const Mat3& m, double tol = 1e-12);

    const Mat3& matrix() const { return m_; }
    Vec3 operator*(const Vec3& u) const { return m_ * u; }

private:
    friend SkewMat hat(const Vec3& w);
    friend SkewMat antisym(const Mat3& m);
    explicit SkewMat(const Mat3& m) : m_(m) {}
    Mat3 m_;
};

/// Element of SO(3). Construction from an arbitrary matrix checks
/// ||R^T R - I||_F <= 1e-12 and det R > 0. Products of rotations and Cayley
/// images are closed under the group and skip the check; drift is monitored
/// with orthonormality_defect instead of being projected away.
class Rotation {
public:
    static constexpr double kConstructionTolerance = 1e-12;

    Rotation() : m_(Mat3::Identity()) {}

    static Rotation identity() { return Rotation(); }
    static Rotation from_matrix(const Mat3& m, double tol = kConstructionTolerance);

    const Mat3& matrix() const { return m_; }
    Rotation transpose() const { return Rotation(m_.transpose(), Unchecked{}); }

    Rotation operator*(const Rotation& other) const { return Rotation(m_ * other.m_, Unchecked{}); }
    Vec3 operator*(const Vec3& v) const { return m_ * v; }

    bool operator==(const Rotation& other) const { return m_ == other.m_; }

private:
    struct Unchecked {};
    Rotation(const Mat3& m, Unchecked) : m_(m) {}
    friend Rotation cay(const Vec3& w);

    Mat3 m_;
};

SkewMat hat(const Vec3& w);

/// Inverse of hat. Rejects inputs that are not antisymmetric within `tol`.
Vec3 vee(const SkewMat& m);
Vec3 vee(const Mat3& m, double tol = 1e-12);

/// Skew-symmetric part (M - M^T)/2.
SkewMat antisym(const Mat3& m);

/// Cayley map (I - w^/2)^{-1} (I + w^/2): rotation about w/|w| by 2 atan(|w|/2).
Rotation cay(const Vec3& w);

/// vee(2 (R - I)(R + I)^{-1}), evaluated by solving (R + I) X = 2 (R - I).
/// Throws CayleySingularityError when R + I is singular.
Vec3 inv_cay(const Rotation& r);
Vec3 inv_cay(const Mat3& r);

/// Left-trivialised derivative of inv_cay: if G = cay(psi) and G is perturbed
/// to G cay(eps xi), then d psi / d eps = inv_cay_left_jacobian(psi) * xi.
Mat3 inv_cay_left_jacobian(const Vec3& psi);

/// Derivative of cay at w: dF = A^{-1} dw^ A^{-1} with A = I - w^/2.
/// Returns A^{-1}.
Mat3 cay_half_factor(const Vec3& w);

/// ||R^T R - I||_F.
double orthonormality_defect(const Mat3& r);
inline double orthonormality_defect(const Rotation& r) { return orthonormality_defect(r.matrix()); }

} // namespace cosserat
