#include "cosserat/so3.hpp"

#include <cmath>
#include <sstream>

namespace cosserat {

SkewMat SkewMat::from_matrix(const Mat3& m, double tol)
{
    const double asym = (m + m.transpose()).cwiseAbs().maxCoeff();
    if (!(asym <= tol)) {
        std::ostringstream os;
        os << "matrix is not antisymmetric: max|M + M^T| = " << asym;
        throw std::invalid_argument(os.str());
    }
    return SkewMat(m);
}

Rotation Rotation::from_matrix(const Mat3& m, double tol)
{
    const double defect = orthonormality_defect(m);
    if (!(defect <= tol)) {
        std::ostringstream os;
        os << "matrix is not orthogonal: ||R^T R - I||_F = " << defect;
        throw std::invalid_argument(os.str());
    }
    if (!(m.determinant() > 0.0))
        throw std::invalid_argument("matrix is a reflection (det R <= 0)");
    return Rotation(m, Unchecked{});
}

SkewMat hat(const Vec3& w)
{
    Mat3 m;
    m << 0.0, -w.z(), w.y(),
         w.z(), 0.0, -w.x(),
         -w.y(), w.x(), 0.0;
    return SkewMat(m);
}

Vec3 vee(const SkewMat& m)
{
    const Mat3& a = m.matrix();
    return Vec3(a(2, 1), a(0, 2), a(1, 0));
}

Vec3 vee(const Mat3& m, double tol) { return vee(SkewMat::from_matrix(m, tol)); }

SkewMat antisym(const Mat3& m) { return SkewMat(0.5 * (m - m.transpose())); }

Rotation cay(const Vec3& w)
{
    // Closed form of (I - W/2)^{-1}(I + W/2); exactly orthogonal in exact arithmetic.
    const Mat3 W = hat(w).matrix();
    const double s = 4.0 / (4.0 + w.squaredNorm());
    return Rotation(Mat3::Identity() + s * (W + 0.5 * W * W), Rotation::Unchecked{});
}

Vec3 inv_cay(const Mat3& r)
{
    const Mat3 I = Mat3::Identity();
    const Mat3 sum = r + I;
    // det(R + I) = 4 (1 + cos(theta)) for a rotation by theta.
    const double det = sum.determinant();
    if (!(std::abs(det) > 1e-12)) {
        std::ostringstream os;
        os << "inverse Cayley map is singular (det(R + I) = " << det
           << "); rotation angle is at pi, refine the mesh or the time step";
        throw CayleySingularityError(os.str());
    }
    const Mat3 X = sum.partialPivLu().solve(2.0 * (r - I));
    // X is skew in exact arithmetic; take the skew part to drop round-off.
    return vee(antisym(X));
}

Vec3 inv_cay(const Rotation& r) { return inv_cay(r.matrix()); }

Mat3 inv_cay_left_jacobian(const Vec3& psi)
{
    return Mat3::Identity() + 0.5 * hat(psi).matrix() + 0.25 * psi * psi.transpose();
}

Mat3 cay_half_factor(const Vec3& w)
{
    const Mat3 A = Mat3::Identity() - 0.5 * hat(w).matrix();
    return A.inverse();
}

double orthonormality_defect(const Mat3& r)
{
    return (r.transpose() * r - Mat3::Identity()).norm();
}

} // namespace cosserat
