#include "cosserat/so3.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace cosserat;
using cosserat::testing::random_vec;

TEST_CASE("hat of basis and zero vectors")
{
    CHECK(hat(Vec3::Zero()).matrix() == Mat3::Zero());
    Mat3 expected;
    expected << 0, 0, 0,
                0, 0, -1,
                0, 1, 0;
    CHECK(hat(Vec3(1, 0, 0)).matrix() == expected);
    const Vec3 w(0.3, -1.2, 7.5);
    CHECK(vee(hat(w)) == w);
}

TEST_CASE("vee of hand-expanded matrix")
{
    Mat3 m;
    m << 0, -3, 2,
         3, 0, -1,
         -2, 1, 0;
    CHECK(vee(m) == Vec3(1, 2, 3));
    CHECK(vee(Mat3::Zero().eval()) == Vec3::Zero());
    CHECK(vee(hat(Vec3(1, 2, 3))) == Vec3(1, 2, 3));
}

TEST_CASE("vee rejects non-antisymmetric input")
{
    Mat3 m = hat(Vec3(1, 2, 3)).matrix();
    m(0, 0) = 1e-9;
    CHECK_THROWS_AS(vee(m), std::invalid_argument);
}

TEST_CASE("antisym")
{
    Mat3 sym;
    sym << 1, 2, 3,
           2, 5, 6,
           3, 6, 9;
    CHECK(antisym(sym).matrix() == Mat3::Zero());

    const Mat3 skew = hat(Vec3(0.4, -0.1, 2.0)).matrix();
    CHECK(antisym(skew).matrix() == skew);

    Mat3 m;
    m << 1, 2, 0,
         0, 1, 0,
         0, 0, 1;
    Mat3 expected;
    expected << 0, 1, 0,
                -1, 0, 0,
                0, 0, 0;
    CHECK(antisym(m).matrix() == expected);
}

TEST_CASE("cay matches hand evaluation and axis-angle")
{
    CHECK(cay(Vec3::Zero()).matrix() == Mat3::Identity());

    Mat3 expected;
    expected << 0.6, -0.8, 0,
                0.8, 0.6, 0,
                0, 0, 1;
    CHECK((cay(Vec3(0, 0, 1)).matrix() - expected).norm() < 1e-15);

    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
        const Vec3 w = random_vec(rng, 3.0);
        const double angle = 2.0 * std::atan(0.5 * w.norm());
        const Mat3 ref = Eigen::AngleAxisd(angle, w.normalized()).toRotationMatrix();
        CHECK((cay(w).matrix() - ref).norm() < 1e-13);
    }
}

TEST_CASE("inv_cay")
{
    CHECK(inv_cay(Rotation::identity()).norm() == 0.0);
    CHECK((inv_cay(cay(Vec3(0, 0, 1))) - Vec3(0, 0, 1)).norm() < 1e-15);
    const Vec3 w(0.1, 0.2, -0.05);
    CHECK((inv_cay(cay(w)) - w).norm() < 1e-15);

    const Mat3 half_turn = Eigen::AngleAxisd(M_PI, Vec3::UnitZ()).toRotationMatrix();
    CHECK_THROWS_AS(inv_cay(half_turn), CayleySingularityError);
}

TEST_CASE("cay and inv_cay are mutually inverse")
{
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const Vec3 w = random_vec(rng, 5.0);
        const Vec3 back = inv_cay(cay(w));
        CHECK((back - w).norm() <= 1e-12 * std::max(1.0, w.norm()));

        const Rotation r = cay(random_vec(rng, 4.0));
        CHECK((cay(inv_cay(r)).matrix() - r.matrix()).norm() <= 1e-12);
    }
}

TEST_CASE("cay stays orthonormal and hat is the cross product")
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
        const Vec3 w = random_vec(rng, 10.0 / std::sqrt(3.0));
        CHECK(orthonormality_defect(cay(w)) <= 1e-13);
        CHECK(cay(w).matrix().determinant() > 0.0);

        const Vec3 a = random_vec(rng, 2.0);
        const Vec3 u = random_vec(rng, 2.0);
        CHECK((hat(a) * u - a.cross(u)).norm() <= 1e-15);
        CHECK(antisym(antisym(hat(a).matrix() + Mat3::Identity()).matrix()).matrix()
              == antisym(hat(a).matrix() + Mat3::Identity()).matrix());
    }
}

TEST_CASE("orthonormality defect")
{
    CHECK(orthonormality_defect(Mat3::Identity().eval()) == 0.0);
    const Mat3 scaled = 1.001 * Mat3::Identity();
    CHECK(orthonormality_defect(scaled) == doctest::Approx(0.002001 * std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("Rotation validates its input")
{
    CHECK_NOTHROW(Rotation::from_matrix(cay(Vec3(0.3, 0.1, 2.0)).matrix()));
    CHECK_THROWS_AS(Rotation::from_matrix(1.001 * Mat3::Identity()), std::invalid_argument);
    CHECK_THROWS_AS(Rotation::from_matrix(-Mat3::Identity()), std::invalid_argument);
}

TEST_CASE("left Jacobian of inv_cay matches finite differences")
{
    std::mt19937_64 rng(5);
    for (int i = 0; i < 50; ++i) {
        const Vec3 psi = random_vec(rng, 1.5);
        const Vec3 xi = random_vec(rng, 1.0);
        const Rotation G = cay(psi);
        const double d = 1e-6;
        const Vec3 fd = (inv_cay(G * cay(d * xi)) - inv_cay(G * cay(-d * xi))) / (2 * d);
        CHECK(cosserat::testing::rel_err(inv_cay_left_jacobian(psi) * xi, fd) < 1e-8);
    }
}
