#pragma once

#include "cosserat/so3.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace cosserat {

/// An element whose length collapsed below 1e-12 * l_n.
class DegenerateElementError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Modified: cross-sections deform with the local dilatation e (area A/e,
/// second moment I/e^2). Standard: rigid cross-sections, all e treated as 1.
enum class Model { modified, standard };

const char* to_string(Model m);
Model model_from_string(const std::string& s);

/// Geometry and material constants of a uniform rod.
struct RodProperties {
    double length = 10.0;          ///< L [m]
    std::size_t elements = 100;    ///< n
    double mass_per_length = 1.0;  ///< rho * A [kg/m]
    Vec3 inertia_per_length{10.0, 10.0, 20.0};   ///< diag(rho * I) [kg m]
    Vec3 shear_stretch_stiffness{1e4, 1e4, 1e4}; ///< diag(G A, G A, E A) [N]
    Vec3 bend_twist_stiffness{500.0, 500.0, 500.0}; ///< diag(E I1, E I2, G I3) [N m^2]
    double reference_area = 1.0;   ///< A [m^2], only used for volume reporting
    Model model = Model::modified;

    double element_length() const { return length / static_cast<double>(elements); }
    Mat3 inertia() const { return inertia_per_length.asDiagonal(); }
    Mat3 stiffness_c() const { return shear_stretch_stiffness.asDiagonal(); }
    Mat3 stiffness_k() const { return bend_twist_stiffness.asDiagonal(); }

    /// Throws std::invalid_argument when an invariant is violated.
    void validate() const;
};

/// Nodal configuration (x_q, R_q), q = 0..n, at time level `step`.
struct RodState {
    std::vector<Vec3> x;
    std::vector<Rotation> R;
    std::size_t step = 0;
    double h = 0.0;

    std::size_t nodes() const { return x.size(); }
    std::size_t elements() const { return x.empty() ? 0 : x.size() - 1; }
};

/// Straight rod of the given properties with base at `base`, tangent along
/// `frame * e3`, every cross-section carrying `frame`.
RodState straight_rod(const RodProperties& props, const Vec3& base = Vec3::Zero(),
                      const Rotation& frame = Rotation::identity());

struct ElementStrains {
    std::vector<double> e;      ///< dilatation per element
    std::vector<Vec3> shear;    ///< V_q - e3
    std::vector<Vec3> psi;      ///< inv_cay(R_q^T R_{q+1})
    std::vector<Vec3> kappa;    ///< psi_q / l_n
};

struct EnergyBreakdown {
    double translational = 0.0;
    double rotational = 0.0;
    double linear_strain = 0.0;
    double angular_strain = 0.0;
    double total() const { return translational + rotational + linear_strain + angular_strain; }
};

/// ||x1 - x0|| / l_n. Throws DegenerateElementError for collapsed elements.
double dilatation(const Vec3& x0, const Vec3& x1, double element_length);

/// Per-node harmonic combinations of adjacent element dilatations:
/// 1/ebar_q = sum of 1/e over the elements touching node q.
std::vector<double> node_weights(const std::vector<double>& e);

Vec3 linear_strain(const Rotation& r, const Vec3& x0, const Vec3& x1, double element_length);
Vec3 rotational_strain(const Rotation& r0, const Rotation& r1);

/// Dilatations of every element of `state`; all 1 for the standard model is
/// NOT applied here (these are the geometric values).
std::vector<double> dilatations(const RodState& state, double element_length);

ElementStrains strains(const RodState& state, double element_length);

/// Dilatations as seen by the constitutive law: geometric for the modified
/// model, identically 1 for the standard model.
std::vector<double> effective_dilatations(const RodState& state, const RodProperties& props);

/// 1/2 tr[J] I - J.
Mat3 nonstandard_inertia(const Mat3& j, double tol = 1e-12);

/// Discrete strain energy U_d at one time level.
/// linear: sum_q l_n/4 [a^T C/e a + b^T C/e b], a = R_q^T dx/l_n - e3, b = R_{q+1}^T dx/l_n - e3
/// angular: sum_q 1/(2 l_n) psi^T K/e^3 psi
EnergyBreakdown strain_energy(const RodState& state, const RodProperties& props);

/// Discrete energy H^k from two consecutive levels (kinetic terms use
/// finite differences between them, strain terms use `now`).
EnergyBreakdown discrete_energy(const RodState& now, const RodState& next, const RodProperties& props);

/// Modified: (A/e)(e l_n) == A l_n. Standard: A e l_n.
double element_volume(double e, const RodProperties& props);

double rod_length(const RodState& state);

/// Trapezoidal node lengths: l_n/2 at the ends, l_n inside.
std::vector<double> node_lengths(const RodProperties& props);

void check_grid(const RodState& state, const RodProperties& props);

} // namespace cosserat
