#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

// Truncated Fock-space arithmetic: ladder operators, the sinusoidal photonic
// operators entering the finite-time collision unitary, Gibbs states and
// temperature estimation. Units: hbar = k_B = omega = 1 throughout.
namespace pcl {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;

class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class LeakageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Truncated Fock space: levels 0..cutoff-1. `interior_margin` levels at the
// truncation boundary are excluded from exactness checks.
struct HilbertSpec {
    int cutoff = 40;
    int interior_margin = 2;

    HilbertSpec() = default;
    HilbertSpec(int d, int m) : cutoff(d), interior_margin(m) {
        if (d < 2) throw ValidationError("HilbertSpec: cutoff must be >= 2");
        if (m < 0 || m >= d) throw ValidationError("HilbertSpec: margin must be in [0, cutoff)");
    }
    int interior() const { return cutoff - interior_margin; }
    bool operator==(const HilbertSpec&) const = default;
};

struct CavityOperator {
    Matrix matrix;
    HilbertSpec space;
    int mode_count = 1;

    int dim() const { return static_cast<int>(matrix.rows()); }
};

// Density matrix on the truncated space (one mode: DxD, two modes: D^2xD^2).
struct CavityState {
    Matrix matrix;
    HilbertSpec space;
    int mode_count = 1;

    int dim() const { return static_cast<int>(matrix.rows()); }
    // trace within 1e-12 of 1, Hermitian within 1e-12, min eigenvalue >= -1e-10
    bool valid(double* worst = nullptr) const;
};

// The three operator-valued sinusoidal functions of the number operators.
// C and C' are diagonal; S lives on the first subdiagonal.
struct PhotonicOps {
    Matrix C;       // cos(theta sqrt(2 a a^dag))
    Matrix Cprime;  // cos(theta sqrt(2 a^dag a))
    Matrix S;       // a^dag sin(theta sqrt(2 a a^dag)) / sqrt(2 a a^dag)
};

// <n-1| a |n> = sqrt(n)
Matrix annihilation(const HilbertSpec& space);
Matrix creation(const HilbertSpec& space);
Matrix number_operator(const HilbertSpec& space);

PhotonicOps photonic_ops(double theta, const HilbertSpec& space);

// Diagonal Gibbs state p_n ~ exp(-n/T), renormalized on the truncated space.
// T = 0 gives the vacuum. Negative T is rejected.
CavityState thermal_state(double temperature, const HilbertSpec& space);

double mean_photon_number(const CavityState& state);  // mode 0 of a 1- or 2-mode state

// Bose-Einstein inversion of <n>: T = 1/ln(1 + 1/<n>). Exact on Gibbs states,
// returns 0 for the vacuum. `thermal_diagnostic`, if given, receives
// |p1/p0 - exp(-1/T)|, a cheap flag for non-thermal states.
double effective_temperature(const CavityState& state, double* thermal_diagnostic = nullptr);
double effective_temperature_from_n(double mean_n);

// Population in the top `interior_margin` levels of each mode.
double leakage(const CavityState& state);

double purity(const CavityState& state);
double trace_distance(const Matrix& a, const Matrix& b);

// Partial traces for two-mode states (mode 1 = first tensor factor).
Matrix partial_trace_mode2(const Matrix& rho, int d);  // keeps mode 1
Matrix partial_trace_mode1(const Matrix& rho, int d);  // keeps mode 2

}  // namespace pcl
