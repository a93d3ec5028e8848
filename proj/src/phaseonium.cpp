#include "pcl/phaseonium.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

namespace pcl {

namespace {
constexpr double kPhiMargin = 1e-9;
constexpr double kRatioMargin = 1e-9;
}  // namespace

PhaseoniumParams::PhaseoniumParams(double a, double p, double eps)
    : alpha(a), phi(p), epsilon(eps) {
    if (alpha * alpha > 1.0) throw ValidationError("phaseonium: alpha^2 > 1");
    if (std::abs(phi) >= std::numbers::pi - kPhiMargin)
        throw ValidationError("phaseonium: |phi| must be < pi (phi = pi is excluded)");
    if (beta_sq() / 2.0 + epsilon < 0 || beta_sq() / 2.0 - epsilon < 0)
        throw ValidationError("phaseonium: |epsilon| exceeds beta^2/2");
}

bool PhaseoniumParams::has_steady_state() const {
    double gb = gamma_beta();
    return gb > 0 && gamma_alpha() / gb < 1.0 - kRatioMargin;
}

bool AncillaState::valid(double tol) const {
    double tr_err = std::abs(matrix.trace() - Complex(1.0, 0.0));
    double herm_err = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
    Eigen::SelfAdjointEigenSolver<AncillaMatrix> es(matrix, Eigen::EigenvaluesOnly);
    return tr_err < tol && herm_err < tol && es.eigenvalues().minCoeff() >= -tol;
}

AncillaState make_phaseonium(const PhaseoniumParams& p) {
    const double b2 = p.beta_sq();
    AncillaState eta;
    eta.matrix.setZero();
    eta.matrix(0, 0) = p.alpha * p.alpha;
    eta.matrix(1, 1) = b2 / 2.0 + p.epsilon;
    eta.matrix(2, 2) = b2 / 2.0 - p.epsilon;
    eta.matrix(1, 2) = b2 / 2.0 * std::exp(Complex(0.0, -p.phi));
    eta.matrix(2, 1) = std::conj(eta.matrix(1, 2));
    return eta;
}

std::pair<double, double> gamma_rates(const PhaseoniumParams& p) {
    return {p.gamma_alpha(), p.gamma_beta()};
}

double steady_temperature(const PhaseoniumParams& p) {
    const double ga = p.gamma_alpha();
    const double gb = p.gamma_beta();
    if (ga == 0.0) return 0.0;  // bath only absorbs: vacuum steady state
    if (gb <= 0.0 || ga / gb >= 1.0 - kRatioMargin)
        throw ValidationError("steady_temperature: gamma_alpha/gamma_beta >= 1, no finite stationary temperature");
    return -1.0 / std::log(ga / gb);
}

double solve_alpha(double t_target, double phi) {
    if (t_target <= 0) throw ValidationError("solve_alpha: target temperature must be > 0");
    const double r = std::exp(-1.0 / t_target);
    const double c = 1.0 + std::cos(phi);
    // gamma_alpha/gamma_beta = r  =>  2 alpha^2 = r (1 - alpha^2)(1 + cos phi)
    const double a2 = r * c / (2.0 + r * c);
    if (a2 < 0.0 || a2 >= 1.0)
        throw ValidationError("solve_alpha: no solution in the admissible region");
    return std::sqrt(a2);
}

double solve_phi(double t_target, double alpha) {
    if (t_target <= 0) throw ValidationError("solve_phi: target temperature must be > 0");
    const double a2 = alpha * alpha;
    if (a2 >= 1.0) throw ValidationError("solve_phi: alpha^2 must be < 1");
    const double cos_phi = 2.0 * a2 * std::exp(1.0 / t_target) / (1.0 - a2) - 1.0;
    if (cos_phi < -1.0 || cos_phi >= 1.0)
        throw ValidationError("solve_phi: no solution, required cos(phi) outside [-1, 1)");
    return std::acos(cos_phi);
}

double apparent_temperature(const AncillaState& eta) {
    // (s1+ + s2+)(s1- + s2-) = 2|e><e|;  (s1- + s2-)(s1+ + s2+) = sum_ij |gi><gj|
    const double absorption = 2.0 * std::real(eta.matrix(0, 0));
    const double emission = std::real(eta.matrix(1, 1) + eta.matrix(2, 2) +
                                      eta.matrix(1, 2) + eta.matrix(2, 1));
    if (absorption <= 0 || emission <= 0 || absorption == emission)
        throw ValidationError("apparent_temperature: undefined (non-positive log argument)");
    return 1.0 / std::log(emission / absorption);
}

AncillaState ancilla_after_steady(const PhaseoniumParams& p, double theta,
                                  const CavityState& steady_cavity) {
    PhotonicOps ops = photonic_ops(theta, steady_cavity.space);
    const Complex tr_c = (ops.Cprime * steady_cavity.matrix).trace();
    const Complex gamma = std::cos(p.phi) - Complex(0.0, 1.0) * std::sin(p.phi) * tr_c;
    const double b2 = p.beta_sq();
    AncillaState eta;
    eta.matrix.setZero();
    eta.matrix(0, 0) = p.alpha * p.alpha;
    eta.matrix(1, 1) = b2 / 2.0;
    eta.matrix(2, 2) = b2 / 2.0;
    eta.matrix(1, 2) = b2 / 2.0 * gamma;
    eta.matrix(2, 1) = std::conj(eta.matrix(1, 2));
    return eta;
}

double coherence_energy_gap(double phi) { return std::log(1.0 + std::cos(phi)); }

}  // namespace pcl
