#pragma once

#include "pcl/fock.hpp"

// Phaseonium ancilla: a three-level lambda atom with excited population
// alpha^2 and a coherent ground doublet carrying phase phi. Basis order is
// (e, g1, g2) everywhere.
namespace pcl {

using AncillaMatrix = Eigen::Matrix3cd;

struct PhaseoniumParams {
    double alpha = 0.25;
    double phi = 2.404315987;
    double epsilon = 0.0;  // residual ground splitting; 0 per the degenerate approximation

    PhaseoniumParams() = default;
    PhaseoniumParams(double a, double p, double eps = 0.0);

    double beta_sq() const { return 1.0 - alpha * alpha; }
    double gamma_alpha() const { return 2.0 * alpha * alpha; }
    double gamma_beta() const { return beta_sq() * (1.0 + std::cos(phi)); }
    // finite steady temperature requires gamma_alpha/gamma_beta < 1
    bool has_steady_state() const;
};

struct AncillaState {
    AncillaMatrix matrix;
    bool valid(double tol = 1e-12) const;
};

AncillaState make_phaseonium(const PhaseoniumParams& params);

std::pair<double, double> gamma_rates(const PhaseoniumParams& params);

// T_phi = -1/ln(gamma_alpha/gamma_beta). Throws if the ratio is >= 1
// (no finite stationary temperature); alpha = 0 gives T = 0.
double steady_temperature(const PhaseoniumParams& params);

// Invert T_phi for one parameter with the other held fixed. solve_phi returns
// the canonical branch phi in [0, pi).
double solve_alpha(double t_target, double phi);
double solve_phi(double t_target, double alpha);

// Temperature assigned to a (generally non-thermal) ancilla through its
// collective absorption/emission ratio, oriented so that fresh phaseonium
// reproduces steady_temperature exactly.
double apparent_temperature(const AncillaState& ancilla);

// Stationary ancilla after collision with the thermalized cavity:
// populations unchanged, ground coherence multiplied through
// Gamma = cos(phi) - i sin(phi) Tr{C' rho*}.
AncillaState ancilla_after_steady(const PhaseoniumParams& params, double theta,
                                  const CavityState& steady_cavity);

// ln(1 + cos phi): inverse-temperature gap paid for creating the coherences.
double coherence_energy_gap(double phi);

}  // namespace pcl
