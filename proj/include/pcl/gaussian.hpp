#pragma once

#include "pcl/kraus.hpp"

// Coarse-grained continuous-time limit of the cascade dynamics: drift-diffusion
// propagation of first and second moments, the Lyapunov steady state, Gaussian
// information measures, and the dual (observable) collision update.
// Quadrature ordering (q1, p1, q2, p2); vacuum covariance = identity/2.
namespace pcl {

using Vector4 = Eigen::Vector4d;
using Matrix4 = Eigen::Matrix4d;

struct LindbladGenerator {
    double gamma_alpha_prime = 0.0;  // gain rate, gamma_alpha * Omega^2 dt
    double gamma_beta_prime = 0.0;   // loss rate
    Matrix4 drift;                   // A in dsigma/dt = A sigma + sigma A^T + Dif
    Matrix4 diffusion;               // Dif, symmetric PSD

    bool stable() const;  // spectral abscissa of A < 0
};

struct CovarianceState {
    Vector4 mean = Vector4::Zero();
    Matrix4 sigma = 0.5 * Matrix4::Identity();

    // sigma + (i/2) Omega >= 0; returns the violation (<= tol means valid)
    double uncertainty_violation() const;
};

Matrix4 symplectic_form();  // [q,p] blocks: [[0,1],[-1,0]] per mode

// Collective jump operators a+b (loss) and a^dag+b^dag (gain) plus the
// beam-splitter H_eff = i(gb'-ga')(a^dag b - b^dag a)/2.
LindbladGenerator lindblad_generator(double gamma_alpha_prime, double gamma_beta_prime);

// Fixed-step RK4 on dsigma/dt = A sigma + sigma A^T + Dif, dmean/dt = A mean.
// Symmetrizes each step; aborts if the uncertainty relation breaks.
std::vector<CovarianceState> propagate_covariance(const CovarianceState& initial,
                                                  const LindbladGenerator& gen,
                                                  double dt_step, double t_total);

// Solves A Sigma + Sigma A^T + Dif = 0 by Kronecker vectorization.
CovarianceState steady_covariance(const LindbladGenerator& gen);

struct GaussianMeasures {
    double purity = 1.0;
    double entropy_mode1 = 0.0;  // von Neumann, nats
    double entropy_mode2 = 0.0;
    double entropy_total = 0.0;
    double mutual_information = 0.0;
    double log_negativity = 0.0;
};

GaussianMeasures gaussian_measures(const CovarianceState& state);

double mode_occupancy(const CovarianceState& state, int mode);  // (s_qq + s_pp - 1)/2

// Heisenberg-picture collision update O -> sum E^dag O E.
Matrix dual_step(const Matrix& observable, const KrausSet& set);

}  // namespace pcl
