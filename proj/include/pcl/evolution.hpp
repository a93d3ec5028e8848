#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pcl/kraus.hpp"

// Stroboscopic dynamics: iterated collisions, temperature trajectories,
// analytic steady states, convergence detection and stochastic-parameter
// ensembles. A single trajectory is strictly sequential; ensemble members
// are independent and may run in parallel.
namespace pcl {

struct NoiseSpec {
    enum class Target { dt, phi };
    Target target = Target::dt;
    double mean = 0.4;
    double sigma = 0.2;
    double lower = 0.02;   // rejection-sampling bounds
    double upper = 1e9;
    int n_runs = 10;
};

struct CollisionConfig {
    PhaseoniumParams params;
    double dt = 0.4;
    double omega = 1.0;  // theta = omega * dt
    int n_steps = 3000;
    double initial_t1 = 1.0;
    double initial_t2 = 1.0;
    int mode_count = 2;  // 1 = single cavity, 2 = cascade
    HilbertSpec space{40, 2};
    double leakage_threshold = 1e-6;
    double convergence_tol = 1e-3;
    int convergence_window = 50;
    bool early_exit = true;
    std::optional<NoiseSpec> noise;
    std::uint64_t seed = 0;

    double theta() const { return omega * dt; }
};

struct TrajectoryPoint {
    int step = 0;
    double t1 = 0.0, t2 = 0.0;
    double n1 = 0.0, n2 = 0.0;
    double purity = 0.0;
    double leakage = 0.0;
};

struct TrajectoryRecord {
    std::vector<TrajectoryPoint> points;  // n_steps+1 entries unless early exit
    std::optional<int> converged_at;      // first step entering the tolerance window
    double target_temperature = 0.0;
    CavityState final_state;
};

struct EnsembleStepStats {
    int step = 0;
    double t1_mean = 0.0, t1_std = 0.0;
    double t2_mean = 0.0, t2_std = 0.0;
};

struct EnsembleRecord {
    std::vector<TrajectoryRecord> runs;
    std::vector<EnsembleStepStats> stats;
    double final_t1_mean = 0.0, final_t1_std = 0.0;
    double final_t2_mean = 0.0, final_t2_std = 0.0;
    int trailing_window = 200;  // steps averaged for the final-temperature figure
};

CavityState collide_single(const CavityState& state, const KrausSet& set,
                           double leakage_threshold = 1e-6);
CavityState collide_cascade(const CavityState& state, const KrausSet& set,
                            double leakage_threshold = 1e-6);

// Exact joint-unitary path (dense, small D): returns the evolved cavity state
// and the evolved ancilla. One-mode states only.
std::pair<CavityState, AncillaState> collide_via_unitary(const CavityState& state,
                                                         const AncillaState& ancilla,
                                                         double theta);

// Same for the cascade: U2 U1 (eta (x) rho) U1^dag U2^dag, two-mode state.
std::pair<CavityState, AncillaState> collide_cascade_via_unitary(const CavityState& state,
                                                                 const AncillaState& ancilla,
                                                                 double theta);

// Diagonal Gibbs fixed point p_n ~ (gamma_alpha/gamma_beta)^n.
CavityState steady_state_analytic(const PhaseoniumParams& params, const HilbertSpec& space);

TrajectoryRecord run_trajectory(const CollisionConfig& config);

// n_runs independent trajectories with per-step resampled dt_k or phi_k;
// per-run streams seeded by (config.seed, run_index). `jobs` threads.
EnsembleRecord run_stochastic_ensemble(const CollisionConfig& config, int jobs = 1);

struct ApparentTemperatureStats {
    double mean = 0.0;
    double mode_estimate = 0.0;
    double skewness = 0.0;
    std::int64_t n_accepted = 0;
    std::int64_t n_rejected = 0;  // samples outside the validity region
};

// phi_k ~ Gaussian(phi_star, sigma) mapped through steady_temperature.
ApparentTemperatureStats apparent_temperature_distribution(const PhaseoniumParams& params,
                                                           double sigma,
                                                           std::int64_t n_samples,
                                                           std::uint64_t seed);

// Deterministic per-run Gaussian stream; Box-Muller over explicit 53-bit
// uniforms so output does not depend on library distribution internals.
class GaussianStream {
public:
    GaussianStream(std::uint64_t master_seed, std::uint64_t stream_index);
    double next();                          // standard normal
    double next_truncated(double mean, double sigma, double lo, double hi);

private:
    std::uint64_t state_[4];
    bool have_spare_ = false;
    double spare_ = 0.0;
    std::uint64_t next_u64();
};

}  // namespace pcl
