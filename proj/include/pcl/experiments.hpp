#pragma once

#include <filesystem>
#include <string>

#include "pcl/evolution.hpp"
#include "pcl/gaussian.hpp"

// Config-driven experiment front end shared by the `pcl` CLI and the tests.
// Every artifact embeds its full config; identical config + seed reproduces
// CSV payloads byte-identically, independent of worker count.
namespace pcl {

inline constexpr const char* kLibraryVersion = "0.1.0";

struct ExperimentOptions {
    std::filesystem::path out_dir = "out";
    std::uint64_t seed = 0;
    int jobs = 0;  // 0 = PCL_JOBS env or hardware concurrency
    bool plot = false;
};

int resolve_jobs(int requested);

struct LandscapeSpec {
    double alpha_min = 0.0, alpha_max = 0.99;
    int alpha_points = 60;
    double phi_min = 0.0, phi_max = 3.1;
    int phi_points = 60;
};

struct GaussianSpec {
    double gamma_alpha_prime = 0.05;
    double gamma_beta_prime = 0.15;
    double dt_step = 0.01;
    double t_total = 5.0;
};

struct SweepSpec {
    std::string axis = "dt";  // "dt" | "phi" | "alpha"
    std::vector<double> values;
};

struct ProtocolSpec {
    double t_target = 1.5;
    // exactly one of these is solved for; the other is fixed
    std::optional<double> fixed_alpha;
    std::optional<double> fixed_phi = 2.404315987;
    double dt = 0.4;
    int n_steps = 3000;
};

// Rendered CSV payloads (also written to disk): used by the determinism tests.
std::string trajectory_csv(const TrajectoryRecord& rec);
std::string ensemble_csv(const EnsembleRecord& rec);

struct CommandResult {
    std::filesystem::path out_dir;
    std::vector<std::filesystem::path> artifacts;
    std::string summary;  // one-line human summary
};

CommandResult cmd_landscape(const LandscapeSpec& spec, const ExperimentOptions& opts);
CommandResult cmd_trajectory(const CollisionConfig& config, const ExperimentOptions& opts);
CommandResult cmd_noisy(const CollisionConfig& config, const ExperimentOptions& opts);
CommandResult cmd_gaussian(const GaussianSpec& spec, const ExperimentOptions& opts);
CommandResult cmd_sweep(const CollisionConfig& base, const SweepSpec& spec,
                        const ExperimentOptions& opts);
CommandResult cmd_protocol(const ProtocolSpec& spec, const CollisionConfig& base,
                           const ExperimentOptions& opts);
// kind in {fig3, fig4, fig5}; canned configs reproducing the paper-style
// panels with targets computed from the steady-temperature formula.
CommandResult cmd_figure(const std::string& kind, const ExperimentOptions& opts);

// First step after which T1 (and T2 for two-mode runs) stays within
// rel_band * target of the target; -1 if never.
int steps_to_band(const TrajectoryRecord& rec, double target, double rel_band = 0.01);

}  // namespace pcl
