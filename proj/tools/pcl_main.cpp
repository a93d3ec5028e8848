// pcl: phaseonium-driven cascade-cavity collision simulator, CLI front end.
//
// Exit codes: 0 success, 2 validation error, 3 leakage abort.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <numbers>

#include "pcl/experiments.hpp"

namespace {

struct CommonArgs {
    pcl::ExperimentOptions opts;
    pcl::CollisionConfig cfg;
    double alpha = 0.25;
    double phi = 2.404315987;
};

void add_common(CLI::App* sub, CommonArgs& a) {
    if (const char* env = std::getenv("PCL_OUT")) a.opts.out_dir = env;
    sub->fallthrough();  // lets --config after the subcommand reach the app-level option
    sub->add_option("--out", a.opts.out_dir, "output directory")->capture_default_str();
    sub->add_option("--seed", a.opts.seed, "master seed")->capture_default_str();
    sub->add_option("--jobs", a.opts.jobs, "worker count (0 = PCL_JOBS or hardware)")
        ->capture_default_str();
    sub->add_flag("--plot", a.opts.plot, "render static SVG plots");
}

void add_collision(CLI::App* sub, CommonArgs& a) {
    sub->add_option("--alpha", a.alpha, "phaseonium excited amplitude")->capture_default_str();
    sub->add_option("--phi", a.phi, "phaseonium coherence phase")->capture_default_str();
    sub->add_option("--dt", a.cfg.dt, "collision time")->capture_default_str();
    sub->add_option("--omega", a.cfg.omega, "coupling strength")->capture_default_str();
    sub->add_option("--steps", a.cfg.n_steps, "number of collisions")->capture_default_str();
    sub->add_option("--t1", a.cfg.initial_t1, "initial temperature, cavity 1")
        ->capture_default_str();
    sub->add_option("--t2", a.cfg.initial_t2, "initial temperature, cavity 2")
        ->capture_default_str();
    sub->add_option("--modes", a.cfg.mode_count, "1 = single cavity, 2 = cascade")
        ->check(CLI::IsMember({1, 2}))
        ->capture_default_str();
    sub->add_option("--cutoff", a.cfg.space.cutoff, "Fock cutoff per mode")
        ->capture_default_str();
    sub->add_option("--margin", a.cfg.space.interior_margin, "interior margin")
        ->capture_default_str();
    sub->add_option("--leakage-threshold", a.cfg.leakage_threshold, "abort threshold")
        ->capture_default_str();
    sub->add_option("--tol", a.cfg.convergence_tol, "convergence tolerance")
        ->capture_default_str();
}

pcl::CollisionConfig build_config(const CommonArgs& a) {
    pcl::CollisionConfig cfg = a.cfg;
    cfg.params = pcl::PhaseoniumParams(a.alpha, a.phi);
    cfg.seed = a.opts.seed;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"phaseonium cascade-cavity collision simulator"};
    app.require_subcommand(1);
    // config files use one [subcommand] section per command; flags win over the file
    app.set_config("--config", "", "config file: key=value under a [subcommand] section");

    CommonArgs land_args;
    pcl::LandscapeSpec land;
    auto* land_cmd = app.add_subcommand("landscape", "steady-temperature map over (alpha, phi)");
    add_common(land_cmd, land_args);
    land_cmd->add_option("--alpha-min", land.alpha_min)->capture_default_str();
    land_cmd->add_option("--alpha-max", land.alpha_max)->capture_default_str();
    land_cmd->add_option("--alpha-points", land.alpha_points)->capture_default_str();
    land_cmd->add_option("--phi-min", land.phi_min)->capture_default_str();
    land_cmd->add_option("--phi-max", land.phi_max)->capture_default_str();
    land_cmd->add_option("--phi-points", land.phi_points)->capture_default_str();

    CommonArgs traj_args;
    auto* traj_cmd = app.add_subcommand("trajectory", "deterministic collision trajectory");
    add_common(traj_cmd, traj_args);
    add_collision(traj_cmd, traj_args);

    CommonArgs ndt_args;
    pcl::NoiseSpec ndt_noise{pcl::NoiseSpec::Target::dt, 0.4, 0.2, 0.02, 1e9, 10};
    auto* ndt_cmd = app.add_subcommand("noisy-dt", "ensemble with stochastic interaction times");
    add_common(ndt_cmd, ndt_args);
    add_collision(ndt_cmd, ndt_args);
    ndt_cmd->add_option("--noise-mean", ndt_noise.mean)->capture_default_str();
    ndt_cmd->add_option("--noise-sigma", ndt_noise.sigma)->capture_default_str();
    ndt_cmd->add_option("--runs", ndt_noise.n_runs)->capture_default_str();

    CommonArgs nphi_args;
    pcl::NoiseSpec nphi_noise{pcl::NoiseSpec::Target::phi, 2.404315987, 0.2,
                              -(std::numbers::pi - 0.05), std::numbers::pi - 0.05, 10};
    auto* nphi_cmd = app.add_subcommand("noisy-phi", "ensemble with stochastic coherence phases");
    add_common(nphi_cmd, nphi_args);
    add_collision(nphi_cmd, nphi_args);
    nphi_cmd->add_option("--noise-sigma", nphi_noise.sigma)->capture_default_str();
    nphi_cmd->add_option("--runs", nphi_noise.n_runs)->capture_default_str();

    CommonArgs gauss_args;
    pcl::GaussianSpec gauss;
    auto* gauss_cmd = app.add_subcommand("gaussian", "continuous-limit covariance dynamics");
    add_common(gauss_cmd, gauss_args);
    gauss_cmd->add_option("--gamma-alpha", gauss.gamma_alpha_prime)->capture_default_str();
    gauss_cmd->add_option("--gamma-beta", gauss.gamma_beta_prime)->capture_default_str();
    gauss_cmd->add_option("--dt-step", gauss.dt_step)->capture_default_str();
    gauss_cmd->add_option("--t-total", gauss.t_total)->capture_default_str();

    CommonArgs sweep_args;
    pcl::SweepSpec sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "parallel sweep over one config axis");
    add_common(sweep_cmd, sweep_args);
    add_collision(sweep_cmd, sweep_args);
    sweep_cmd->add_option("--axis", sweep.axis, "dt | phi | alpha")->capture_default_str();
    sweep_cmd->add_option("--values", sweep.values, "axis grid points")->expected(-1);

    CommonArgs proto_args;
    pcl::ProtocolSpec proto;
    double proto_alpha = -1, proto_phi = -10;
    auto* proto_cmd = app.add_subcommand("protocol", "solve parameters for a target temperature and run");
    add_common(proto_cmd, proto_args);
    add_collision(proto_cmd, proto_args);
    proto_cmd->add_option("--target", proto.t_target, "target temperature")->required();
    proto_cmd->add_option("--fix-alpha", proto_alpha, "hold alpha, solve phi");
    proto_cmd->add_option("--fix-phi", proto_phi, "hold phi, solve alpha");

    CommonArgs fig_args;
    std::string fig_kind;
    auto* fig_cmd = app.add_subcommand("figure", "canned figure-style experiments");
    add_common(fig_cmd, fig_args);
    fig_cmd->add_option("kind", fig_kind, "fig3 | fig4 | fig5")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        pcl::CommandResult res;
        if (*land_cmd) {
            res = pcl::cmd_landscape(land, land_args.opts);
        } else if (*traj_cmd) {
            res = pcl::cmd_trajectory(build_config(traj_args), traj_args.opts);
        } else if (*ndt_cmd) {
            auto cfg = build_config(ndt_args);
            ndt_noise.target = pcl::NoiseSpec::Target::dt;
            if (ndt_noise.mean == 0.4 && cfg.dt != 0.4) ndt_noise.mean = cfg.dt;
            cfg.noise = ndt_noise;
            res = pcl::cmd_noisy(cfg, ndt_args.opts);
        } else if (*nphi_cmd) {
            auto cfg = build_config(nphi_args);
            nphi_noise.target = pcl::NoiseSpec::Target::phi;
            nphi_noise.mean = cfg.params.phi;
            cfg.noise = nphi_noise;
            res = pcl::cmd_noisy(cfg, nphi_args.opts);
        } else if (*gauss_cmd) {
            res = pcl::cmd_gaussian(gauss, gauss_args.opts);
        } else if (*sweep_cmd) {
            res = pcl::cmd_sweep(build_config(sweep_args), sweep, sweep_args.opts);
        } else if (*proto_cmd) {
            if (proto_alpha >= 0) {
                proto.fixed_alpha = proto_alpha;
                proto.fixed_phi.reset();
            } else if (proto_phi > -9) {
                proto.fixed_phi = proto_phi;
                proto.fixed_alpha.reset();
            }
            proto.dt = proto_args.cfg.dt;
            proto.n_steps = proto_args.cfg.n_steps;
            pcl::CollisionConfig base = proto_args.cfg;
            base.seed = proto_args.opts.seed;
            res = pcl::cmd_protocol(proto, base, proto_args.opts);
        } else if (*fig_cmd) {
            res = pcl::cmd_figure(fig_kind, fig_args.opts);
        }
        std::cout << res.summary << "\n";
        for (const auto& a : res.artifacts) std::cout << "  " << a.string() << "\n";
        return 0;
    } catch (const pcl::LeakageError& e) {
        std::cerr << "leakage abort: " << e.what() << "\n";
        return 3;
    } catch (const pcl::ValidationError& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
