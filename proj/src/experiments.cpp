#include "pcl/experiments.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <mutex>
#include <numbers>
#include <thread>

namespace pcl {

namespace {

using nlohmann::json;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

std::string timestamp() {
    auto now = std::chrono::system_clock::now();
    auto t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

json config_json(const CollisionConfig& c) {
    json j{{"alpha", c.params.alpha},
           {"phi", c.params.phi},
           {"epsilon", c.params.epsilon},
           {"dt", c.dt},
           {"omega", c.omega},
           {"n_steps", c.n_steps},
           {"initial_t1", c.initial_t1},
           {"initial_t2", c.initial_t2},
           {"mode_count", c.mode_count},
           {"cutoff", c.space.cutoff},
           {"interior_margin", c.space.interior_margin},
           {"leakage_threshold", c.leakage_threshold},
           {"convergence_tol", c.convergence_tol},
           {"convergence_window", c.convergence_window},
           {"seed", c.seed}};
    if (c.noise) {
        j["noise"] = {{"target", c.noise->target == NoiseSpec::Target::dt ? "dt" : "phi"},
                      {"mean", c.noise->mean},
                      {"sigma", c.noise->sigma},
                      {"lower", c.noise->lower},
                      {"upper", c.noise->upper},
                      {"n_runs", c.noise->n_runs}};
    }
    return j;
}

void write_run_record(const std::filesystem::path& path, const json& config,
                      const json& summary) {
    json j{{"library_version", kLibraryVersion},
           {"timestamp", timestamp()},
           {"config", config},
           {"summary", summary}};
    write_file(path, j.dump(2) + "\n");
}

// minimal static SVG renderer; plots are derived artifacts, lossless from CSV
std::string svg_lines(const std::vector<std::pair<std::string, std::vector<double>>>& series,
                      const std::string& title) {
    const int w = 640, h = 420, ml = 60, mb = 40, mt = 30, mr = 20;
    double ymin = 1e300, ymax = -1e300;
    size_t n = 0;
    for (const auto& [name, ys] : series) {
        n = std::max(n, ys.size());
        for (double y : ys) {
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    if (n < 2 || ymin > ymax) return "<svg xmlns='http://www.w3.org/2000/svg'/>";
    if (ymax - ymin < 1e-12) {
        ymax += 0.5;
        ymin -= 0.5;
    }
    const char* colors[] = {"#c0392b", "#2980b9", "#27ae60", "#8e44ad", "#e67e22", "#16a085"};
    std::string s = "<svg xmlns='http://www.w3.org/2000/svg' width='" + std::to_string(w) +
                    "' height='" + std::to_string(h) + "'>\n";
    s += "<rect width='100%' height='100%' fill='white'/>\n";
    s += "<text x='" + std::to_string(w / 2) + "' y='20' text-anchor='middle' font-size='14'>" +
         title + "</text>\n";
    s += "<line x1='" + std::to_string(ml) + "' y1='" + std::to_string(h - mb) + "' x2='" +
         std::to_string(w - mr) + "' y2='" + std::to_string(h - mb) + "' stroke='black'/>\n";
    s += "<line x1='" + std::to_string(ml) + "' y1='" + std::to_string(mt) + "' x2='" +
         std::to_string(ml) + "' y2='" + std::to_string(h - mb) + "' stroke='black'/>\n";
    s += "<text x='10' y='" + std::to_string(mt + 5) + "' font-size='11'>" + fmt(ymax) +
         "</text>\n<text x='10' y='" + std::to_string(h - mb) + "' font-size='11'>" + fmt(ymin) +
         "</text>\n";
    int ci = 0;
    for (const auto& [name, ys] : series) {
        std::string pts;
        for (size_t i = 0; i < ys.size(); ++i) {
            double x = ml + (w - ml - mr) * double(i) / double(n - 1);
            double y = (h - mb) - (h - mb - mt) * (ys[i] - ymin) / (ymax - ymin);
            pts += fmt(x) + "," + fmt(y) + " ";
        }
        const char* col = colors[ci % 6];
        s += "<polyline fill='none' stroke='" + std::string(col) + "' points='" + pts + "'/>\n";
        s += "<text x='" + std::to_string(w - mr - 150) + "' y='" + std::to_string(mt + 16 * (ci + 1)) +
             "' font-size='11' fill='" + col + "'>" + name + "</text>\n";
        ++ci;
    }
    return s + "</svg>\n";
}

std::string svg_heatmap(const std::vector<double>& alphas, const std::vector<double>& phis,
                        const std::vector<std::vector<double>>& t, const std::string& title) {
    const int cell = 8, ml = 50, mt = 30;
    const int w = ml + cell * int(alphas.size()) + 20;
    const int h = mt + cell * int(phis.size()) + 40;
    double tmax = 0;
    for (const auto& row : t)
        for (double v : row)
            if (std::isfinite(v)) tmax = std::max(tmax, v);
    if (tmax <= 0) tmax = 1;
    std::string s = "<svg xmlns='http://www.w3.org/2000/svg' width='" + std::to_string(w) +
                    "' height='" + std::to_string(h) + "'>\n<rect width='100%' height='100%' fill='white'/>\n";
    s += "<text x='" + std::to_string(w / 2) + "' y='20' text-anchor='middle' font-size='14'>" +
         title + "</text>\n";
    for (size_t i = 0; i < alphas.size(); ++i)
        for (size_t j = 0; j < phis.size(); ++j) {
            double v = t[i][j];
            std::string fill;
            if (!std::isfinite(v)) {
                fill = "#222222";
            } else {
                int r = int(255 * std::min(1.0, v / tmax));
                int b = 255 - r;
                char buf[8];
                std::snprintf(buf, sizeof(buf), "#%02x40%02x", r, b);
                fill = buf;
            }
            s += "<rect x='" + std::to_string(ml + cell * int(i)) + "' y='" +
                 std::to_string(mt + cell * int(j)) + "' width='" + std::to_string(cell) +
                 "' height='" + std::to_string(cell) + "' fill='" + fill + "'/>\n";
        }
    return s + "</svg>\n";
}

template <typename Fn>
void parallel_for(int n, int jobs, Fn&& body) {
    jobs = std::max(1, std::min(jobs, n));
    if (jobs == 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&]() {
        for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
            try {
                body(i);
            } catch (...) {
                std::scoped_lock lk(error_mutex);
                if (!error) error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

std::filesystem::path prepare_out(const ExperimentOptions& opts) {
    std::filesystem::create_directories(opts.out_dir);
    return opts.out_dir;
}

}  // namespace

int resolve_jobs(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("PCL_JOBS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? int(hc) : 1;
}

std::string trajectory_csv(const TrajectoryRecord& rec) {
    std::string s = "step,T1,T2,n1,n2,purity,leakage\n";
    for (const auto& p : rec.points)
        s += std::to_string(p.step) + "," + fmt(p.t1) + "," + fmt(p.t2) + "," + fmt(p.n1) + "," +
             fmt(p.n2) + "," + fmt(p.purity) + "," + fmt(p.leakage) + "\n";
    return s;
}

std::string ensemble_csv(const EnsembleRecord& rec) {
    std::string s = "run_id,step,T1,T2,n1,n2,purity,leakage\n";
    for (size_t r = 0; r < rec.runs.size(); ++r)
        for (const auto& p : rec.runs[r].points)
            s += std::to_string(r) + "," + std::to_string(p.step) + "," + fmt(p.t1) + "," +
                 fmt(p.t2) + "," + fmt(p.n1) + "," + fmt(p.n2) + "," + fmt(p.purity) + "," +
                 fmt(p.leakage) + "\n";
    // aggregate rows: per-step mean and std of the temperatures
    const int n_runs = int(rec.runs.size());
    for (const auto& st : rec.stats) {
        double n1 = 0, n2 = 0, pu = 0, lk = 0;
        for (const auto& run : rec.runs) {
            const auto& p = run.points[st.step];
            n1 += p.n1;
            n2 += p.n2;
            pu += p.purity;
            lk += p.leakage;
        }
        s += "mean," + std::to_string(st.step) + "," + fmt(st.t1_mean) + "," + fmt(st.t2_mean) +
             "," + fmt(n1 / n_runs) + "," + fmt(n2 / n_runs) + "," + fmt(pu / n_runs) + "," +
             fmt(lk / n_runs) + "\n";
        s += "std," + std::to_string(st.step) + "," + fmt(st.t1_std) + "," + fmt(st.t2_std) +
             ",0,0,0,0\n";
    }
    return s;
}

int steps_to_band(const TrajectoryRecord& rec, double target, double rel_band) {
    const double band = rel_band * std::abs(target);
    const bool two_mode = rec.final_state.mode_count == 2;
    int last_out = -1;
    for (const auto& p : rec.points) {
        bool in = std::abs(p.t1 - target) <= band;
        if (two_mode) in = in && std::abs(p.t2 - target) <= band;
        if (!in) last_out = p.step;
    }
    if (last_out < 0) return 0;
    if (last_out >= rec.points.back().step) return -1;
    return last_out + 1;
}

CommandResult cmd_landscape(const LandscapeSpec& spec, const ExperimentOptions& opts) {
    auto dir = prepare_out(opts);
    std::vector<double> alphas(spec.alpha_points), phis(spec.phi_points);
    for (int i = 0; i < spec.alpha_points; ++i)
        alphas[i] = spec.alpha_min +
                    (spec.alpha_max - spec.alpha_min) * i / std::max(1, spec.alpha_points - 1);
    for (int j = 0; j < spec.phi_points; ++j)
        phis[j] = spec.phi_min +
                  (spec.phi_max - spec.phi_min) * j / std::max(1, spec.phi_points - 1);

    std::vector<std::vector<double>> grid(alphas.size(),
                                          std::vector<double>(phis.size(), 0.0));
    std::string csv = "alpha,phi,T\n";
    int divergent = 0;
    for (size_t i = 0; i < alphas.size(); ++i)
        for (size_t j = 0; j < phis.size(); ++j) {
            double a = alphas[i], phi = phis[j];
            double ga = 2 * a * a, gb = (1 - a * a) * (1 + std::cos(phi));
            std::string cell;
            if (ga == 0.0) {
                grid[i][j] = 0.0;
                cell = "0";
            } else if (gb <= 0 || ga / gb >= 1.0) {
                grid[i][j] = std::numeric_limits<double>::infinity();
                cell = "inf";
                ++divergent;
            } else {
                grid[i][j] = -1.0 / std::log(ga / gb);
                cell = fmt(grid[i][j]);
            }
            csv += fmt(a) + "," + fmt(phi) + "," + cell + "\n";
        }

    CommandResult res;
    res.out_dir = dir;
    write_file(dir / "landscape.csv", csv);
    res.artifacts.push_back(dir / "landscape.csv");
    write_run_record(dir / "run.json",
                     json{{"kind", "landscape"},
                          {"alpha_min", spec.alpha_min},
                          {"alpha_max", spec.alpha_max},
                          {"alpha_points", spec.alpha_points},
                          {"phi_min", spec.phi_min},
                          {"phi_max", spec.phi_max},
                          {"phi_points", spec.phi_points},
                          {"seed", opts.seed}},
                     json{{"divergent_cells", divergent}});
    res.artifacts.push_back(dir / "run.json");
    if (opts.plot) {
        write_file(dir / "landscape.svg",
                   svg_heatmap(alphas, phis, grid, "steady-state temperature T(alpha, phi)"));
        res.artifacts.push_back(dir / "landscape.svg");
    }
    res.summary = "landscape " + std::to_string(alphas.size() * phis.size()) + " cells, " +
                  std::to_string(divergent) + " divergent";
    return res;
}

CommandResult cmd_trajectory(const CollisionConfig& config, const ExperimentOptions& opts) {
    auto dir = prepare_out(opts);
    CollisionConfig cfg = config;
    cfg.seed = opts.seed;
    TrajectoryRecord rec = run_trajectory(cfg);

    CommandResult res;
    res.out_dir = dir;
    write_file(dir / "trajectory.csv", trajectory_csv(rec));
    res.artifacts.push_back(dir / "trajectory.csv");
    json summary{{"target_temperature", rec.target_temperature},
                 {"final_t1", rec.points.back().t1},
                 {"final_t2", rec.points.back().t2},
                 {"steps", rec.points.back().step},
                 {"converged_at", rec.converged_at ? json(*rec.converged_at) : json(nullptr)}};
    write_run_record(dir / "run.json", config_json(cfg), summary);
    res.artifacts.push_back(dir / "run.json");
    if (opts.plot) {
        std::vector<double> t1s, t2s;
        for (const auto& p : rec.points) {
            t1s.push_back(p.t1);
            t2s.push_back(p.t2);
        }
        std::vector<std::pair<std::string, std::vector<double>>> series{{"T1", t1s}};
        if (cfg.mode_count == 2) series.push_back({"T2", t2s});
        write_file(dir / "trajectory.svg", svg_lines(series, "cavity temperature per collision"));
        res.artifacts.push_back(dir / "trajectory.svg");
    }
    res.summary = "trajectory final T1=" + fmt(rec.points.back().t1) +
                  " target=" + fmt(rec.target_temperature);
    return res;
}

CommandResult cmd_noisy(const CollisionConfig& config, const ExperimentOptions& opts) {
    if (!config.noise) throw ValidationError("cmd_noisy: noise spec required");
    auto dir = prepare_out(opts);
    CollisionConfig cfg = config;
    cfg.seed = opts.seed;
    EnsembleRecord rec = run_stochastic_ensemble(cfg, resolve_jobs(opts.jobs));

    // noiseless reference with the noise target pinned at its mean
    CollisionConfig ref = cfg;
    ref.noise.reset();
    if (config.noise->target == NoiseSpec::Target::dt)
        ref.dt = config.noise->mean;
    else
        ref.params.phi = config.noise->mean;
    ref.early_exit = false;
    TrajectoryRecord ref_rec = run_trajectory(ref);

    CommandResult res;
    res.out_dir = dir;
    write_file(dir / "ensemble.csv", ensemble_csv(rec));
    write_file(dir / "reference.csv", trajectory_csv(ref_rec));
    res.artifacts = {dir / "ensemble.csv", dir / "reference.csv"};
    json summary{{"final_t1_mean", rec.final_t1_mean},
                 {"final_t1_std", rec.final_t1_std},
                 {"final_t2_mean", rec.final_t2_mean},
                 {"final_t2_std", rec.final_t2_std},
                 {"reference_final_t1", ref_rec.points.back().t1},
                 {"target_temperature", ref_rec.target_temperature}};
    write_run_record(dir / "run.json", config_json(cfg), summary);
    res.artifacts.push_back(dir / "run.json");
    if (opts.plot) {
        std::vector<double> m1, m2, r1;
        for (const auto& s : rec.stats) {
            m1.push_back(s.t1_mean);
            m2.push_back(s.t2_mean);
        }
        for (const auto& p : ref_rec.points) r1.push_back(p.t1);
        write_file(dir / "ensemble.svg",
                   svg_lines({{"T1 mean", m1}, {"T2 mean", m2}, {"T1 reference", r1}},
                             "ensemble-mean temperature per collision"));
        res.artifacts.push_back(dir / "ensemble.svg");
    }
    res.summary = "ensemble final T1=" + fmt(rec.final_t1_mean) + "±" + fmt(rec.final_t1_std);
    return res;
}

CommandResult cmd_gaussian(const GaussianSpec& spec, const ExperimentOptions& opts) {
    auto dir = prepare_out(opts);
    LindbladGenerator gen =
        lindblad_generator(spec.gamma_alpha_prime, spec.gamma_beta_prime);
    CovarianceState vac;
    auto traj = propagate_covariance(vac, gen, spec.dt_step, spec.t_total);

    std::string csv =
        "t,n1,n2,s_q1q1,s_p1p1,s_q2q2,s_p2p2,s_q1q2,s_p1p2,mutual_information,log_negativity\n";
    for (size_t k = 0; k < traj.size(); ++k) {
        const auto& st = traj[k];
        GaussianMeasures gm = gaussian_measures(st);
        csv += fmt(k * spec.dt_step) + "," + fmt(mode_occupancy(st, 0)) + "," +
               fmt(mode_occupancy(st, 1)) + "," + fmt(st.sigma(0, 0)) + "," + fmt(st.sigma(1, 1)) +
               "," + fmt(st.sigma(2, 2)) + "," + fmt(st.sigma(3, 3)) + "," + fmt(st.sigma(0, 2)) +
               "," + fmt(st.sigma(1, 3)) + "," + fmt(gm.mutual_information) + "," +
               fmt(gm.log_negativity) + "\n";
    }

    CommandResult res;
    res.out_dir = dir;
    write_file(dir / "gaussian.csv", csv);
    res.artifacts.push_back(dir / "gaussian.csv");

    json summary;
    if (gen.stable()) {
        CovarianceState steady = steady_covariance(gen);
        GaussianMeasures gm = gaussian_measures(steady);
        summary = {{"steady_n1", mode_occupancy(steady, 0)},
                   {"steady_n2", mode_occupancy(steady, 1)},
                   {"steady_mutual_information", gm.mutual_information},
                   {"steady_log_negativity", gm.log_negativity}};
    } else {
        summary = {{"steady", "unstable drift, no steady state"}};
    }
    write_run_record(dir / "run.json",
                     json{{"kind", "gaussian"},
                          {"gamma_alpha_prime", spec.gamma_alpha_prime},
                          {"gamma_beta_prime", spec.gamma_beta_prime},
                          {"dt_step", spec.dt_step},
                          {"t_total", spec.t_total}},
                     summary);
    res.artifacts.push_back(dir / "run.json");
    res.summary = "gaussian trajectory, " + std::to_string(traj.size()) + " points";
    return res;
}

CommandResult cmd_sweep(const CollisionConfig& base, const SweepSpec& spec,
                        const ExperimentOptions& opts) {
    if (spec.values.empty()) throw ValidationError("cmd_sweep: empty axis");
    if (spec.axis != "dt" && spec.axis != "phi" && spec.axis != "alpha")
        throw ValidationError("cmd_sweep: axis must be dt, phi or alpha");
    auto dir = prepare_out(opts);
    const int n = int(spec.values.size());
    struct Cell {
        double value = 0, converged_t = 0;
        int steps_to_converge = -1;
        std::string status = "ok";
    };
    std::vector<Cell> cells(n);
    parallel_for(n, resolve_jobs(opts.jobs), [&](int i) {
        Cell& c = cells[i];
        c.value = spec.values[i];
        try {
            CollisionConfig cfg = base;
            cfg.seed = opts.seed;
            if (spec.axis == "dt")
                cfg.dt = c.value;
            else if (spec.axis == "phi")
                cfg.params.phi = c.value;
            else
                cfg.params.alpha = c.value;
            TrajectoryRecord rec = run_trajectory(cfg);
            c.converged_t = rec.points.back().t1;
            c.steps_to_converge = steps_to_band(rec, rec.target_temperature);
        } catch (const std::exception& e) {
            c.status = e.what();
        }
    });

    std::string csv = "axis_value,converged_T,steps_to_converge,status\n";
    for (const auto& c : cells)
        csv += fmt(c.value) + "," + fmt(c.converged_t) + "," +
               std::to_string(c.steps_to_converge) + "," +
               (c.status == "ok" ? "ok" : "error") + "\n";
    CommandResult res;
    res.out_dir = dir;
    write_file(dir / "sweep.csv", csv);
    res.artifacts.push_back(dir / "sweep.csv");
    json cells_json = json::array();
    for (const auto& c : cells)
        cells_json.push_back({{"value", c.value},
                              {"converged_T", c.converged_t},
                              {"steps_to_converge", c.steps_to_converge},
                              {"status", c.status}});
    write_run_record(dir / "run.json",
                     json{{"kind", "sweep"}, {"axis", spec.axis}, {"base", config_json(base)}},
                     json{{"cells", cells_json}});
    res.artifacts.push_back(dir / "run.json");
    res.summary = "sweep over " + spec.axis + ", " + std::to_string(n) + " cells";
    return res;
}

CommandResult cmd_protocol(const ProtocolSpec& spec, const CollisionConfig& base,
                           const ExperimentOptions& opts) {
    CollisionConfig cfg = base;
    cfg.dt = spec.dt;
    cfg.n_steps = spec.n_steps;
    if (spec.fixed_phi && spec.fixed_alpha)
        throw ValidationError("cmd_protocol: fix exactly one of alpha, phi");
    if (spec.fixed_phi) {
        cfg.params = PhaseoniumParams(solve_alpha(spec.t_target, *spec.fixed_phi), *spec.fixed_phi);
    } else if (spec.fixed_alpha) {
        cfg.params = PhaseoniumParams(*spec.fixed_alpha, solve_phi(spec.t_target, *spec.fixed_alpha));
    } else {
        throw ValidationError("cmd_protocol: fix exactly one of alpha, phi");
    }

    CommandResult res = cmd_trajectory(cfg, opts);
    res.summary = "protocol target=" + fmt(spec.t_target) + " alpha=" + fmt(cfg.params.alpha) +
                  " phi=" + fmt(cfg.params.phi) + "; " + res.summary;
    return res;
}

CommandResult cmd_figure(const std::string& kind, const ExperimentOptions& opts) {
    auto dir = prepare_out(opts);
    CommandResult res;
    res.out_dir = dir;

    CollisionConfig base;
    base.mode_count = 2;
    base.space = HilbertSpec{20, 2};
    base.leakage_threshold = 1e-4;
    base.initial_t1 = base.initial_t2 = 1.0;
    base.early_exit = false;

    const double phi_hot = 2.404315987;   // T = 1.5 at alpha = 0.25
    const double phi_cold = 1.585618861;  // T = 0.5 at alpha = 0.25

    if (kind == "fig3") {
        const std::vector<double> dts{0.1, 0.6, 1.25};
        std::vector<TrajectoryRecord> hot(dts.size()), cold(dts.size());
        parallel_for(int(dts.size()) * 2, resolve_jobs(opts.jobs), [&](int i) {
            CollisionConfig cfg = base;
            cfg.dt = dts[i / 2];
            cfg.n_steps = 3000;
            cfg.params = PhaseoniumParams(0.25, i % 2 == 0 ? phi_hot : phi_cold);
            (i % 2 == 0 ? hot : cold)[i / 2] = run_trajectory(cfg);
        });
        // panel = (dt, cavity); each carries a heating and a cooling curve
        for (size_t d = 0; d < dts.size(); ++d)
            for (int cav = 1; cav <= 2; ++cav) {
                std::string csv = "step,T_heating,T_cooling\n";
                size_t npts = std::min(hot[d].points.size(), cold[d].points.size());
                std::vector<double> th, tc;
                for (size_t k = 0; k < npts; ++k) {
                    double a = cav == 1 ? hot[d].points[k].t1 : hot[d].points[k].t2;
                    double b = cav == 1 ? cold[d].points[k].t1 : cold[d].points[k].t2;
                    csv += std::to_string(k) + "," + fmt(a) + "," + fmt(b) + "\n";
                    th.push_back(a);
                    tc.push_back(b);
                }
                std::string stem = "fig3_dt" + fmt(dts[d]) + "_cavity" + std::to_string(cav);
                write_file(dir / (stem + ".csv"), csv);
                res.artifacts.push_back(dir / (stem + ".csv"));
                if (opts.plot) {
                    write_file(dir / (stem + ".svg"),
                               svg_lines({{"heating", th}, {"cooling", tc}},
                                         "cavity " + std::to_string(cav) + ", dt=" + fmt(dts[d])));
                    res.artifacts.push_back(dir / (stem + ".svg"));
                }
            }
        write_run_record(dir / "run.json", json{{"kind", "fig3"}, {"seed", opts.seed}},
                         json{{"panels", 6}});
        res.artifacts.push_back(dir / "run.json");
        res.summary = "fig3: 6 panels";
        return res;
    }

    if (kind == "fig4") {
        // interaction-time noise around dt = 0.4 at phi = pi/2
        for (auto [label, t_target] : {std::pair{"hot", 1.5}, std::pair{"cold", 0.5}}) {
            CollisionConfig cfg = base;
            cfg.n_steps = 1500;
            cfg.dt = 0.4;
            cfg.params = PhaseoniumParams(solve_alpha(t_target, std::numbers::pi / 2),
                                          std::numbers::pi / 2);
            cfg.noise = NoiseSpec{NoiseSpec::Target::dt, 0.4, 0.2, 0.02, 1e9, 10};
            ExperimentOptions sub = opts;
            sub.out_dir = dir / (std::string("fig4_") + label);
            CommandResult part = cmd_noisy(cfg, sub);
            res.artifacts.insert(res.artifacts.end(), part.artifacts.begin(),
                                 part.artifacts.end());
        }
        write_run_record(dir / "run.json", json{{"kind", "fig4"}, {"seed", opts.seed}},
                         json{{"branches", 2}});
        res.artifacts.push_back(dir / "run.json");
        res.summary = "fig4: dt-noise ensembles";
        return res;
    }

    if (kind == "fig5") {
        // coherence-phase noise around phi* = 2.404315987, two initial temperatures
        for (auto [label, t0] : {std::pair{"from1", 1.0}, std::pair{"from2", 2.0}}) {
            CollisionConfig cfg = base;
            cfg.n_steps = 3000;
            cfg.dt = 0.2;
            cfg.initial_t1 = cfg.initial_t2 = t0;
            cfg.params = PhaseoniumParams(0.25, phi_hot);
            cfg.noise = NoiseSpec{NoiseSpec::Target::phi, phi_hot, 0.2,
                                  -(std::numbers::pi - 0.05), std::numbers::pi - 0.05, 10};
            ExperimentOptions sub = opts;
            sub.out_dir = dir / (std::string("fig5_") + label);
            CommandResult part = cmd_noisy(cfg, sub);
            res.artifacts.insert(res.artifacts.end(), part.artifacts.begin(),
                                 part.artifacts.end());
        }
        write_run_record(dir / "run.json", json{{"kind", "fig5"}, {"seed", opts.seed}},
                         json{{"branches", 2}});
        res.artifacts.push_back(dir / "run.json");
        res.summary = "fig5: phi-noise ensembles";
        return res;
    }

    throw ValidationError("cmd_figure: kind must be fig3, fig4 or fig5");
}

}  // namespace pcl
