#include "pcl/evolution.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numbers>
#include <thread>
#include <unsupported/Eigen/KroneckerProduct>

namespace pcl {

namespace {

CavityState checked(Matrix rho, const HilbertSpec& space, int modes, double threshold) {
    CavityState st{std::move(rho), space, modes};
    double leak = leakage(st);
    if (leak > threshold)
        throw LeakageError("collision aborted: truncation leakage " + std::to_string(leak) +
                           " exceeds threshold " + std::to_string(threshold));
    return st;
}

}  // namespace

CavityState collide_single(const CavityState& state, const KrausSet& set,
                           double leakage_threshold) {
    if (state.mode_count != 1 || set.mode_count != 1 || !(state.space == set.space))
        throw ValidationError("collide_single: state/set space mismatch");
    return checked(apply_kraus(set, state.matrix), state.space, 1, leakage_threshold);
}

CavityState collide_cascade(const CavityState& state, const KrausSet& set,
                            double leakage_threshold) {
    if (state.mode_count != 2 || set.mode_count != 2 || !(state.space == set.space))
        throw ValidationError("collide_cascade: state/set space mismatch");
    return checked(apply_kraus(set, state.matrix), state.space, 2, leakage_threshold);
}

std::pair<CavityState, AncillaState> collide_via_unitary(const CavityState& state,
                                                         const AncillaState& ancilla,
                                                         double theta) {
    if (state.mode_count != 1)
        throw ValidationError("collide_via_unitary: one-mode states only");
    const int d = state.space.cutoff;
    if (d > 64) throw ValidationError("collide_via_unitary: dimension too large for the dense path");
    Matrix u = evolution_block(theta, state.space).assemble();
    Matrix joint = Eigen::kroneckerProduct(ancilla.matrix, state.matrix);
    joint = u * joint * u.adjoint();

    Matrix cavity = Matrix::Zero(d, d);
    AncillaState post;
    for (int i = 0; i < 3; ++i) {
        cavity += joint.block(i * d, i * d, d, d);
        for (int j = 0; j < 3; ++j) post.matrix(i, j) = joint.block(i * d, j * d, d, d).trace();
    }
    return {CavityState{std::move(cavity), state.space, 1}, post};
}

std::pair<CavityState, AncillaState> collide_cascade_via_unitary(const CavityState& state,
                                                                 const AncillaState& ancilla,
                                                                 double theta) {
    if (state.mode_count != 2)
        throw ValidationError("collide_cascade_via_unitary: two-mode states only");
    const int d = state.space.cutoff;
    if (d > 16)
        throw ValidationError("collide_cascade_via_unitary: dimension too large for the dense path");
    BlockUnitary blk = evolution_block(theta, state.space);
    const int dd = d * d;
    const Matrix id = Matrix::Identity(d, d);
    // joint ordering: ancilla (x) mode1 (x) mode2
    Matrix u1 = Matrix::Zero(3 * dd, 3 * dd), u2 = u1;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            u1.block(i * dd, j * dd, dd, dd) = Eigen::kroneckerProduct(blk.blocks[i][j], id);
            u2.block(i * dd, j * dd, dd, dd) = Eigen::kroneckerProduct(id, blk.blocks[i][j]);
        }
    Matrix joint = Eigen::kroneckerProduct(ancilla.matrix, state.matrix);
    Matrix u = u2 * u1;
    joint = u * joint * u.adjoint();

    Matrix cavity = Matrix::Zero(dd, dd);
    AncillaState post;
    for (int i = 0; i < 3; ++i) {
        cavity += joint.block(i * dd, i * dd, dd, dd);
        for (int j = 0; j < 3; ++j) post.matrix(i, j) = joint.block(i * dd, j * dd, dd, dd).trace();
    }
    return {CavityState{std::move(cavity), state.space, 2}, post};
}

CavityState steady_state_analytic(const PhaseoniumParams& params, const HilbertSpec& space) {
    const double ga = params.gamma_alpha();
    const double gb = params.gamma_beta();
    if (ga > 0 && (gb <= 0 || ga / gb >= 1.0))
        throw ValidationError("steady_state_analytic: gamma_alpha/gamma_beta >= 1, no steady state");
    const double ratio = ga > 0 ? ga / gb : 0.0;
    const int d = space.cutoff;
    Eigen::VectorXd p(d);
    double w = 1.0;
    for (int n = 0; n < d; ++n, w *= ratio) p(n) = w;
    p /= p.sum();
    CavityState st{Matrix::Zero(d, d), space, 1};
    st.matrix.diagonal() = p.cast<Complex>();
    return st;
}

namespace {

TrajectoryPoint observe(int step, const CavityState& st) {
    TrajectoryPoint pt;
    pt.step = step;
    pt.purity = purity(st);
    pt.leakage = leakage(st);
    const int d = st.space.cutoff;
    if (st.mode_count == 1) {
        pt.n1 = mean_photon_number(st);
        pt.t1 = effective_temperature_from_n(pt.n1);
        pt.n2 = 0.0;
        pt.t2 = 0.0;
    } else {
        pt.n1 = pt.n2 = 0.0;
        for (int n = 0; n < d; ++n)
            for (int m = 0; m < d; ++m) {
                double pop = std::real(st.matrix(n * d + m, n * d + m));
                pt.n1 += n * pop;
                pt.n2 += m * pop;
            }
        pt.t1 = effective_temperature_from_n(pt.n1);
        pt.t2 = effective_temperature_from_n(pt.n2);
    }
    return pt;
}

CavityState initial_state(const CollisionConfig& cfg) {
    CavityState s1 = thermal_state(cfg.initial_t1, cfg.space);
    if (cfg.mode_count == 1) return s1;
    CavityState s2 = thermal_state(cfg.initial_t2, cfg.space);
    Matrix joint = Eigen::kroneckerProduct(s1.matrix, s2.matrix);
    return CavityState{std::move(joint), cfg.space, 2};
}

// The stream is null for deterministic runs.
TrajectoryRecord run_one(const CollisionConfig& cfg, GaussianStream* stream) {
    if (cfg.dt <= 0) throw ValidationError("run_trajectory: dt must be > 0");
    if (cfg.n_steps < 1) throw ValidationError("run_trajectory: n_steps must be >= 1");

    TrajectoryRecord rec;
    rec.target_temperature =
        cfg.params.gamma_alpha() == 0.0 ? 0.0 : steady_temperature(cfg.params);

    CavityState state = initial_state(cfg);
    rec.points.reserve(cfg.n_steps + 1);
    rec.points.push_back(observe(0, state));

    const bool noisy = cfg.noise.has_value() && stream != nullptr && cfg.noise->sigma > 0;
    const bool noisy_dt = noisy && cfg.noise->target == NoiseSpec::Target::dt;
    const bool noisy_phi = noisy && cfg.noise->target == NoiseSpec::Target::phi;

    std::optional<KrausSet> fixed_set;
    std::optional<KrausTemplate> tpl;  // reused across steps for phi-noise
    if (!noisy_dt) {
        tpl = cfg.mode_count == 1 ? kraus_single_template(cfg.theta(), cfg.space)
                                  : kraus_cascade_template(cfg.theta(), cfg.space);
        if (!noisy_phi) fixed_set = kraus_from_template(*tpl, cfg.params);
    }

    int in_band_since = -1;  // first step of the current in-tolerance streak
    for (int k = 1; k <= cfg.n_steps; ++k) {
        const KrausSet* set = nullptr;
        KrausSet step_set;
        if (noisy_dt) {
            double dt_k = stream->next_truncated(cfg.noise->mean, cfg.noise->sigma,
                                                 cfg.noise->lower, cfg.noise->upper);
            step_set = cfg.mode_count == 1
                           ? kraus_single(cfg.params, cfg.omega * dt_k, cfg.space)
                           : kraus_cascade(cfg.params, cfg.omega * dt_k, cfg.space);
            set = &step_set;
        } else if (noisy_phi) {
            double phi_k = stream->next_truncated(cfg.noise->mean, cfg.noise->sigma,
                                                  cfg.noise->lower, cfg.noise->upper);
            PhaseoniumParams pk = cfg.params;
            pk.phi = phi_k;
            step_set = kraus_from_template(*tpl, pk);
            set = &step_set;
        } else {
            set = &*fixed_set;
        }

        state = cfg.mode_count == 1 ? collide_single(state, *set, cfg.leakage_threshold)
                                    : collide_cascade(state, *set, cfg.leakage_threshold);
        TrajectoryPoint pt = observe(k, state);
        rec.points.push_back(pt);

        if (!rec.converged_at) {
            bool in_band = std::abs(pt.t1 - rec.target_temperature) < cfg.convergence_tol &&
                           (cfg.mode_count == 1 ||
                            std::abs(pt.t2 - rec.target_temperature) < cfg.convergence_tol);
            if (!in_band) {
                in_band_since = -1;
            } else if (in_band_since < 0) {
                in_band_since = k;
            }
            if (in_band_since >= 0 && k - in_band_since + 1 >= cfg.convergence_window) {
                rec.converged_at = in_band_since;
                if (cfg.early_exit) break;
            }
        }
    }
    rec.final_state = std::move(state);
    return rec;
}

}  // namespace

TrajectoryRecord run_trajectory(const CollisionConfig& cfg) {
    if (cfg.noise && cfg.noise->sigma > 0) {
        GaussianStream stream(cfg.seed, 0);
        return run_one(cfg, &stream);
    }
    return run_one(cfg, nullptr);
}

EnsembleRecord run_stochastic_ensemble(const CollisionConfig& cfg, int jobs) {
    if (!cfg.noise) throw ValidationError("run_stochastic_ensemble: noise spec required");
    const int n_runs = cfg.noise->n_runs;
    if (n_runs < 1) throw ValidationError("run_stochastic_ensemble: n_runs must be >= 1");

    EnsembleRecord rec;
    rec.runs.resize(n_runs);
    CollisionConfig member = cfg;
    member.early_exit = false;  // uniform length keeps per-step statistics simple

    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&]() {
        for (int i = next.fetch_add(1); i < n_runs; i = next.fetch_add(1)) {
            try {
                GaussianStream stream(cfg.seed, static_cast<std::uint64_t>(i));
                rec.runs[i] = run_one(member, &stream);
            } catch (...) {
                std::scoped_lock lk(error_mutex);
                if (!error) error = std::current_exception();
            }
        }
    };
    jobs = std::max(1, std::min(jobs, n_runs));
    std::vector<std::thread> pool;
    for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);

    const int n_pts = static_cast<int>(rec.runs.front().points.size());
    rec.stats.resize(n_pts);
    for (int k = 0; k < n_pts; ++k) {
        EnsembleStepStats& s = rec.stats[k];
        s.step = k;
        double m1 = 0, m2 = 0, q1 = 0, q2 = 0;
        for (const auto& run : rec.runs) {
            m1 += run.points[k].t1;
            m2 += run.points[k].t2;
        }
        m1 /= n_runs;
        m2 /= n_runs;
        for (const auto& run : rec.runs) {
            q1 += (run.points[k].t1 - m1) * (run.points[k].t1 - m1);
            q2 += (run.points[k].t2 - m2) * (run.points[k].t2 - m2);
        }
        s.t1_mean = m1;
        s.t2_mean = m2;
        s.t1_std = n_runs > 1 ? std::sqrt(q1 / (n_runs - 1)) : 0.0;
        s.t2_std = n_runs > 1 ? std::sqrt(q2 / (n_runs - 1)) : 0.0;
    }

    const int tail = std::min(rec.trailing_window, n_pts);
    std::vector<double> tails1, tails2;
    for (const auto& run : rec.runs) {
        double a = 0, b = 0;
        for (int k = n_pts - tail; k < n_pts; ++k) {
            a += run.points[k].t1;
            b += run.points[k].t2;
        }
        tails1.push_back(a / tail);
        tails2.push_back(b / tail);
    }
    auto mean_std = [&](const std::vector<double>& v, double& mean, double& sd) {
        mean = 0;
        for (double x : v) mean += x;
        mean /= v.size();
        double q = 0;
        for (double x : v) q += (x - mean) * (x - mean);
        sd = v.size() > 1 ? std::sqrt(q / (v.size() - 1)) : 0.0;
    };
    mean_std(tails1, rec.final_t1_mean, rec.final_t1_std);
    mean_std(tails2, rec.final_t2_mean, rec.final_t2_std);
    return rec;
}

ApparentTemperatureStats apparent_temperature_distribution(const PhaseoniumParams& params,
                                                           double sigma,
                                                           std::int64_t n_samples,
                                                           std::uint64_t seed) {
    if (sigma < 0) throw ValidationError("apparent_temperature_distribution: sigma must be >= 0");
    ApparentTemperatureStats st;
    std::vector<double> temps;
    temps.reserve(n_samples);
    GaussianStream stream(seed, 0);
    for (std::int64_t i = 0; i < n_samples; ++i) {
        double phi = sigma > 0 ? params.phi + sigma * stream.next() : params.phi;
        PhaseoniumParams pk = params;
        pk.phi = phi;
        if (std::abs(phi) >= std::numbers::pi - 1e-9 || !pk.has_steady_state()) {
            ++st.n_rejected;
            continue;
        }
        temps.push_back(steady_temperature(pk));
    }
    st.n_accepted = static_cast<std::int64_t>(temps.size());
    if (temps.empty()) return st;

    double mean = 0;
    for (double t : temps) mean += t;
    mean /= temps.size();
    double m2 = 0, m3 = 0;
    for (double t : temps) {
        double d = t - mean;
        m2 += d * d;
        m3 += d * d * d;
    }
    m2 /= temps.size();
    m3 /= temps.size();
    st.mean = mean;
    st.skewness = m2 > 0 ? m3 / std::pow(m2, 1.5) : 0.0;

    // histogram mode estimate; the right tail is heavy (T diverges as phi
    // approaches the stability boundary), so bin only up to the 95th percentile
    std::sort(temps.begin(), temps.end());
    double lo = temps.front();
    double hi = temps[static_cast<std::size_t>(0.95 * (temps.size() - 1))];
    const int bins = 200;
    std::vector<int> hist(bins, 0);
    double width = (hi - lo) / bins;
    if (width > 0) {
        for (double t : temps) {
            if (t > hi) break;  // sorted; tail samples stay out of the histogram
            int b = std::min(bins - 1, static_cast<int>((t - lo) / width));
            ++hist[b];
        }
        int best = static_cast<int>(std::max_element(hist.begin(), hist.end()) - hist.begin());
        st.mode_estimate = lo + (best + 0.5) * width;
    } else {
        st.mode_estimate = mean;
    }
    return st;
}

// --- deterministic Gaussian stream (splitmix64 seeding + xoshiro256**) ---

namespace {
std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
}  // namespace

GaussianStream::GaussianStream(std::uint64_t master_seed, std::uint64_t stream_index) {
    std::uint64_t s = master_seed * 0x9e3779b97f4a7c15ULL + stream_index + 1;
    for (auto& w : state_) w = splitmix64(s);
}

std::uint64_t GaussianStream::next_u64() {
    std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double GaussianStream::next() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // Box-Muller over explicit 53-bit uniforms in (0, 1]
    double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    double u2 = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

double GaussianStream::next_truncated(double mean, double sigma, double lo, double hi) {
    for (int tries = 0; tries < 10000; ++tries) {
        double x = mean + sigma * next();
        if (x >= lo && x <= hi) return x;
    }
    throw ValidationError("GaussianStream: truncation bounds reject nearly all samples");
}

}  // namespace pcl
