#include "pcl/gaussian.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <unsupported/Eigen/KroneckerProduct>

namespace pcl {

Matrix4 symplectic_form() {
    Matrix4 omega = Matrix4::Zero();
    omega(0, 1) = 1;
    omega(1, 0) = -1;
    omega(2, 3) = 1;
    omega(3, 2) = -1;
    return omega;
}

bool LindbladGenerator::stable() const {
    Eigen::EigenSolver<Matrix4> es(drift);
    return es.eigenvalues().real().maxCoeff() < 0;
}

double CovarianceState::uncertainty_violation() const {
    Eigen::Matrix4cd m = sigma.cast<Complex>() +
                         Complex(0.0, 0.5) * symplectic_form().cast<Complex>();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(m, Eigen::EigenvaluesOnly);
    return std::max(0.0, -es.eigenvalues().minCoeff());
}

LindbladGenerator lindblad_generator(double ga, double gb) {
    if (ga < 0 || gb < 0) throw ValidationError("lindblad_generator: rates must be >= 0");
    LindbladGenerator gen;
    gen.gamma_alpha_prime = ga;
    gen.gamma_beta_prime = gb;
    // First moments: d<a>/dt = -g<a>, d<b>/dt = -g<b> - 2g<a>, g = (gb-ga)/2;
    // the cascade H_eff cancels the symmetric mode-2 -> mode-1 backaction.
    const double g = (gb - ga) / 2.0;
    gen.drift = Matrix4::Zero();
    gen.drift(0, 0) = gen.drift(1, 1) = gen.drift(2, 2) = gen.drift(3, 3) = -g;
    gen.drift(2, 0) = gen.drift(3, 1) = -2.0 * g;
    // Dif = Omega Re(sum c c^dag) Omega^T for the collective jump vectors
    const double w = (ga + gb) / 2.0;
    gen.diffusion = Matrix4::Zero();
    for (int i = 0; i < 4; ++i) gen.diffusion(i, i) = w;
    gen.diffusion(0, 2) = gen.diffusion(2, 0) = w;
    gen.diffusion(1, 3) = gen.diffusion(3, 1) = w;
    return gen;
}

std::vector<CovarianceState> propagate_covariance(const CovarianceState& initial,
                                                  const LindbladGenerator& gen,
                                                  double dt_step, double t_total) {
    if (dt_step <= 0 || t_total < 0) throw ValidationError("propagate_covariance: bad time step");
    const Matrix4& a = gen.drift;
    auto dsigma = [&](const Matrix4& s) -> Matrix4 {
        return a * s + s * a.transpose() + gen.diffusion;
    };
    const int n = static_cast<int>(std::round(t_total / dt_step));
    std::vector<CovarianceState> traj;
    traj.reserve(n + 1);
    traj.push_back(initial);
    CovarianceState cur = initial;
    for (int k = 0; k < n; ++k) {
        Matrix4 k1 = dsigma(cur.sigma);
        Matrix4 k2 = dsigma(cur.sigma + 0.5 * dt_step * k1);
        Matrix4 k3 = dsigma(cur.sigma + 0.5 * dt_step * k2);
        Matrix4 k4 = dsigma(cur.sigma + dt_step * k3);
        cur.sigma += dt_step / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
        cur.sigma = 0.5 * (cur.sigma + cur.sigma.transpose()).eval();

        Vector4 m1 = a * cur.mean;  // exact enough at RK4 order for linear drift
        Vector4 m2 = a * (cur.mean + 0.5 * dt_step * m1);
        Vector4 m3 = a * (cur.mean + 0.5 * dt_step * m2);
        Vector4 m4 = a * (cur.mean + dt_step * m3);
        cur.mean += dt_step / 6.0 * (m1 + 2 * m2 + 2 * m3 + m4);

        if (cur.uncertainty_violation() > 1e-9)
            throw ValidationError("propagate_covariance: uncertainty relation violated, dt_step too large");
        traj.push_back(cur);
    }
    return traj;
}

CovarianceState steady_covariance(const LindbladGenerator& gen) {
    if (!gen.stable())
        throw ValidationError("steady_covariance: drift unstable, no steady state");
    const Matrix4 id = Matrix4::Identity();
    Eigen::Matrix<double, 16, 16> lhs =
        Eigen::kroneckerProduct(id, gen.drift) + Eigen::kroneckerProduct(gen.drift, id);
    Eigen::Matrix<double, 16, 1> rhs;
    // column-major vec(Dif); solve (I (x) A + A (x) I) vec(Sigma) = -vec(Dif)
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i) rhs(j * 4 + i) = -gen.diffusion(i, j);
    Eigen::Matrix<double, 16, 1> x = lhs.fullPivLu().solve(rhs);
    CovarianceState st;
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i) st.sigma(i, j) = x(j * 4 + i);
    st.sigma = 0.5 * (st.sigma + st.sigma.transpose()).eval();
    st.mean.setZero();
    return st;
}

namespace {

// positive symplectic eigenvalues of a 4x4 covariance
std::array<double, 2> symplectic_eigenvalues(const Matrix4& sigma) {
    Eigen::Matrix4cd m = Complex(0.0, 1.0) * symplectic_form().cast<Complex>() *
                         sigma.cast<Complex>();
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(m);
    std::array<double, 4> vals;
    for (int i = 0; i < 4; ++i) vals[i] = es.eigenvalues()(i).real();
    std::sort(vals.begin(), vals.end());
    return {vals[2], vals[3]};
}

double entropy_of_nu(double nu) {
    // vacuum convention nu = 1/2; thermal nu = n + 1/2
    double np = nu + 0.5, nm = nu - 0.5;
    double s = np * std::log(np);
    if (nm > 1e-15) s -= nm * std::log(nm);
    return s;
}

double single_mode_nu(const Matrix4& sigma, int mode) {
    Eigen::Matrix2d blk = sigma.block<2, 2>(2 * mode, 2 * mode);
    return std::sqrt(std::max(0.0, blk.determinant()));
}

}  // namespace

double mode_occupancy(const CovarianceState& st, int mode) {
    return (st.sigma(2 * mode, 2 * mode) + st.sigma(2 * mode + 1, 2 * mode + 1) - 1.0) / 2.0;
}

GaussianMeasures gaussian_measures(const CovarianceState& st) {
    constexpr double tol = 1e-9;
    auto [nu1, nu2] = symplectic_eigenvalues(st.sigma);
    if (nu1 < 0.5 - tol || nu2 < 0.5 - tol)
        throw ValidationError("gaussian_measures: symplectic eigenvalue below vacuum, invalid state");
    GaussianMeasures gm;
    double det = st.sigma.determinant();
    gm.purity = 1.0 / (4.0 * std::sqrt(std::max(det, 1e-300)));
    gm.entropy_total = entropy_of_nu(std::max(nu1, 0.5)) + entropy_of_nu(std::max(nu2, 0.5));
    gm.entropy_mode1 = entropy_of_nu(std::max(single_mode_nu(st.sigma, 0), 0.5));
    gm.entropy_mode2 = entropy_of_nu(std::max(single_mode_nu(st.sigma, 1), 0.5));
    gm.mutual_information = std::max(0.0, gm.entropy_mode1 + gm.entropy_mode2 - gm.entropy_total);

    // partial transpose on mode 2 flips the sign of p2
    Matrix4 flip = Matrix4::Identity();
    flip(3, 3) = -1;
    auto [nt1, nt2] = symplectic_eigenvalues(flip * st.sigma * flip);
    double nu_min = std::min(nt1, nt2);
    gm.log_negativity = std::max(0.0, -std::log(2.0 * nu_min));
    return gm;
}

Matrix dual_step(const Matrix& observable, const KrausSet& set) {
    if (observable.rows() != set.dim())
        throw ValidationError("dual_step: observable/set dimension mismatch");
    return apply_kraus_dual(set, observable);
}

}  // namespace pcl
