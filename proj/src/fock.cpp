#include "pcl/fock.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace pcl {

bool CavityState::valid(double* worst) const {
    double tr_err = std::abs(matrix.trace() - Complex(1.0, 0.0));
    double herm_err = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (matrix + matrix.adjoint()),
                                             Eigen::EigenvaluesOnly);
    double min_eig = es.eigenvalues().minCoeff();
    if (worst) *worst = std::max({tr_err, herm_err, -min_eig});
    return tr_err < 1e-12 && herm_err < 1e-12 && min_eig >= -1e-10;
}

Matrix annihilation(const HilbertSpec& space) {
    const int d = space.cutoff;
    Matrix a = Matrix::Zero(d, d);
    for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(double(n));
    return a;
}

Matrix creation(const HilbertSpec& space) { return annihilation(space).adjoint(); }

Matrix number_operator(const HilbertSpec& space) {
    const int d = space.cutoff;
    Matrix n = Matrix::Zero(d, d);
    for (int k = 0; k < d; ++k) n(k, k) = double(k);
    return n;
}

PhotonicOps photonic_ops(double theta, const HilbertSpec& space) {
    if (!std::isfinite(theta)) throw ValidationError("photonic_ops: theta must be finite");
    const int d = space.cutoff;
    PhotonicOps ops;
    ops.C = Matrix::Zero(d, d);
    ops.Cprime = Matrix::Zero(d, d);
    ops.S = Matrix::Zero(d, d);
    // a a^dag has spectrum n+1 on |n>, a^dag a has spectrum n.
    for (int n = 0; n < d; ++n) {
        ops.C(n, n) = std::cos(theta * std::sqrt(2.0 * (n + 1)));
        ops.Cprime(n, n) = std::cos(theta * std::sqrt(2.0 * n));
    }
    // <n+1| S |n> = sin(theta sqrt(2(n+1))) / sqrt(2); the sinc ratio is
    // evaluated on the spectrum, finite at zero argument by its limit.
    for (int n = 0; n + 1 < d; ++n)
        ops.S(n + 1, n) = std::sin(theta * std::sqrt(2.0 * (n + 1))) / std::sqrt(2.0);
    return ops;
}

CavityState thermal_state(double temperature, const HilbertSpec& space) {
    if (temperature < 0) throw ValidationError("thermal_state: negative temperature");
    const int d = space.cutoff;
    Eigen::VectorXd p = Eigen::VectorXd::Zero(d);
    if (temperature == 0.0) {
        p(0) = 1.0;
    } else {
        for (int n = 0; n < d; ++n) p(n) = std::exp(-double(n) / temperature);
        p /= p.sum();
    }
    CavityState st{Matrix::Zero(d, d), space, 1};
    st.matrix.diagonal() = p.cast<Complex>();
    return st;
}

double mean_photon_number(const CavityState& state) {
    const int d = state.space.cutoff;
    double n_mean = 0.0;
    if (state.mode_count == 1) {
        for (int n = 0; n < d; ++n) n_mean += n * std::real(state.matrix(n, n));
    } else {
        for (int n = 0; n < d; ++n)
            for (int m = 0; m < d; ++m)
                n_mean += n * std::real(state.matrix(n * d + m, n * d + m));
    }
    return n_mean;
}

double effective_temperature_from_n(double mean_n) {
    if (mean_n <= 0.0) return 0.0;
    return 1.0 / std::log1p(1.0 / mean_n);
}

double effective_temperature(const CavityState& state, double* thermal_diagnostic) {
    double n_mean = mean_photon_number(state);
    double t = effective_temperature_from_n(n_mean);
    if (thermal_diagnostic) {
        double p0 = std::real(state.matrix(0, 0));
        double p1 = state.dim() > 1 ? std::real(state.matrix(1, 1)) : 0.0;
        if (state.mode_count == 2) {
            Matrix r1 = partial_trace_mode2(state.matrix, state.space.cutoff);
            p0 = std::real(r1(0, 0));
            p1 = std::real(r1(1, 1));
        }
        double expected = t > 0 ? std::exp(-1.0 / t) : 0.0;
        *thermal_diagnostic = p0 > 0 ? std::abs(p1 / p0 - expected) : 0.0;
    }
    return t;
}

double leakage(const CavityState& state) {
    const int d = state.space.cutoff;
    const int m = state.space.interior_margin;
    double leak = 0.0;
    if (state.mode_count == 1) {
        for (int n = d - m; n < d; ++n) leak += std::real(state.matrix(n, n));
    } else {
        for (int n = 0; n < d; ++n)
            for (int k = 0; k < d; ++k)
                if (n >= d - m || k >= d - m)
                    leak += std::real(state.matrix(n * d + k, n * d + k));
    }
    return leak;
}

double purity(const CavityState& state) {
    return std::real((state.matrix * state.matrix).trace());
}

double trace_distance(const Matrix& a, const Matrix& b) {
    Matrix diff = a - b;
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (diff + diff.adjoint()),
                                             Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

Matrix partial_trace_mode2(const Matrix& rho, int d) {
    Matrix out = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) out(i, j) += rho(i * d + k, j * d + k);
    return out;
}

Matrix partial_trace_mode1(const Matrix& rho, int d) {
    Matrix out = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) out(i, j) += rho(k * d + i, k * d + j);
    return out;
}

}  // namespace pcl
