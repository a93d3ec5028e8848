#include "pcl/kraus.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <unsupported/Eigen/KroneckerProduct>

namespace pcl {

Matrix BlockUnitary::assemble() const {
    const int d = space.cutoff;
    Matrix u(3 * d, 3 * d);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) u.block(i * d, j * d, d, d) = blocks[i][j];
    return u;
}

BlockUnitary evolution_block(double theta, const HilbertSpec& space) {
    PhotonicOps ops = photonic_ops(theta, space);
    const int d = space.cutoff;
    const Matrix id = Matrix::Identity(d, d);
    const Complex mi(0.0, -1.0);
    BlockUnitary u;
    u.theta = theta;
    u.space = space;
    u.blocks[0][0] = ops.C;
    u.blocks[0][1] = mi * ops.S.adjoint();
    u.blocks[0][2] = mi * ops.S.adjoint();
    u.blocks[1][0] = mi * ops.S;
    u.blocks[2][0] = mi * ops.S;
    u.blocks[1][1] = 0.5 * (ops.Cprime + id);
    u.blocks[2][2] = 0.5 * (ops.Cprime + id);
    u.blocks[1][2] = 0.5 * (ops.Cprime - id);
    u.blocks[2][1] = 0.5 * (ops.Cprime - id);
    return u;
}

Matrix dense_unitary_oracle(double theta, const HilbertSpec& space) {
    if (space.cutoff > 64)
        throw ValidationError("dense_unitary_oracle: cutoff too large for the dense path");
    const int d = space.cutoff;
    Matrix a = annihilation(space);
    Matrix v = Matrix::Zero(3 * d, 3 * d);
    v.block(0, d, d, d) = a;
    v.block(0, 2 * d, d, d) = a;
    v.block(d, 0, d, d) = a.adjoint();
    v.block(2 * d, 0, d, d) = a.adjoint();
    Eigen::SelfAdjointEigenSolver<Matrix> es(v);
    Eigen::VectorXcd phases(3 * d);
    for (int k = 0; k < 3 * d; ++k)
        phases(k) = std::exp(Complex(0.0, -theta * es.eigenvalues()(k)));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

namespace {

SparseMatrix to_sparse(const Matrix& m) {
    SparseMatrix s = m.sparseView(1.0, 1e-300);
    s.makeCompressed();
    return s;
}

void finalize(KrausSet& set, std::vector<Matrix> dense_ops) {
    for (auto& e : dense_ops) {
        set.operators.push_back(to_sparse(e));
        set.adjoints.push_back(to_sparse(e.adjoint()));
    }
}

}  // namespace

KrausTemplate kraus_single_template(double theta, const HilbertSpec& space) {
    PhotonicOps ops = photonic_ops(theta, space);
    const int d = space.cutoff;
    KrausTemplate tpl;
    tpl.theta = theta;
    tpl.space = space;
    tpl.mode_count = 1;
    tpl.combos = {Matrix::Identity(d, d), ops.C, ops.S, ops.Cprime, ops.S.adjoint()};
    return tpl;
}

KrausTemplate kraus_cascade_template(double theta, const HilbertSpec& space) {
    PhotonicOps ops = photonic_ops(theta, space);
    const int d = space.cutoff;
    const Matrix sd = ops.S.adjoint();
    auto kron = [](const Matrix& x, const Matrix& y) -> Matrix {
        return Eigen::kroneckerProduct(x, y);
    };
    KrausTemplate tpl;
    tpl.theta = theta;
    tpl.space = space;
    tpl.mode_count = 2;
    tpl.combos = {Matrix::Identity(d * d, d * d),
                  kron(ops.C, ops.C) - 2.0 * kron(ops.S, sd),
                  kron(ops.S, ops.Cprime) + kron(ops.C, ops.S),
                  kron(sd, ops.C) + kron(ops.Cprime, sd),
                  kron(ops.Cprime, ops.Cprime) - 2.0 * kron(sd, ops.S)};
    return tpl;
}

KrausSet kraus_from_template(const KrausTemplate& tpl, const PhaseoniumParams& p) {
    const double ga = p.gamma_alpha();
    const double gb = p.gamma_beta();
    const double w0 = p.beta_sq() / 2.0 * (1.0 - std::cos(p.phi));
    const std::array<double, 5> weights = {
        std::sqrt(w0), std::sqrt(ga / 2.0), std::sqrt(ga),
        tpl.mode_count == 1 ? std::sqrt(gb / 2.0) : std::sqrt(gb),
        tpl.mode_count == 1 ? std::sqrt(gb) : std::sqrt(gb / 2.0)};

    KrausSet set;
    set.params = p;
    set.theta = tpl.theta;
    set.space = tpl.space;
    set.mode_count = tpl.mode_count;
    std::vector<Matrix> scaled;
    scaled.reserve(5);
    for (int i = 0; i < 5; ++i) scaled.push_back(weights[i] * tpl.combos[i]);
    finalize(set, std::move(scaled));
    return set;
}

KrausSet kraus_single(const PhaseoniumParams& p, double theta, const HilbertSpec& space) {
    return kraus_from_template(kraus_single_template(theta, space), p);
}

KrausSet kraus_cascade(const PhaseoniumParams& p, double theta, const HilbertSpec& space) {
    return kraus_from_template(kraus_cascade_template(theta, space), p);
}

CompletenessReport completeness_defect(const KrausSet& set) {
    const int dim = set.dim();
    Matrix sum = Matrix::Zero(dim, dim);
    for (size_t i = 0; i < set.operators.size(); ++i)
        sum += Matrix(set.adjoints[i] * set.operators[i]);
    sum -= Matrix::Identity(dim, dim);

    const int d = set.space.cutoff;
    const int cut = d - std::max(set.space.interior_margin, 1);
    auto is_boundary = [&](int idx) {
        if (set.mode_count == 1) return idx >= cut;
        return idx / d >= cut || idx % d >= cut;
    };
    CompletenessReport rep;
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            double v = std::abs(sum(i, j));
            if (is_boundary(i) || is_boundary(j))
                rep.boundary_defect = std::max(rep.boundary_defect, v);
            else
                rep.interior_defect = std::max(rep.interior_defect, v);
        }
    return rep;
}

Matrix apply_kraus(const KrausSet& set, const Matrix& rho) {
    Matrix out = Matrix::Zero(rho.rows(), rho.cols());
    for (size_t i = 0; i < set.operators.size(); ++i)
        out += set.operators[i] * rho * set.adjoints[i];
    return out;
}

Matrix apply_kraus_dual(const KrausSet& set, const Matrix& observable) {
    Matrix out = Matrix::Zero(observable.rows(), observable.cols());
    for (size_t i = 0; i < set.operators.size(); ++i)
        out += set.adjoints[i] * observable * set.operators[i];
    return out;
}

}  // namespace pcl
