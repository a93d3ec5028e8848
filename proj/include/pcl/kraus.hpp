#pragma once

#include <Eigen/SparseCore>
#include <array>
#include <vector>

#include "pcl/fock.hpp"
#include "pcl/phaseonium.hpp"

// Exact finite-time interaction machinery: the 3x3-block collision unitary,
// its dense matrix-exponential oracle, and the single-cavity / cascade Kraus
// sets. Basis ordering is (e, g1, g2) (x) Fock throughout.
namespace pcl {

using SparseMatrix = Eigen::SparseMatrix<Complex>;

struct BlockUnitary {
    // blocks[i][j] is the D x D cavity operator at ancilla row i, column j
    std::array<std::array<Matrix, 3>, 3> blocks;
    double theta = 0.0;
    HilbertSpec space;

    Matrix assemble() const;  // (3D) x (3D)
};

struct KrausSet {
    std::vector<SparseMatrix> operators;  // 5 operators, adjoint order matches
    std::vector<SparseMatrix> adjoints;
    PhaseoniumParams params;
    double theta = 0.0;
    HilbertSpec space;
    int mode_count = 1;

    int dim() const { return static_cast<int>(operators.front().rows()); }
};

// Blocks [[C, -iS^dag, -iS^dag], [-iS, (C'+1)/2, (C'-1)/2], [-iS, (C'-1)/2, (C'+1)/2]].
BlockUnitary evolution_block(double theta, const HilbertSpec& space);

// exp(-i theta V) with V = [[0, a, a], [a^dag, 0, 0], [a^dag, 0, 0]],
// computed by dense self-adjoint eigendecomposition. Test oracle; D <= 64.
Matrix dense_unitary_oracle(double theta, const HilbertSpec& space);

// Theta-dependent operator combinations shared by every phi: the phase enters
// the Kraus set only through scalar prefactors, so stochastic-phi runs reuse
// one template per theta.
struct KrausTemplate {
    std::vector<Matrix> combos;  // unscaled E_0..E_4 combinations
    double theta = 0.0;
    HilbertSpec space;
    int mode_count = 1;
};

KrausTemplate kraus_single_template(double theta, const HilbertSpec& space);
KrausTemplate kraus_cascade_template(double theta, const HilbertSpec& space);
KrausSet kraus_from_template(const KrausTemplate& tpl, const PhaseoniumParams& params);

// E0 = sqrt(b^2(1-cos phi)/2) 1, E1 = sqrt(ga/2) C, E2 = sqrt(ga) S,
// E3 = sqrt(gb/2) C', E4 = sqrt(gb) S^dag.
KrausSet kraus_single(const PhaseoniumParams& params, double theta, const HilbertSpec& space);

// Two-mode set, mode 1 as the first tensor factor:
// E0 = sqrt(b^2(1-cos phi)/2) 1,
// E1 = sqrt(ga/2) (C(x)C - 2 S(x)S^dag),     E2 = sqrt(ga) (S(x)C' + C(x)S),
// E3 = sqrt(gb)   (S^dag(x)C + C'(x)S^dag),  E4 = sqrt(gb/2) (C'(x)C' - 2 S^dag(x)S).
KrausSet kraus_cascade(const PhaseoniumParams& params, double theta, const HilbertSpec& space);

struct CompletenessReport {
    double interior_defect = 0.0;  // max-norm of sum E^dag E - 1 away from the boundary
    double boundary_defect = 0.0;  // same, on the top-margin rows/columns
};

CompletenessReport completeness_defect(const KrausSet& set);

// rho -> sum_i E_i rho E_i^dag
Matrix apply_kraus(const KrausSet& set, const Matrix& rho);

// O -> sum_i E_i^dag O E_i (Heisenberg picture)
Matrix apply_kraus_dual(const KrausSet& set, const Matrix& observable);

}  // namespace pcl
