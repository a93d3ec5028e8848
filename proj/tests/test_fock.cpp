#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pcl/fock.hpp"

using namespace pcl;

TEST_CASE("annihilation matrix elements") {
    HilbertSpec d2{2, 0};
    Matrix a2 = annihilation(d2);
    CHECK(std::abs(a2(0, 1) - 1.0) < 1e-15);
    CHECK(std::abs(a2(0, 0)) == 0.0);
    CHECK(std::abs(a2(1, 0)) == 0.0);
    CHECK(std::abs(a2(1, 1)) == 0.0);

    HilbertSpec d4{4, 0};
    CHECK(std::abs(annihilation(d4)(2, 3) - std::sqrt(3.0)) < 1e-15);
}

TEST_CASE("commutator is identity on interior levels") {
    HilbertSpec space{10, 1};
    Matrix a = annihilation(space);
    Matrix comm = a * a.adjoint() - a.adjoint() * a;
    for (int n = 0; n < space.cutoff - 1; ++n) CHECK(std::abs(comm(n, n) - 1.0) < 1e-14);
    // the truncation-boundary row carries the defect
    CHECK(std::real(comm(9, 9)) < 0);
}

TEST_CASE("photonic operators at theta = 0") {
    HilbertSpec space{8, 1};
    PhotonicOps ops = photonic_ops(0.0, space);
    CHECK((ops.C - Matrix::Identity(8, 8)).cwiseAbs().maxCoeff() == 0.0);
    CHECK((ops.Cprime - Matrix::Identity(8, 8)).cwiseAbs().maxCoeff() == 0.0);
    CHECK(ops.S.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("photonic operators diagonal-exact") {
    HilbertSpec space{16, 2};
    double theta = 0.83;
    PhotonicOps ops = photonic_ops(theta, space);
    for (int n = 0; n < 16; ++n) {
        CHECK(std::abs(ops.Cprime(n, n) - std::cos(theta * std::sqrt(2.0 * n))) < 1e-15);
        CHECK(std::abs(ops.C(n, n) - std::cos(theta * std::sqrt(2.0 * (n + 1)))) < 1e-15);
    }
    double th = std::numbers::pi / std::sqrt(2.0);
    PhotonicOps flip = photonic_ops(th, space);
    CHECK(std::abs(flip.C(0, 0) - (-1.0)) < 1e-12);
}

TEST_CASE("sinusoidal identity C C + 2 S^dag S = 1 on the interior") {
    HilbertSpec space{12, 1};
    for (double theta : {0.1, 0.7, 1.3, 2.6}) {
        PhotonicOps ops = photonic_ops(theta, space);
        Matrix lhs1 = ops.C * ops.C + 2.0 * ops.S.adjoint() * ops.S - Matrix::Identity(12, 12);
        Matrix lhs2 =
            ops.Cprime * ops.Cprime + 2.0 * ops.S * ops.S.adjoint() - Matrix::Identity(12, 12);
        for (int n = 0; n < 11; ++n) {
            CHECK(std::abs(lhs1(n, n)) < 1e-12);
            CHECK(std::abs(lhs2(n, n)) < 1e-12);
        }
        // top level: leakage defect, nonzero for generic theta
        if (std::abs(std::sin(theta * std::sqrt(2.0 * 12))) > 0.1)
            CHECK(std::abs(lhs1(11, 11)) > 1e-6);
    }
}

TEST_CASE("thermal state basics") {
    HilbertSpec space{40, 2};
    CavityState vac = thermal_state(0.0, space);
    CHECK(std::abs(vac.matrix(0, 0) - 1.0) < 1e-15);
    CHECK(vac.valid());

    CavityState th = thermal_state(1.0, space);
    CHECK(th.valid());
    CHECK(std::abs(std::real(th.matrix(1, 1) / th.matrix(0, 0)) - std::exp(-1.0)) < 1e-12);
    CHECK(std::abs(mean_photon_number(th) - 1.0 / (std::exp(1.0) - 1.0)) < 1e-6);

    CHECK_THROWS_AS(thermal_state(-0.1, space), ValidationError);
}

TEST_CASE("effective temperature inverts the thermal construction") {
    HilbertSpec space{40, 2};
    CHECK(std::abs(effective_temperature(thermal_state(0.5, space)) - 0.5) < 1e-9);
    CHECK(effective_temperature(thermal_state(0.0, space)) == 0.0);

    // Gibbs ratio e^-2 corresponds to T = 0.5
    CavityState g{Matrix::Zero(40, 40), space, 1};
    double z = 0;
    for (int n = 0; n < 40; ++n) z += std::exp(-2.0 * n);
    for (int n = 0; n < 40; ++n) g.matrix(n, n) = std::exp(-2.0 * n) / z;
    CHECK(std::abs(effective_temperature(g) - 0.5) < 1e-9);

    double diag = -1;
    effective_temperature(thermal_state(1.0, space), &diag);
    CHECK(diag < 1e-12);
}

TEST_CASE("property: thermal then effective_temperature is the identity") {
    HilbertSpec space{40, 2};
    for (double t = 0.05; t <= 2.0; t += 0.13) {
        CavityState st = thermal_state(t, space);
        if (leakage(st) < 1e-10) CHECK(std::abs(effective_temperature(st) - t) < 1e-6);
    }
}

TEST_CASE("leakage gate") {
    HilbertSpec space{40, 2};
    CHECK(leakage(thermal_state(0.0, space)) == 0.0);
    CHECK(leakage(thermal_state(1.0, space)) < 1e-15);
    CHECK(leakage(thermal_state(2.0, HilbertSpec{10, 2})) > 1e-3);
}

TEST_CASE("hilbert spec validation") {
    CHECK_THROWS_AS(HilbertSpec(1, 0), ValidationError);
    CHECK_THROWS_AS(HilbertSpec(4, 4), ValidationError);
}
