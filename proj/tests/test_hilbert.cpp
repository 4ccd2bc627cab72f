#include "uscraman/hilbert.hpp"

#include <doctest.h>

#include <random>

using namespace uscraman;
using hilbert::Level;

TEST_SUITE_BEGIN("hilbert");

TEST_CASE("build_space dimensions and rejection") {
    CHECK(hilbert::build_space(2).dim == 9);
    CHECK(hilbert::build_space(20).dim == 63);
    CHECK_THROWS_AS(hilbert::build_space(1), std::invalid_argument);
    CHECK_THROWS_AS(hilbert::build_space(-3), std::invalid_argument);
}

TEST_CASE("composite indexing is an atom-major bijection") {
    const auto space = hilbert::build_space(4);
    std::vector<bool> seen(space.dim, false);
    for (const Level a : {Level::b, Level::g, Level::e}) {
        for (int n = 0; n <= space.n_max; ++n) {
            const int idx = space.index(a, n);
            REQUIRE(idx >= 0);
            REQUIRE(idx < space.dim);
            CHECK_FALSE(seen[idx]);
            seen[idx] = true;
            CHECK(space.level_of(idx) == a);
            CHECK(space.fock_of(idx) == n);
        }
    }
    CHECK(space.index(Level::b, 0) == 0);
    CHECK(space.index(Level::g, 0) == space.n_max + 1);
}

TEST_CASE("annihilation ladder elements") {
    const auto space = hilbert::build_space(2);
    const auto a = hilbert::annihilation(space);
    CHECK(a(space.index(Level::b, 0), space.index(Level::b, 1)).real() == doctest::Approx(1.0));
    CHECK(a(space.index(Level::b, 1), space.index(Level::b, 2)).real()
          == doctest::Approx(std::sqrt(2.0)));
    CHECK(std::abs(a(space.index(Level::g, 0), space.index(Level::b, 1))) == 0.0);

    const Eigen::MatrixXcd number = a.adjoint() * a;
    for (const Level lvl : {Level::b, Level::g, Level::e}) {
        for (int n = 0; n <= space.n_max; ++n) {
            CHECK(number(space.index(lvl, n), space.index(lvl, n)).real()
                  == doctest::Approx(n).epsilon(1e-14));
        }
    }
}

TEST_CASE("commutator [a, adag] is identity away from the truncation boundary") {
    const auto space = hilbert::build_space(6);
    const auto a = hilbert::annihilation(space);
    const Eigen::MatrixXcd comm = a * a.adjoint() - a.adjoint() * a;
    for (const Level lvl : {Level::b, Level::g, Level::e}) {
        for (int n = 0; n < space.n_max; ++n) {
            CHECK(std::abs(comm(space.index(lvl, n), space.index(lvl, n)) - 1.0) < 1e-14);
        }
        CHECK(comm(space.index(lvl, space.n_max), space.index(lvl, space.n_max)).real()
              == doctest::Approx(-space.n_max));
    }
}

TEST_CASE("atomic transitions act as identity on the Fock factor") {
    const auto space = hilbert::build_space(2);
    const auto gb = hilbert::atomic_transition(space, Level::g, Level::b);
    int nonzero = 0;
    for (int i = 0; i < space.dim; ++i) {
        for (int j = 0; j < space.dim; ++j) {
            if (std::abs(gb(i, j)) != 0.0) {
                ++nonzero;
                CHECK(gb(i, j).real() == doctest::Approx(1.0));
            }
        }
    }
    CHECK(nonzero == 3);

    const auto ee = hilbert::atomic_transition(space, Level::e, Level::e);
    CHECK(ee.trace().real() == doctest::Approx(space.n_max + 1));

    // |e><g| applied to |g,1> lands on |e,1>
    const auto eg = hilbert::atomic_transition(space, Level::e, Level::g);
    Eigen::VectorXcd g1 = Eigen::VectorXcd::Zero(space.dim);
    g1(space.index(Level::g, 1)) = 1.0;
    const Eigen::VectorXcd mapped = eg * g1;
    CHECK(std::abs(mapped(space.index(Level::e, 1)) - 1.0) < 1e-14);
    CHECK(mapped.norm() == doctest::Approx(1.0));
}

TEST_CASE("hermitian_eigen on closed forms") {
    Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(2, 2);
    diag(1, 1) = 1.0;
    const auto d = hilbert::hermitian_eigen(diag);
    CHECK(d.values(0) == doctest::Approx(0.0));
    CHECK(d.values(1) == doctest::Approx(1.0));

    Eigen::MatrixXcd pauli_x = Eigen::MatrixXcd::Zero(2, 2);
    pauli_x(0, 1) = 1.0;
    pauli_x(1, 0) = 1.0;
    const auto x = hilbert::hermitian_eigen(pauli_x);
    CHECK(x.values(0) == doctest::Approx(-1.0));
    CHECK(x.values(1) == doctest::Approx(1.0));
}

TEST_CASE("hermitian_eigen reconstruction on a random 50x50 matrix") {
    std::mt19937 rng(12345);
    std::normal_distribution<double> dist;
    Eigen::MatrixXcd m(50, 50);
    for (int i = 0; i < 50; ++i) {
        for (int j = 0; j < 50; ++j) {
            m(i, j) = hilbert::Complex(dist(rng), dist(rng));
        }
    }
    const Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
    const auto eig = hilbert::hermitian_eigen(h);

    const Eigen::MatrixXcd rebuilt =
        eig.vectors * eig.values.asDiagonal() * eig.vectors.adjoint();
    CHECK((rebuilt - h).norm() <= 1e-9 * h.norm());
    CHECK((eig.vectors.adjoint() * eig.vectors - Eigen::MatrixXcd::Identity(50, 50))
              .cwiseAbs()
              .maxCoeff()
          <= 1e-10);
    for (int k = 0; k < 50; ++k) {
        CHECK((h * eig.vectors.col(k) - eig.values(k) * eig.vectors.col(k)).norm()
              <= 1e-10 * h.norm());
    }
    for (int k = 1; k < 50; ++k) CHECK(eig.values(k) >= eig.values(k - 1));
}

TEST_CASE("hermitian_eigen rejects non-Hermitian input") {
    Eigen::MatrixXcd bad = Eigen::MatrixXcd::Zero(3, 3);
    bad(0, 1) = 1.0;  // missing conjugate partner
    CHECK_THROWS_AS(hilbert::hermitian_eigen(bad), std::invalid_argument);
}

TEST_CASE("operator construction is deterministic") {
    const auto space = hilbert::build_space(8);
    CHECK(hilbert::annihilation(space) == hilbert::annihilation(space));
    const Eigen::MatrixXcd a = hilbert::annihilation(space);
    const Eigen::MatrixXcd h = a + a.adjoint();
    const auto e1 = hilbert::hermitian_eigen(h);
    const auto e2 = hilbert::hermitian_eigen(h);
    CHECK(e1.values == e2.values);
    CHECK(e1.vectors == e2.vectors);
}

TEST_SUITE_END();
