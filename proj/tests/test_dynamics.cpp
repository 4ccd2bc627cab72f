#include "uscraman/dynamics.hpp"

#include <doctest.h>

#include <random>

using namespace uscraman;
using hilbert::Level;

namespace {

rabi::SystemParams resonant_params(double lambda, double Omega_p, double eta,
                                   const rabi::TruncatedSpace& space) {
    rabi::SystemParams p;
    p.lambda = lambda;
    p.Omega_p = Omega_p;
    const auto spec = rabi::rabi_spectrum(p, space);
    p.omega_p = spec.energies(0) - p.omega_b;
    p.omega_s = p.omega_p - 2.0;
    if (eta < 0.0) eta = std::abs(spec.c(0, 0) / spec.c(0, 2));  // eta_c
    p.Omega_s = eta * p.Omega_p;
    return p;
}

} // namespace

TEST_SUITE_BEGIN("dynamics");

TEST_CASE("full Hamiltonian block structure and drive amplitude") {
    const auto space = hilbert::build_space(5);
    rabi::SystemParams p;
    p.lambda = 0.4;
    SUBCASE("no drive: b sector decoupled") {
        const auto h = dynamics::full_hamiltonian(p, space, 0.37);
        for (int n = 0; n <= 5; ++n) {
            const int i = space.index(Level::b, n);
            for (int j = 0; j < space.dim; ++j) {
                if (j != i) CHECK(std::abs(h(i, j)) < 1e-14);
            }
        }
    }
    SUBCASE("t = 0 drive amplitude is Omega_p + Omega_s on the b-g block") {
        p.Omega_p = 2e-3;
        p.Omega_s = 3e-3;
        p.omega_p = 4.0;
        p.omega_s = 2.0;
        const auto h = dynamics::full_hamiltonian(p, space, 0.0);
        CHECK(h(space.index(Level::b, 1), space.index(Level::g, 1)).real()
              == doctest::Approx(5e-3));
    }
    SUBCASE("Hermiticity at random times") {
        p.Omega_p = 2e-3;
        p.Omega_s = 3e-3;
        p.omega_p = 4.0;
        p.omega_s = 2.0;
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> dist(0.0, 100.0);
        for (int k = 0; k < 5; ++k) {
            const auto h = dynamics::full_hamiltonian(p, space, dist(rng));
            CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() <= 1e-12);
        }
    }
}

TEST_CASE("undriven |b,0> stays put") {
    const auto space = hilbert::build_space(6);
    rabi::SystemParams p;
    p.lambda = 0.5;
    p.omega_p = 4.0;  // frequencies irrelevant at zero strength
    p.omega_s = 2.0;
    const auto traj = dynamics::evolve(dynamics::basis_state(space, Level::b, 0), p, space, 50.0);
    for (const double v : traj.at("P2")) CHECK(v == doctest::Approx(0.0));
    for (const double v : traj.at("pop_b0")) CHECK(v == doctest::Approx(1.0));
}

TEST_CASE("input validation") {
    const auto space = hilbert::build_space(4);
    rabi::SystemParams p;
    p.lambda = 0.3;
    p.omega_p = 4.0;
    p.omega_s = 2.0;
    CHECK_THROWS_AS(dynamics::evolve(Eigen::VectorXcd::Zero(3), p, space, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        dynamics::evolve(2.0 * dynamics::basis_state(space, Level::b, 0), p, space, 1.0),
        std::invalid_argument);
    CHECK_THROWS_AS(
        dynamics::evolve(dynamics::basis_state(space, Level::b, 0), p, space, -1.0),
        std::invalid_argument);
}

TEST_CASE("norm is conserved on a driven run") {
    const auto space = hilbert::build_space(12);
    const auto p = resonant_params(0.5, 8e-4, -1.0, space);
    const auto traj =
        dynamics::evolve(dynamics::basis_state(space, Level::b, 0), p, space, 800.0);
    CHECK(traj.norm_drift <= 1e-8);
}

TEST_CASE("lab-frame scheme conserves the undriven energy") {
    const auto space = hilbert::build_space(8);
    rabi::SystemParams p;
    p.lambda = 0.5;
    p.omega_p = 4.0;
    p.omega_s = 2.0;

    // random normalized initial state, fixed seed
    std::mt19937 rng(99);
    std::normal_distribution<double> dist;
    Eigen::VectorXcd psi0(space.dim);
    for (int i = 0; i < space.dim; ++i) psi0(i) = hilbert::Complex(dist(rng), dist(rng));
    psi0.normalize();

    dynamics::EvolveOptions opts;
    opts.scheme = dynamics::Scheme::lab_rk4;
    const auto traj = dynamics::evolve(psi0, p, space, 40.0, opts);
    const auto h0 = rabi::h0_hamiltonian(p, space);
    const double e_initial = (psi0.adjoint() * h0 * psi0)(0, 0).real();
    const double e_final =
        (traj.final_state.adjoint() * h0 * traj.final_state)(0, 0).real();
    CHECK(std::abs(e_final - e_initial) <= 1e-8 * std::max(1.0, std::abs(e_initial)));
    CHECK(traj.norm_drift <= 1e-8);
}

TEST_CASE("dressed and lab schemes agree") {
    const auto space = hilbert::build_space(12);
    const auto p = resonant_params(0.5, 8e-4, -1.0, space);
    dynamics::EvolveOptions dressed;
    dynamics::EvolveOptions lab;
    lab.scheme = dynamics::Scheme::lab_rk4;
    const auto psi0 = dynamics::basis_state(space, Level::b, 0);
    const auto a = dynamics::evolve(psi0, p, space, 60.0, dressed);
    const auto b = dynamics::evolve(psi0, p, space, 60.0, lab);
    REQUIRE(a.times.size() == b.times.size());
    double sup = 0.0;
    for (std::size_t i = 0; i < a.times.size(); ++i) {
        sup = std::max(sup, std::abs(a.at("P2")[i] - b.at("P2")[i]));
    }
    CHECK(sup <= 1e-8);
}

TEST_CASE("grid refinement leaves P2 unchanged") {
    const auto space = hilbert::build_space(12);
    const auto p = resonant_params(0.5, 8e-4, -1.0, space);
    dynamics::EvolveOptions coarse;
    coarse.dt_max = 0.01;
    dynamics::EvolveOptions fine;
    fine.dt_max = 0.005;
    const auto psi0 = dynamics::basis_state(space, Level::b, 0);
    const auto a = dynamics::evolve(psi0, p, space, 500.0, coarse);
    const auto b = dynamics::evolve(psi0, p, space, 500.0, fine);
    double sup = 0.0;
    for (std::size_t i = 0; i < a.times.size(); ++i) {
        sup = std::max(sup, std::abs(a.at("P2")[i] - b.at("P2")[i]));
    }
    CHECK(sup <= 1e-6);
}

TEST_CASE("a hopelessly coarse lab step trips the norm guard") {
    const auto space = hilbert::build_space(8);
    const auto p = resonant_params(0.5, 8e-4, -1.0, space);
    dynamics::EvolveOptions opts;
    opts.scheme = dynamics::Scheme::lab_rk4;
    opts.dt_max = 0.5;  // far beyond the spectral-radius limit
    CHECK_THROWS_AS(
        dynamics::evolve(dynamics::basis_state(space, Level::b, 0), p, space, 200.0, opts),
        std::runtime_error);
}

TEST_CASE("resonant comparison stays tight over an early window") {
    const auto space = hilbert::build_space(14);
    const auto p = resonant_params(0.5, 8e-4, -1.0, space);
    const auto cmp =
        dynamics::p2_comparison(p, space, dynamics::ComparisonMode::resonant, 400.0);
    CHECK(cmp.sup_mismatch <= 5e-3);
    CHECK(cmp.times.size() == cmp.p2_effective.size());
}

TEST_CASE("strong pump still reaches a high first maximum") {
    const auto space = hilbert::build_space(14);
    const auto p = resonant_params(0.5, 4e-3, -1.0, space);
    const auto spec = rabi::rabi_spectrum(p, space);
    const auto sys = effective::lambda_system(p, spec);
    const auto traj = dynamics::evolve(dynamics::basis_state(space, Level::b, 0), p, space,
                                       1.2 * M_PI / sys.Omega);
    double max_p2 = 0.0;
    for (const double v : traj.at("P2")) max_p2 = std::max(max_p2, v);
    CHECK(max_p2 >= 0.9);
}

TEST_SUITE_END();
