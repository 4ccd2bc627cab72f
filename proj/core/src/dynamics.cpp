#include "uscraman/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace uscraman::dynamics {

ComplexMatrix full_hamiltonian(const SystemParams& params, const TruncatedSpace& space, double t) {
    const double f = params.Omega_p * std::cos(params.omega_p * t)
                   + params.Omega_s * std::cos(params.omega_s * t);
    const ComplexMatrix coupling = hilbert::atomic_transition(space, hilbert::Level::b, hilbert::Level::g)
                                 + hilbert::atomic_transition(space, hilbert::Level::g, hilbert::Level::b);
    return rabi::h0_hamiltonian(params, space) + f * coupling;
}

const std::vector<double>& Trajectory::at(const std::string& name) const {
    const auto it = series.find(name);
    if (it == series.end()) {
        throw std::invalid_argument("Trajectory: unknown series " + name);
    }
    return it->second;
}

Eigen::VectorXcd basis_state(const TruncatedSpace& space, hilbert::Level level, int n) {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(space.dim);
    psi(space.index(level, n)) = 1.0;
    return psi;
}

namespace {

struct Recorder {
    const TruncatedSpace& space;
    int j_b0, j_b2, j_e0;  // dressed positions
    Trajectory traj;

    void sample(double t, const Eigen::VectorXcd& phi) {
        traj.times.push_back(t);
        traj.series["P2"].push_back(std::norm(phi(j_b2)));
        traj.series["pop_b0"].push_back(std::norm(phi(j_b0)));
        traj.series["pop_E0"].push_back(std::norm(phi(j_e0)));
        traj.series["norm"].push_back(phi.norm());
    }
};

double default_dt(Scheme scheme, const SystemParams& params, const Eigen::VectorXd& energies) {
    if (scheme == Scheme::dressed_rk4) {
        // step limited by drive amplitude; 0.01/omega_c passes the
        // grid-refinement property with a wide margin
        return 0.01 / params.omega_c;
    }
    const double eps_max = energies.cwiseAbs().maxCoeff();
    return 0.02 / std::max(eps_max, params.omega_p);
}

} // namespace

Trajectory evolve(const Eigen::VectorXcd& psi0, const SystemParams& params,
                  const TruncatedSpace& space, double t_final, const EvolveOptions& options) {
    params.validate();
    if (psi0.size() != space.dim) {
        throw std::invalid_argument("evolve: psi0 dimension mismatch");
    }
    if (std::abs(psi0.norm() - 1.0) > 1e-8) {
        throw std::invalid_argument("evolve: psi0 must be normalized");
    }
    if (t_final <= 0.0) {
        throw std::invalid_argument("evolve: t_final must be positive");
    }

    const rabi::RabiSpectrum spectrum = rabi::rabi_spectrum(params, space);
    const rabi::DressedBasis basis = rabi::h0_dressed_basis(params, space, spectrum);
    const Eigen::VectorXd& eps = basis.energies;
    const Eigen::MatrixXcd V =
        rabi::drive_operator(basis, space).cast<hilbert::Complex>();
    const int dim = space.dim;

    const double dt_nominal =
        options.dt_max > 0.0 ? options.dt_max : default_dt(options.scheme, params, eps);

    Recorder rec{space,
                 basis.find(rabi::StateKind::BLadder, 0),
                 basis.find(rabi::StateKind::BLadder, 2),
                 basis.find(rabi::StateKind::Rabi, 0),
                 {}};
    rec.traj.dt = dt_nominal;

    // dressed-frame amplitudes phi = B^T psi; the interaction picture strips
    // the e^{-i eps t} phases so |phi_j| is basis-independent of the frame
    Eigen::VectorXcd phi = basis.vectors.cast<hilbert::Complex>().transpose() * psi0;

    const auto drive = [&](double t) {
        return params.Omega_p * std::cos(params.omega_p * t)
             + params.Omega_s * std::cos(params.omega_s * t);
    };

    Eigen::VectorXcd u0(dim), uh(dim), u1(dim), k1(dim), k2(dim), k3(dim), k4(dim),
        work(dim), tmp(dim);

    const auto phases = [&](double t, Eigen::VectorXcd& u) {
        for (int j = 0; j < dim; ++j) u(j) = std::polar(1.0, eps(j) * t);
    };
    // k = -i f(t) * (u o (V (u* o phi)))
    const auto deriv_dressed = [&](const Eigen::VectorXcd& state, double t,
                                   const Eigen::VectorXcd& u, Eigen::VectorXcd& out) {
        work.array() = u.array().conjugate() * state.array();
        tmp.noalias() = V * work;
        out.array() = hilbert::Complex(0.0, -drive(t)) * u.array() * tmp.array();
    };

    // lab scheme state and operators
    Eigen::MatrixXcd h0_lab, v_lab;
    Eigen::VectorXcd psi_lab;
    if (options.scheme == Scheme::lab_rk4) {
        h0_lab = rabi::h0_hamiltonian(params, space);
        v_lab = hilbert::atomic_transition(space, hilbert::Level::b, hilbert::Level::g)
              + hilbert::atomic_transition(space, hilbert::Level::g, hilbert::Level::b);
        psi_lab = psi0;
    }
    const auto deriv_lab = [&](const Eigen::VectorXcd& state, double t, Eigen::VectorXcd& out) {
        tmp.noalias() = h0_lab * state;
        tmp.noalias() += drive(t) * (v_lab * state);
        out = hilbert::Complex(0.0, -1.0) * tmp;
    };

    double t = 0.0;
    double worst_drift = 0.0;
    const auto record = [&](double time) {
        if (options.scheme == Scheme::lab_rk4) {
            // express in the dressed basis for uniform observables
            phi = basis.vectors.cast<hilbert::Complex>().transpose() * psi_lab;
        }
        rec.sample(time, phi);
        worst_drift = std::max(worst_drift, std::abs(rec.traj.series["norm"].back() - 1.0));
        if (worst_drift > options.norm_tol) {
            throw std::runtime_error("evolve: norm drift exceeded tolerance (step too coarse)");
        }
    };

    const auto step_once = [&](double t0, double dt) {
        const double th = t0 + 0.5 * dt;
        const double t1 = t0 + dt;
        if (options.scheme == Scheme::dressed_rk4) {
            phases(t0, u0);
            phases(th, uh);
            phases(t1, u1);
            deriv_dressed(phi, t0, u0, k1);
            work = phi + (0.5 * dt) * k1;
            deriv_dressed(work, th, uh, k2);
            work = phi + (0.5 * dt) * k2;
            deriv_dressed(work, th, uh, k3);
            work = phi + dt * k3;
            deriv_dressed(work, t1, u1, k4);
            phi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        } else {
            deriv_lab(psi_lab, t0, k1);
            work = psi_lab + (0.5 * dt) * k1;
            deriv_lab(work, th, k2);
            work = psi_lab + (0.5 * dt) * k2;
            deriv_lab(work, th, k3);
            work = psi_lab + dt * k3;
            deriv_lab(work, t1, k4);
            psi_lab += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
    };

    // observables live on the k * sample_dt grid independent of the scheme's
    // step size; each segment is integrated with a locally uniform step
    const double sample_dt = std::max(options.sample_dt, dt_nominal);
    const long nsegments =
        std::max<long>(1, static_cast<long>(std::ceil(t_final / sample_dt - 1e-12)));
    record(0.0);
    for (long seg = 1; seg <= nsegments; ++seg) {
        const double t_target = std::min(static_cast<double>(seg) * sample_dt, t_final);
        const long steps = std::max<long>(
            1, static_cast<long>(std::ceil((t_target - t) / dt_nominal - 1e-12)));
        const double dt = (t_target - t) / static_cast<double>(steps);
        for (long s = 0; s < steps; ++s) {
            step_once(t, dt);
            t += dt;
        }
        t = t_target;
        record(t);
    }

    Trajectory traj = std::move(rec.traj);
    traj.norm_drift = worst_drift;
    if (options.scheme == Scheme::dressed_rk4) {
        phases(t_final, u0);
        work.array() = u0.array().conjugate() * phi.array();  // back to the lab frame
        traj.final_state = basis.vectors.cast<hilbert::Complex>() * work;
    } else {
        traj.final_state = psi_lab;
    }
    return traj;
}

P2Comparison p2_comparison(const SystemParams& params, const TruncatedSpace& space,
                           ComparisonMode mode, double t_final,
                           const EvolveOptions& options, int m_cutoff) {
    const rabi::RabiSpectrum spectrum = rabi::rabi_spectrum(params, space);

    effective::TwoLevelEffective two_level;
    effective::LambdaSystem lambda;
    if (mode == ComparisonMode::off_resonant) {
        two_level = effective::two_level_effective(params, spectrum, m_cutoff);
        if (t_final <= 0.0) t_final = M_PI / std::abs(two_level.g02);
    } else {
        lambda = effective::lambda_system(params, spectrum);
        if (t_final <= 0.0) t_final = 1.5 * M_PI / lambda.Omega;
    }

    const Trajectory exact = evolve(basis_state(space, hilbert::Level::b, 0), params, space,
                                    t_final, options);

    P2Comparison cmp;
    cmp.times = exact.times;
    cmp.p2_exact = exact.at("P2");
    cmp.norm = exact.at("norm");
    cmp.p2_effective.reserve(cmp.times.size());
    for (const double t : cmp.times) {
        cmp.p2_effective.push_back(mode == ComparisonMode::off_resonant
                                       ? effective::two_level_p2(t, two_level)
                                       : effective::resonant_p2(t, lambda));
    }
    for (std::size_t i = 0; i < cmp.times.size(); ++i) {
        cmp.sup_mismatch = std::max(cmp.sup_mismatch,
                                    std::abs(cmp.p2_exact[i] - cmp.p2_effective[i]));
    }
    cmp.monitors = effective::validity_monitors(params, spectrum, m_cutoff);
    return cmp;
}

} // namespace uscraman::dynamics
