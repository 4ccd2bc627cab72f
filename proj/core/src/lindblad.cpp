#include "uscraman/lindblad.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <stdexcept>

namespace uscraman::lindblad {

void DampingRates::validate() const {
    if (gamma1 < 0.0 || gamma2 < 0.0 || gamma3 < 0.0) {
        throw std::invalid_argument("DampingRates: rates must be nonnegative");
    }
}

JumpSet build_jumps(const SystemParams& params, const TruncatedSpace& space,
                    const DampingRates& rates) {
    params.validate();
    rates.validate();

    JumpSet out;
    out.basis = rabi::h0_dressed_basis(params, space);
    const int dim = out.basis.dim();

    using hilbert::Level;
    const hilbert::ComplexMatrix coupling1 =
        hilbert::atomic_transition(space, Level::e, Level::g)
        + hilbert::atomic_transition(space, Level::g, Level::e);
    const hilbert::ComplexMatrix coupling2 =
        hilbert::atomic_transition(space, Level::g, Level::b)
        + hilbert::atomic_transition(space, Level::b, Level::g);
    const hilbert::ComplexMatrix a = hilbert::annihilation(space);
    out.C1 = rabi::dressed_sandwich(out.basis, coupling1);
    out.C2 = rabi::dressed_sandwich(out.basis, coupling2);
    out.C3 = rabi::dressed_sandwich(out.basis, (a + a.adjoint()).eval());

    out.gain = Eigen::MatrixXd::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) {
        for (int j = 0; j < dim; ++j) {
            if (out.basis.energies(k) - out.basis.energies(j) <= out.degeneracy_tol) continue;
            const double g1 = rates.gamma1 * out.C1(j, k) * out.C1(j, k);
            const double g2 = rates.gamma2 * out.C2(j, k) * out.C2(j, k);
            const double g3 = rates.gamma3 * out.C3(j, k) * out.C3(j, k);
            if (g1 > 0.0) out.jumps.push_back({j, k, 1, g1});
            if (g2 > 0.0) out.jumps.push_back({j, k, 2, g2});
            if (g3 > 0.0) out.jumps.push_back({j, k, 3, g3});
            out.gain(j, k) = g1 + g2 + g3;
        }
    }
    out.loss = out.gain.colwise().sum();
    return out;
}

XOperators x_operators(const JumpSet& jumps) {
    const int dim = jumps.dim();
    XOperators x;
    x.minus = Eigen::MatrixXd::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) {
        for (int j = 0; j < dim; ++j) {
            if (jumps.basis.energies(k) - jumps.basis.energies(j) > jumps.degeneracy_tol) {
                x.minus(j, k) = jumps.C3(j, k);
            }
        }
    }
    x.plus = x.minus.transpose();
    x.plus_minus = x.plus * x.minus;
    x.plus2_minus2 = x.plus * x.plus * x.minus * x.minus;
    return x;
}

namespace {

double real_trace_product(const Eigen::MatrixXd& op, const Eigen::MatrixXcd& rho) {
    // tr(op * rho) for real op
    return (op.transpose().array() * rho.real().array()).sum();
}

} // namespace

double photon_flux(const Eigen::MatrixXcd& rho, const XOperators& x, const DampingRates& rates) {
    return rates.gamma3 * real_trace_product(x.plus_minus, rho);
}

double g2_equal_time(const Eigen::MatrixXcd& rho, const XOperators& x) {
    const double denom = real_trace_product(x.plus_minus, rho);
    if (denom <= 0.0) {
        throw std::invalid_argument("g2_equal_time: <X+X-> must be positive");
    }
    return real_trace_product(x.plus2_minus2, rho) / (denom * denom);
}

Eigen::MatrixXcd ground_state_density(const JumpSet& jumps) {
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(jumps.dim(), jumps.dim());
    rho(0, 0) = 1.0;
    return rho;
}

// ------------------------------------------------------------------ stepper

namespace {

// RK4 on the vector-valued master equation in the interaction picture of H0.
// Jump operators pick up pure phases there, so the dissipator is unchanged;
// only the drive commutator carries the fast e^{i(eps_j - eps_k)t} factors.
class MasterStepper {
public:
    MasterStepper(const SystemParams& params, const JumpSet& jumps,
                  const TruncatedSpace& space, dynamics::Scheme scheme)
        : params_(params),
          eps_(jumps.basis.energies),
          V_(rabi::drive_operator(jumps.basis, space).cast<Complex>()),
          gain_(jumps.gain),
          scheme_(scheme),
          dim_(jumps.dim()) {
        half_loss_.resize(dim_, dim_);
        for (int j = 0; j < dim_; ++j) {
            for (int k = 0; k < dim_; ++k) {
                half_loss_(j, k) = 0.5 * (jumps.loss(j) + jumps.loss(k));
            }
        }
        u_.resize(dim_);
        w_.resize(dim_, dim_);
        k1_.resize(dim_, dim_);
        k2_.resize(dim_, dim_);
        k3_.resize(dim_, dim_);
        k4_.resize(dim_, dim_);
        stage_.resize(dim_, dim_);
        prod_.resize(dim_, dim_);
    }

    void derivative(const Eigen::MatrixXcd& rho, double t, Eigen::MatrixXcd& out) {
        const double f = params_.Omega_p * std::cos(params_.omega_p * t)
                       + params_.Omega_s * std::cos(params_.omega_s * t);
        if (scheme_ == dynamics::Scheme::dressed_rk4) {
            for (int j = 0; j < dim_; ++j) u_(j) = std::polar(1.0, eps_(j) * t);
            w_ = (u_ * u_.adjoint()).cwiseProduct(V_);
            prod_.noalias() = w_ * rho;
            prod_.noalias() -= rho * w_;
            out = Complex(0.0, -f) * prod_;
        } else {
            // lab frame: H = diag(eps) + f V
            prod_.noalias() = V_ * rho;
            prod_.noalias() -= rho * V_;
            out = Complex(0.0, -f) * prod_;
            for (int j = 0; j < dim_; ++j) {
                for (int k = 0; k < dim_; ++k) {
                    out(j, k) += Complex(0.0, -(eps_(j) - eps_(k))) * rho(j, k);
                }
            }
        }
        const Eigen::VectorXd pops = rho.real().diagonal();
        const Eigen::VectorXd gains = gain_ * pops;
        out.diagonal() += gains.cast<Complex>();
        out.array() -= half_loss_.array().cast<Complex>() * rho.array();
    }

    void step(Eigen::MatrixXcd& rho, double t, double dt) {
        derivative(rho, t, k1_);
        stage_ = rho + (0.5 * dt) * k1_;
        derivative(stage_, t + 0.5 * dt, k2_);
        stage_ = rho + (0.5 * dt) * k2_;
        derivative(stage_, t + 0.5 * dt, k3_);
        stage_ = rho + dt * k3_;
        derivative(stage_, t + dt, k4_);
        rho += (dt / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
        rho = 0.5 * (rho + rho.adjoint()).eval();
    }

    // lab-frame density matrix (undo interaction-picture phases)
    Eigen::MatrixXcd to_lab(const Eigen::MatrixXcd& rho, double t) const {
        if (scheme_ == dynamics::Scheme::lab_rk4) return rho;
        Eigen::VectorXcd u(dim_);
        for (int j = 0; j < dim_; ++j) u(j) = std::polar(1.0, -eps_(j) * t);
        return (u * u.adjoint()).cwiseProduct(rho);
    }

    double default_dt() const {
        if (scheme_ == dynamics::Scheme::dressed_rk4) return 0.01 / params_.omega_c;
        return 0.02 / std::max(eps_.cwiseAbs().maxCoeff(), params_.omega_p);
    }

private:
    SystemParams params_;
    Eigen::VectorXd eps_;
    Eigen::MatrixXcd V_;
    Eigen::MatrixXd gain_;
    Eigen::MatrixXd half_loss_;
    dynamics::Scheme scheme_;
    int dim_ = 0;
    Eigen::VectorXcd u_;
    Eigen::MatrixXcd w_, k1_, k2_, k3_, k4_, stage_, prod_;
};

void check_density(const Eigen::MatrixXcd& rho) {
    if (std::abs(rho.trace().real() - 1.0) > 1e-8 || std::abs(rho.trace().imag()) > 1e-10) {
        throw std::invalid_argument("master_evolve: rho0 must have unit trace");
    }
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
        throw std::invalid_argument("master_evolve: rho0 must be Hermitian");
    }
}

} // namespace

MasterTrajectory master_evolve(const Eigen::MatrixXcd& rho0, const SystemParams& params,
                               const TruncatedSpace& space, const DampingRates& rates,
                               double t_final, const MasterOptions& options) {
    check_density(rho0);
    const JumpSet jumps = build_jumps(params, space, rates);
    const XOperators x = x_operators(jumps);
    MasterStepper stepper(params, jumps, space, options.scheme);

    const double dt_nominal = options.dt_max > 0.0 ? options.dt_max : stepper.default_dt();
    const long eig_every = std::max<long>(1, std::lround(options.eig_dt / options.sample_dt));

    MasterTrajectory traj;
    traj.dt = dt_nominal;
    Eigen::MatrixXcd rho = rho0;
    double t = 0.0;
    long sample_count = 0;

    const auto sample = [&](double time) {
        const Eigen::MatrixXcd rho_lab = stepper.to_lab(rho, time);
        traj.times.push_back(time);
        traj.phi_out.push_back(photon_flux(rho_lab, x, rates));
        const double tr = rho.trace().real();
        traj.trace.push_back(tr);
        if (std::abs(tr - 1.0) > options.trace_tol) {
            throw std::runtime_error("master_evolve: trace drift exceeded tolerance");
        }
        if (sample_count % eig_every == 0) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(rho_lab,
                                                                Eigen::EigenvaluesOnly);
            const double mn = eig.eigenvalues().minCoeff();
            traj.eig_times.push_back(time);
            traj.min_eig.push_back(mn);
            if (mn < options.min_eig_floor) {
                throw std::runtime_error("master_evolve: positivity violated");
            }
        }
        ++sample_count;
    };

    const double sample_dt = std::max(options.sample_dt, dt_nominal);
    const long nsegments =
        std::max<long>(1, static_cast<long>(std::ceil(t_final / sample_dt - 1e-12)));
    sample(0.0);
    for (long seg = 1; seg <= nsegments; ++seg) {
        const double t_target = std::min(static_cast<double>(seg) * sample_dt, t_final);
        const long steps = std::max<long>(
            1, static_cast<long>(std::ceil((t_target - t) / dt_nominal - 1e-12)));
        const double dt = (t_target - t) / static_cast<double>(steps);
        for (long s = 0; s < steps; ++s) {
            stepper.step(rho, t, dt);
            t += dt;
        }
        t = t_target;
        sample(t);
    }
    traj.rho_final = stepper.to_lab(rho, t_final);
    return traj;
}

SteadyStateResult steady_state_numeric(const SystemParams& params, const TruncatedSpace& space,
                                       const DampingRates& rates, const SteadyOptions& options) {
    const JumpSet jumps = build_jumps(params, space, rates);
    const XOperators x = x_operators(jumps);
    MasterStepper stepper(params, jumps, space, options.master.scheme);

    const double window = options.window > 0.0
                              ? options.window
                              : 20.0 * 2.0 * M_PI / params.omega_p;
    double dt = options.master.dt_max > 0.0 ? options.master.dt_max : stepper.default_dt();
    const long steps_per_sample =
        std::max<long>(1, std::lround(options.master.sample_dt / dt));
    dt = options.master.sample_dt / static_cast<double>(steps_per_sample);

    Eigen::MatrixXcd rho = ground_state_density(jumps);
    Eigen::MatrixXcd window_acc = Eigen::MatrixXcd::Zero(jumps.dim(), jumps.dim());
    long acc_count = 0;

    SteadyStateResult result;
    double t = 0.0;
    double prev_flux = -1.0;
    int hits = 0;

    while (t < options.t_budget) {
        const double window_end = (result.windows + 1) * window;
        while (t < window_end - 0.5 * dt) {
            window_acc += stepper.to_lab(rho, t);
            ++acc_count;
            for (long s = 0; s < steps_per_sample; ++s) {
                stepper.step(rho, t, dt);
                t += dt;
            }
        }
        const Eigen::MatrixXcd rho_bar = window_acc / static_cast<double>(acc_count);
        const double flux = photon_flux(rho_bar, x, rates);
        result.window_flux.push_back(flux);
        ++result.windows;
        window_acc.setZero();
        acc_count = 0;

        bool settled = prev_flux >= 0.0 && flux > 0.0
                    && std::abs(flux - prev_flux) < options.rel_tol * std::abs(flux);
        const auto& history = result.window_flux;
        // slow coherent transients look flat between neighbours; require the
        // same agreement against a window far enough back to span them
        if (settled && options.lag_windows > 0) {
            if (history.size() <= static_cast<std::size_t>(options.lag_windows)) {
                settled = false;
            } else {
                const double lagged = history[history.size() - 1 - options.lag_windows];
                settled = std::abs(flux - lagged) < options.rel_tol * std::abs(flux);
            }
        }
        // a slow exponential tail passes the consecutive-window test long before
        // it is flat; bound the remaining drift by geometric extrapolation
        if (settled && history.size() >= 3) {
            const double d1 = history[history.size() - 2] - history[history.size() - 3];
            const double d2 = flux - history[history.size() - 2];
            if (d1 != 0.0) {
                const double r = d2 / d1;
                if (r > 0.0 && r < 0.98) {
                    const double remaining = std::abs(d2) * r / (1.0 - r);
                    settled = remaining < options.rel_tol * std::abs(flux);
                }
            }
        }
        hits = settled ? hits + 1 : 0;
        prev_flux = flux;
        if (hits >= options.consecutive) {
            result.rho_bar = rho_bar;
            result.phi_ss = flux;
            result.g2_ss = g2_equal_time(rho_bar, x);
            result.t_converged = t;
            return result;
        }
    }
    throw std::runtime_error("steady_state_numeric: no convergence within the time budget");
}

double steady_truncation_drift(const SystemParams& params, int n_max,
                               const DampingRates& rates, const SteadyOptions& options) {
    const auto flux_at = [&](int nm) {
        return steady_state_numeric(params, hilbert::build_space(nm), rates, options).phi_ss;
    };
    const double coarse = flux_at(n_max);
    const double fine = flux_at(2 * n_max);
    return std::abs(coarse - fine) / std::max(std::abs(fine), 1e-300);
}

// ------------------------------------------------------- 4-level reductions

FourLevelRates lambda_rates(const rabi::RabiSpectrum& spectrum, const DampingRates& rates) {
    rates.validate();
    const int n_max = spectrum.n_max();
    const TruncatedSpace space = hilbert::build_space(n_max);
    const int N = n_max + 1;

    // the four level vectors in the product basis: |b,0>, |b,1>, |b,2>, |E_0>
    Eigen::MatrixXd levels = Eigen::MatrixXd::Zero(space.dim, 4);
    using hilbert::Level;
    levels(space.index(Level::b, 0), 0) = 1.0;
    levels(space.index(Level::b, 1), 1) = 1.0;
    levels(space.index(Level::b, 2), 2) = 1.0;
    for (int n = 0; n < N; ++n) {
        levels(space.index(Level::g, n), 3) = spectrum.c(0, n);
        levels(space.index(Level::e, n), 3) = spectrum.d(0, n);
    }

    const hilbert::ComplexMatrix coupling1 =
        hilbert::atomic_transition(space, Level::e, Level::g)
        + hilbert::atomic_transition(space, Level::g, Level::e);
    const hilbert::ComplexMatrix coupling2 =
        hilbert::atomic_transition(space, Level::g, Level::b)
        + hilbert::atomic_transition(space, Level::b, Level::g);
    const hilbert::ComplexMatrix a = hilbert::annihilation(space);
    const Eigen::MatrixXcd quad = a + a.adjoint();

    const auto sandwich = [&](const Eigen::MatrixXcd& op) {
        return (levels.transpose() * op.real() * levels).eval();
    };
    const Eigen::MatrixXd c1 = sandwich(coupling1);
    const Eigen::MatrixXd c2 = sandwich(coupling2);
    const Eigen::MatrixXd c3 = sandwich(quad);

    const auto rate = [&](int k, int j) {  // k -> j, 0-based
        return rates.gamma1 * c1(j, k) * c1(j, k) + rates.gamma2 * c2(j, k) * c2(j, k)
             + rates.gamma3 * c3(j, k) * c3(j, k);
    };
    FourLevelRates out;
    out.G21 = rate(1, 0);
    out.G31 = rate(2, 0);
    out.G32 = rate(2, 1);
    out.G41 = rate(3, 0);
    out.G42 = rate(3, 1);
    out.G43 = rate(3, 2);
    return out;
}

Eigen::MatrixXcd lambda_liouvillian_steady(const SystemParams& params,
                                           const rabi::RabiSpectrum& spectrum,
                                           const DampingRates& rates) {
    const effective::LambdaSystem sys = effective::lambda_system(params, spectrum);
    const FourLevelRates g = lambda_rates(spectrum, rates);

    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(4, 4);
    h(3, 0) = sys.Omega_p_prime;
    h(0, 3) = sys.Omega_p_prime;
    h(3, 2) = sys.Omega_s_prime;
    h(2, 3) = sys.Omega_s_prime;

    const double rate_table[4][4] = {{0, 0, 0, 0},
                                     {g.G21, 0, 0, 0},
                                     {g.G31, g.G32, 0, 0},
                                     {g.G41, g.G42, g.G43, 0}};

    // vectorized Liouvillian, column-major vec(rho)
    Eigen::MatrixXcd L = Eigen::MatrixXcd::Zero(16, 16);
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(4, 4);
    const auto kron = [](const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
        Eigen::MatrixXcd out(16, 16);
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                out.block(4 * i, 4 * j, 4, 4) = A(i, j) * B;
            }
        }
        return out;
    };
    L += Complex(0.0, -1.0) * (kron(id, h) - kron(h.transpose(), id));
    for (int k = 0; k < 4; ++k) {
        for (int j = 0; j < k; ++j) {
            const double rate = rate_table[k][j];
            if (rate <= 0.0) continue;
            Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(4, 4);
            op(j, k) = 1.0;
            const Eigen::MatrixXcd opdop = op.adjoint() * op;
            L += rate * (kron(op.conjugate(), op)
                         - 0.5 * kron(id, opdop)
                         - 0.5 * kron(opdop.transpose(), id));
        }
    }

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(L, Eigen::ComputeFullV);
    const Eigen::VectorXd& sv = svd.singularValues();
    if (sv(14) <= 1e-8 * sv(0)) {
        throw std::runtime_error("lambda_liouvillian_steady: null space dimension != 1");
    }
    Eigen::VectorXcd kernel = svd.matrixV().col(15);
    Eigen::MatrixXcd rho(4, 4);
    for (int col = 0; col < 4; ++col) {
        rho.col(col) = kernel.segment(4 * col, 4);
    }
    rho /= rho.trace();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return rho;
}

ResonantSS appendix_resonant_ss(double Omega_p_prime, double Omega_s_prime,
                                const FourLevelRates& g) {
    const double op2 = Omega_p_prime * Omega_p_prime;
    const double os2 = Omega_s_prime * Omega_s_prime;
    const double x = g.x();
    const double y = g.y();

    const double A1 =
        g.G21 * (16.0 * os2 * os2 * (g.G41 + g.G42 + x)
                 + x * y * ((x + y) * (8.0 * os2 + x * y) - 4.0 * os2 * g.G43))
        + 16.0 * op2 * op2 * (x * (2.0 * g.G21 + g.G42) + (g.G21 + g.G32) * g.G43)
        + 4.0 * op2 * (4.0 * os2 * (g.G32 * (g.G41 + g.G42 + x) + y * g.G21)
                       + x * g.G21 * (2.0 * x * x + 2.0 * x * y + y * y))
        + 4.0 * op2 * x * (x + y) * (x * g.G42 + (g.G21 + g.G32) * g.G43);
    if (A1 == 0.0) {
        throw std::invalid_argument("appendix_resonant_ss: normalizer A1 vanishes");
    }

    ResonantSS out;
    out.x = x;
    out.y = y;
    out.A1 = A1;
    Eigen::MatrixXcd& rho = out.rho;
    rho.setZero();

    rho(0, 0) = (g.G21 / A1) * 4.0 * op2 * (4.0 * os2 * (g.G43 - x) + x * (x * x + x * y + y * y))
              + (4.0 * g.G21 / A1) * x * y * os2 * (2.0 * (g.G41 + g.G42 + x) + g.G43)
              + (g.G21 / A1) * x * x * y * y * (x + y)
              + (16.0 * g.G21 / A1) * os2 * os2 * (g.G41 + g.G42 + x)
              + (16.0 * g.G21 / A1) * x * op2 * op2;
    rho(0, 2) = -(4.0 * Omega_s_prime * g.G21 * Omega_p_prime / A1)
                    * ((g.G41 + g.G42 + x) * (4.0 * os2 + x * y)
                       + 4.0 * op2 * (g.G43 - x) + x * y * g.G43);
    rho(0, 3) = Complex(0.0, 2.0 * x * g.G21 * Omega_p_prime / A1)
                    * ((g.G41 + g.G42 + x) * (4.0 * os2 + x * y)
                       + x * y * g.G43 + 4.0 * y * op2);
    rho(1, 1) = (4.0 * op2 / A1) * (g.G31 * g.G42 + g.G32 * (g.G42 + g.G43))
                    * (4.0 * op2 + x * (x + y))
              + (16.0 * op2 / A1) * g.G32 * os2 * (g.G41 + g.G42 + x);
    rho(2, 2) = (4.0 * g.G21 * op2 / A1)
                    * (g.G43 * (4.0 * op2 + x * (x + y))
                       + 4.0 * os2 * (g.G41 + g.G42 + x));
    rho(2, 3) = Complex(0.0, -8.0 * x * g.G21 * op2 * Omega_s_prime / A1)
                    * (g.G41 + g.G42 + x);
    rho(3, 3) = (4.0 * x * g.G21 * op2 / A1) * (4.0 * op2 + x * (x + y));

    rho(2, 0) = std::conj(rho(0, 2));
    rho(3, 0) = std::conj(rho(0, 3));
    rho(3, 2) = std::conj(rho(2, 3));
    return out;
}

OffResonantSS appendix_offres_ss(Complex g02, double Delta0, double Delta2,
                                 double G21, double G31, double G32) {
    const double g2 = std::norm(g02);
    const double A2 = 4.0 * g2 * (2.0 * G21 + G32)
                    + G21 * ((G31 + G32) * (G31 + G32)
                             + 4.0 * (Delta0 - Delta2) * (Delta0 - Delta2));
    if (A2 == 0.0) {
        throw std::invalid_argument("appendix_offres_ss: normalizer A2 vanishes");
    }
    OffResonantSS out;
    out.A2 = A2;
    Eigen::MatrixXcd& rho = out.rho;
    rho.setZero();
    rho(0, 0) = 1.0 - 4.0 * g2 * (G21 + G32) / A2;
    rho(1, 1) = 4.0 * g2 * G32 / A2;
    rho(2, 2) = 4.0 * g2 * G21 / A2;
    rho(0, 2) = (2.0 * g02 * G21 / A2)
              * Complex(2.0 * Delta0 - 2.0 * Delta2, G31 + G32);
    rho(2, 0) = std::conj(rho(0, 2));
    return out;
}

double phi_ss_analytic(const Eigen::MatrixXcd& rho_ss, double gamma3) {
    return gamma3 * (rho_ss(1, 1).real() + 2.0 * rho_ss(2, 2).real());
}

double g2_ss_analytic(const Eigen::MatrixXcd& rho_ss) {
    const double denom = rho_ss(1, 1).real() + 2.0 * rho_ss(2, 2).real();
    if (denom <= 0.0) {
        throw std::invalid_argument("g2_ss_analytic: rho22 + 2 rho33 must be positive");
    }
    return 2.0 * rho_ss(2, 2).real() / (denom * denom);
}

} // namespace uscraman::lindblad
