// lindblad.hpp — zero-temperature dressed-basis master equation, generalized
// input-output observables, numeric and closed-form steady states
#pragma once

#include "uscraman/dynamics.hpp"
#include "uscraman/effective.hpp"
#include "uscraman/rabi.hpp"

#include <vector>

namespace uscraman::lindblad {

using hilbert::Complex;
using rabi::DressedBasis;
using rabi::SystemParams;
using rabi::TruncatedSpace;

struct DampingRates {
    double gamma1 = 0.0;  // atomic e <-> g bath
    double gamma2 = 0.0;  // atomic g <-> b bath
    double gamma3 = 0.0;  // cavity bath

    void validate() const;
};

struct Jump {
    int lower = 0;   // dressed index j (final)
    int upper = 0;   // dressed index k (initial), eps_k > eps_j
    int bath = 0;    // 1, 2 or 3
    double rate = 0.0;
};

// Downward dissipation channels between dressed states. Pairs within
// degeneracy_tol of equal energy carry no dissipator (zero-frequency emission
// is excluded at T = 0).
struct JumpSet {
    DressedBasis basis;
    Eigen::MatrixXd C1, C2, C3;   // transition matrices in the dressed basis
    Eigen::MatrixXd gain;         // gain(j,k) = total rate of k -> j
    Eigen::VectorXd loss;         // loss(k) = sum_j gain(j,k)
    std::vector<Jump> jumps;
    double degeneracy_tol = 1e-9;

    int dim() const { return basis.dim(); }
};

JumpSet build_jumps(const SystemParams& params, const TruncatedSpace& space,
                    const DampingRates& rates);

// X^- = sum_{k, j<k} C3(j,k) |eps_j><eps_k| (strictly lower triangular in the
// energy-sorted dressed basis); X^+ its adjoint.
struct XOperators {
    Eigen::MatrixXd minus;
    Eigen::MatrixXd plus;
    Eigen::MatrixXd plus_minus;          // X+ X-
    Eigen::MatrixXd plus2_minus2;        // X+ X+ X- X-
};

XOperators x_operators(const JumpSet& jumps);

// Phi_out = gamma3 <X+ X->; rho in the dressed basis.
double photon_flux(const Eigen::MatrixXcd& rho, const XOperators& x, const DampingRates& rates);

// G2 = <X+ X+ X- X-> / <X+ X->^2; throws std::invalid_argument on zero denominator.
double g2_equal_time(const Eigen::MatrixXcd& rho, const XOperators& x);

struct MasterOptions {
    dynamics::Scheme scheme = dynamics::Scheme::dressed_rk4;
    double dt_max = 0.0;       // 0 -> scheme default
    double sample_dt = 0.2;
    double eig_dt = 50.0;      // cadence of positivity checks
    double trace_tol = 1e-6;
    double min_eig_floor = -1e-5;
};

struct MasterTrajectory {
    std::vector<double> times;
    std::vector<double> phi_out;
    std::vector<double> trace;
    std::vector<double> eig_times;
    std::vector<double> min_eig;
    Eigen::MatrixXcd rho_final;  // dressed basis, lab frame
    double dt = 0.0;
};

// Integrates the dressed-basis master equation from rho0 (dressed basis).
// Hermiticity is restored by symmetrization every step; trace and positivity
// are monitored and violations throw std::runtime_error.
MasterTrajectory master_evolve(const Eigen::MatrixXcd& rho0, const SystemParams& params,
                               const TruncatedSpace& space, const DampingRates& rates,
                               double t_final, const MasterOptions& options = {});

// |eps_0><eps_0| (= |b,0><b,0| for the parameter regimes here).
Eigen::MatrixXcd ground_state_density(const JumpSet& jumps);

struct SteadyOptions {
    MasterOptions master;
    double window = 0.0;        // 0 -> 20 drive periods
    double rel_tol = 5e-3;      // windowed-average convergence threshold
    int consecutive = 3;        // required consecutive converged windows
    int lag_windows = 25;       // long-lag flatness guard against slow transients
    double t_budget = 30000.0;  // give up beyond this time
};

struct SteadyStateResult {
    Eigen::MatrixXcd rho_bar;   // window-averaged lab-frame density matrix
    double phi_ss = 0.0;
    double g2_ss = 0.0;
    double t_converged = 0.0;
    int windows = 0;
    std::vector<double> window_flux;
};

// Bichromatic driving leaves no strict fixed point, so the steady state is the
// sliding-window average; integrates until consecutive windowed fluxes agree
// within rel_tol. Throws std::runtime_error when t_budget is exhausted first.
SteadyStateResult steady_state_numeric(const SystemParams& params, const TruncatedSpace& space,
                                       const DampingRates& rates,
                                       const SteadyOptions& options = {});

// Relative change of the windowed steady flux when the Fock cutoff doubles.
double steady_truncation_drift(const SystemParams& params, int n_max,
                               const DampingRates& rates, const SteadyOptions& options = {});

// ---------------------------------------------------------------- 4-level oracle

// Relaxation coefficients of the resonant reduction, computed from the
// transition matrices over {|b,0>, |b,1>, |b,2>, |E_0>} (never hand-assigned).
struct FourLevelRates {
    double G21 = 0.0, G31 = 0.0, G32 = 0.0;
    double G41 = 0.0, G42 = 0.0, G43 = 0.0;

    double x() const { return G31 + G32; }
    double y() const { return G41 + G42 + G43; }
};

FourLevelRates lambda_rates(const rabi::RabiSpectrum& spectrum, const DampingRates& rates);

// Steady state of the time-independent Lambda Liouvillian (H'' plus the
// FourLevelRates dissipators) via the null space of its 16x16 matrix.
// Throws std::runtime_error when the null space dimension is not 1.
Eigen::MatrixXcd lambda_liouvillian_steady(const SystemParams& params,
                                           const rabi::RabiSpectrum& spectrum,
                                           const DampingRates& rates);

struct ResonantSS {
    Eigen::MatrixXcd rho{4, 4};
    double x = 0.0, y = 0.0, A1 = 0.0;
};

// Closed-form resonant steady state; basis order (|b,0>, |b,1>, |b,2>, |E_0>).
// Throws std::invalid_argument when the normalizer A1 vanishes.
ResonantSS appendix_resonant_ss(double Omega_p_prime, double Omega_s_prime,
                                const FourLevelRates& rates);

struct OffResonantSS {
    Eigen::MatrixXcd rho{3, 3};
    double A2 = 0.0;
};

// Closed-form off-resonant steady state over {|b,0>, |b,1>, |b,2>} with the
// cavity-ladder rates G21, G31, G32.
OffResonantSS appendix_offres_ss(Complex g02, double Delta0, double Delta2,
                                 double G21, double G31, double G32);

// gamma3 (rho22 + 2 rho33) -- the flux carried by the b-ladder populations.
double phi_ss_analytic(const Eigen::MatrixXcd& rho_ss, double gamma3);

// 2 rho33 / (rho22 + 2 rho33)^2; throws std::invalid_argument on zero denominator.
double g2_ss_analytic(const Eigen::MatrixXcd& rho_ss);

} // namespace uscraman::lindblad
