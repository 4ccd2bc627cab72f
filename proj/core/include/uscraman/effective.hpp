// effective.hpp — adiabatic elimination of the Rabi levels: drive couplings,
// two-photon coupling g_{n,n+2}, AC Stark shifts, balance ratio, Lambda system
#pragma once

#include "uscraman/rabi.hpp"

#include <complex>

namespace uscraman::effective {

using hilbert::Complex;
using rabi::RabiSpectrum;
using rabi::SystemParams;
using rabi::TruncatedSpace;

enum class Drive { pump, stokes };

// Raman resonance partner of the pump: omega_s = omega_p - 2 omega_c. A
// nonpositive result means a static (or unphysical) Stokes drive; callers
// surface that as a warning.
double raman_resonant_omega_s(double omega_p, double omega_c = 1.0);

// Omega_{l,mn} = (Omega_l / 2) c_mn
double drive_coupling(const SystemParams& params, const RabiSpectrum& spectrum,
                      Drive l, int m, int n);

// delta_{mn,ql} = E_m - omega_b - n omega_c + q omega_l, q in {+1,-1}
double detuning(const SystemParams& params, const RabiSpectrum& spectrum,
                int m, int n, int q, Drive l);

// Two-photon coupling g_{n,n+2}; the m-sum runs to m_cutoff (capped at the
// spectrum size). Throws std::runtime_error when a detuning in the sum falls
// below 1e-6 omega_c in magnitude (adiabatic elimination invalid) and
// std::invalid_argument when the drives are off Raman resonance.
Complex effective_g(int n, const SystemParams& params, const RabiSpectrum& spectrum,
                    int m_cutoff);

// AC Stark shift Delta_n, same summation/cutoff/error conventions.
double stark_shift(int n, const SystemParams& params, const RabiSpectrum& spectrum,
                   int m_cutoff);

// F(x): difference of the Lorentzian-weighted sums over |c_m2|^2 and |c_m0|^2.
double stark_balance_F(double x, const SystemParams& params, const RabiSpectrum& spectrum,
                       int m_cutoff);

// sqrt(-Fp/Fs); throws std::invalid_argument when the two values share a sign.
double balance_ratio_from_F(double f_omega_p, double f_omega_s);

// Omega_s/Omega_p that balances the Stark shifts (Delta_0 = Delta_2).
double stark_balance_ratio(const SystemParams& params, const RabiSpectrum& spectrum,
                           int m_cutoff);

// Effective two-level model on {|b,0>, |b,2>}.
struct TwoLevelEffective {
    double Delta0 = 0.0;
    double Delta2 = 0.0;
    Complex g02{0.0, 0.0};
};

TwoLevelEffective two_level_effective(const SystemParams& params, const RabiSpectrum& spectrum,
                                      int m_cutoff);

// P2(t) for the initial state |b,0> under the two-level model: detuned Rabi
// formula, sin^2(|g02| t) at balance, full transfer at t = pi/(2|g02|).
double two_level_p2(double t, const TwoLevelEffective& eff);

// Resonant Lambda reduction {|b,0>, |b,2>, |E_0>}.
struct LambdaSystem {
    double Omega_p_prime = 0.0;  // (Omega_p/2) c00
    double Omega_s_prime = 0.0;  // (Omega_s/2) c02
    double Omega = 0.0;          // generalized Rabi frequency
    double eta = 0.0;            // Omega_s / Omega_p
    double eta_c = 0.0;          // |c00| / |c02|
    double c00 = 0.0;
    double c02 = 0.0;
};

// Requires c02 != 0 (throws std::invalid_argument in the JC limit).
LambdaSystem lambda_system(const SystemParams& params, const RabiSpectrum& spectrum);

// P2(t) of the Lambda model: prefactor * sin^4(Omega t / 2).
double resonant_p2(double t, const LambdaSystem& sys);
double resonant_p2_max(const LambdaSystem& sys);

// Dark state (Omega_s'|b,0> - Omega_p'|b,2>)/norm in the TruncatedSpace basis.
Eigen::VectorXcd dark_state(const LambdaSystem& sys, const TruncatedSpace& space);

// The Lambda Hamiltonian embedded in the full space (for residual checks).
Eigen::MatrixXcd lambda_hamiltonian(const LambdaSystem& sys, const TruncatedSpace& space,
                                    const RabiSpectrum& spectrum);

// Regime diagnostics exposed so callers can tell when the reductions are
// untrustworthy without re-deriving them.
struct ValidityMonitors {
    double resonant_weak_drive_max = 0.0;  // max over m>=1 of |Omega_{l,mn}/(E_m-omega_b-n omega_c-omega_l)|
    double detuned_weak_drive_max = 0.0;   // same including m=0
    double g24_over_g02 = 0.0;             // |g_{2,4}| / |g_{0,2}|
    bool stokes_static = false;            // omega_s <= 0
};

ValidityMonitors validity_monitors(const SystemParams& params, const RabiSpectrum& spectrum,
                                   int m_cutoff);

} // namespace uscraman::effective
