// dynamics.hpp — exact closed-system propagation of the driven Hamiltonian and
// comparison against the effective reductions
#pragma once

#include "uscraman/effective.hpp"
#include "uscraman/rabi.hpp"

#include <map>
#include <string>
#include <vector>

namespace uscraman::dynamics {

using hilbert::ComplexMatrix;
using rabi::SystemParams;
using rabi::TruncatedSpace;

// H_S(t) = H0 + (Omega_p cos omega_p t + Omega_s cos omega_s t)(|b><g|+|g><b|)
ComplexMatrix full_hamiltonian(const SystemParams& params, const TruncatedSpace& space, double t);

// Fixed-step 4th-order schemes. `dressed_rk4` integrates in the interaction
// picture of H0 over the dressed basis, where the step size is limited by the
// drive amplitudes rather than the spectral radius; `lab_rk4` integrates the
// Schrodinger equation directly and needs dt_max <= 0.02 / max(|eps_j|, omega_p).
enum class Scheme { dressed_rk4, lab_rk4 };

struct EvolveOptions {
    Scheme scheme = Scheme::dressed_rk4;
    double dt_max = 0.0;      // 0 -> scheme default
    double sample_dt = 1.0;   // observable recording cadence
    double norm_tol = 1e-6;   // hard failure threshold on norm drift
};

struct Trajectory {
    std::vector<double> times;
    std::map<std::string, std::vector<double>> series;  // P2, pop_b0, pop_E0, norm
    Eigen::VectorXcd final_state;  // lab frame, TruncatedSpace basis
    double norm_drift = 0.0;
    double dt = 0.0;

    const std::vector<double>& at(const std::string& name) const;
};

// Propagates |psi0> (TruncatedSpace basis, unit norm) to t_final recording
// P2(t) = |<b,2|psi>|^2 and companions. Throws std::runtime_error when the
// norm drifts beyond norm_tol.
Trajectory evolve(const Eigen::VectorXcd& psi0, const SystemParams& params,
                  const TruncatedSpace& space, double t_final,
                  const EvolveOptions& options = {});

Eigen::VectorXcd basis_state(const TruncatedSpace& space, hilbert::Level level, int n);

enum class ComparisonMode { off_resonant, resonant };

struct P2Comparison {
    std::vector<double> times;
    std::vector<double> p2_exact;
    std::vector<double> p2_effective;
    std::vector<double> norm;
    double sup_mismatch = 0.0;
    effective::ValidityMonitors monitors;
};

// Exact propagation from |b,0> paired with the matching effective prediction
// (two-level model off resonance, Lambda model on resonance) on a shared grid.
// t_final = 0 picks one effective period.
P2Comparison p2_comparison(const SystemParams& params, const TruncatedSpace& space,
                           ComparisonMode mode, double t_final = 0.0,
                           const EvolveOptions& options = {}, int m_cutoff = 40);

} // namespace uscraman::dynamics
