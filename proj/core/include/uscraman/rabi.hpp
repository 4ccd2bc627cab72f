// rabi.hpp — quantum Rabi Hamiltonian, its spectrum/coefficients, dressed basis of H0
#pragma once

#include "uscraman/hilbert.hpp"

#include <string>
#include <vector>

namespace uscraman::rabi {

using hilbert::ComplexMatrix;
using hilbert::Level;
using hilbert::TruncatedSpace;

// All frequencies and couplings in units of omega_c (and time in 1/omega_c).
struct SystemParams {
    double omega_c = 1.0;
    double omega_b = -5.0;
    double omega_e = 1.0;
    double omega_g = 0.0;
    double lambda = 0.0;    // atom-cavity coupling
    double omega_p = 0.0;   // pump frequency
    double omega_s = 0.0;   // Stokes frequency
    double Omega_p = 0.0;   // pump strength
    double Omega_s = 0.0;   // Stokes strength

    // Throws std::invalid_argument on violated invariants.
    void validate() const;
    bool resonant_cavity() const;  // omega_e - omega_g == omega_c (within 1e-12)
};

// Eigenpairs of the g/e sector of H_R with real coefficients
// c[m][n] = <E_m|g,n>, d[m][n] = <E_m|e,n>. Sign gauge: the first coefficient
// above 1e-10 in the order (c_m0..c_mN, d_m0..d_mN) is positive.
struct RabiSpectrum {
    Eigen::VectorXd energies;  // ascending, size 2*(n_max+1)
    Eigen::MatrixXd c;         // rows m, cols n
    Eigen::MatrixXd d;

    int n_max() const { return static_cast<int>(c.cols()) - 1; }
    int levels() const { return static_cast<int>(energies.size()); }
};

// H_R = omega_e|e><e| + omega_g|g><g| + omega_c a^dag a
//       + lambda (a+a^dag)(|e><g|+|g><e|)   on the full space.
// The b block carries omega_c a^dag a only.
ComplexMatrix rabi_hamiltonian(const SystemParams& params, const TruncatedSpace& space);

// H0 = H_R + omega_b |b><b|.
ComplexMatrix h0_hamiltonian(const SystemParams& params, const TruncatedSpace& space);

// Diagonalizes the g/e sector of H_R only.
RabiSpectrum rabi_spectrum(const SystemParams& params, const TruncatedSpace& space);

struct SweepRow {
    double lambda = 0.0;
    double c00 = 0.0, c02 = 0.0, c04 = 0.0;  // |coefficients| of the ground state
};

// Ground-state coefficient sweep over coupling strengths. Requires the
// resonant configuration omega_e - omega_g = omega_c.
std::vector<SweepRow> coefficient_sweep(const std::vector<double>& lambdas,
                                        const SystemParams& base,
                                        const TruncatedSpace& space,
                                        int threads = 1);

enum class StateKind { BLadder = 0, Rabi = 1 };

struct DressedState {
    double energy = 0.0;
    StateKind kind = StateKind::BLadder;
    int index = 0;  // Fock n for BLadder, Rabi level m otherwise
};

// Energy-sorted eigenbasis of H0: the b-ladder |b,n> at omega_b + n omega_c
// joined with the Rabi eigenstates |E_m>. Ties keep BLadder entries first.
struct DressedBasis {
    std::vector<DressedState> states;
    Eigen::VectorXd energies;   // states[j].energy, ascending
    Eigen::MatrixXd vectors;    // column j = |eps_j> in the TruncatedSpace basis (real)

    int dim() const { return static_cast<int>(states.size()); }
    // Position of a tagged state in the sorted order; -1 if absent.
    int find(StateKind kind, int index) const;
};

DressedBasis h0_dressed_basis(const SystemParams& params, const TruncatedSpace& space);
DressedBasis h0_dressed_basis(const SystemParams& params, const TruncatedSpace& space,
                              const RabiSpectrum& spectrum);

// Matrix of a space-basis operator in the dressed basis: B^T O B (real output;
// all dressed vectors are real).
Eigen::MatrixXd dressed_sandwich(const DressedBasis& basis, const ComplexMatrix& op);

// <eps_j|(|b><g| + |g><b|)|eps_k>: the operator the external drives couple to.
Eigen::MatrixXd drive_operator(const DressedBasis& basis, const TruncatedSpace& space);

// Relative change of a scalar diagnostic when the Fock cutoff doubles,
// |Q(n_max) - Q(2 n_max)| / |Q(2 n_max)|. Q is eta_c for "eta_c", ground Rabi
// energy for "E0".
double truncation_drift(const SystemParams& params, int n_max, const std::string& quantity);

} // namespace uscraman::rabi
