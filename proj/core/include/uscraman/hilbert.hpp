// hilbert.hpp — truncated {b,g,e} x Fock space, elementary operators, Hermitian eigensolver
#pragma once

#include <Eigen/Dense>
#include <complex>

namespace uscraman::hilbert {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

// Atomic levels of the cascade configuration. |b> is the bottom level, the
// upper two (|g>, |e>) couple to the cavity mode.
enum class Level : int { b = 0, g = 1, e = 2 };

// Composite basis |i, n> with atom-major ordering: the b-block occupies the
// first n_max+1 indices, then g, then e.
struct TruncatedSpace {
    int n_max = 0;
    int atom_dim = 3;
    int dim = 0;

    int index(Level a, int n) const { return static_cast<int>(a) * (n_max + 1) + n; }
    Level level_of(int idx) const { return static_cast<Level>(idx / (n_max + 1)); }
    int fock_of(int idx) const { return idx % (n_max + 1); }
};

// Throws std::invalid_argument for n_max < 2 (|b,2> must be representable).
TruncatedSpace build_space(int n_max);

// Cavity annihilation operator a: <i,n-1|a|i,n> = sqrt(n); identity on the atom.
ComplexMatrix annihilation(const TruncatedSpace& space);

// Atomic operator |i><j| as identity on the Fock factor.
ComplexMatrix atomic_transition(const TruncatedSpace& space, Level i, Level j);

// Fock-space matrix of (a + a^dag) alone, (n_max+1) x (n_max+1).
Eigen::MatrixXd quadrature_fock(int n_max);

struct EigenDecomposition {
    Eigen::VectorXd values;    // ascending
    ComplexMatrix vectors;     // orthonormal columns
};

bool is_hermitian(const ComplexMatrix& h, double rel_tol = 1e-10);

// Dense self-adjoint eigendecomposition. Throws std::invalid_argument when the
// input fails the Hermiticity tolerance (analytically built inputs that violate
// it indicate a bug upstream).
EigenDecomposition hermitian_eigen(const ComplexMatrix& h, double rel_tol = 1e-10);

} // namespace uscraman::hilbert
