#include "uscraman/hilbert.hpp"

#include <cmath>
#include <stdexcept>

namespace uscraman::hilbert {

TruncatedSpace build_space(int n_max) {
    if (n_max < 2) {
        throw std::invalid_argument("build_space: n_max must be >= 2 so that |b,2> exists");
    }
    TruncatedSpace space;
    space.n_max = n_max;
    space.dim = 3 * (n_max + 1);
    return space;
}

ComplexMatrix annihilation(const TruncatedSpace& space) {
    ComplexMatrix a = ComplexMatrix::Zero(space.dim, space.dim);
    for (int atom = 0; atom < 3; ++atom) {
        const int base = atom * (space.n_max + 1);
        for (int n = 1; n <= space.n_max; ++n) {
            a(base + n - 1, base + n) = std::sqrt(static_cast<double>(n));
        }
    }
    return a;
}

ComplexMatrix atomic_transition(const TruncatedSpace& space, Level i, Level j) {
    ComplexMatrix op = ComplexMatrix::Zero(space.dim, space.dim);
    const int bi = static_cast<int>(i) * (space.n_max + 1);
    const int bj = static_cast<int>(j) * (space.n_max + 1);
    for (int n = 0; n <= space.n_max; ++n) {
        op(bi + n, bj + n) = 1.0;
    }
    return op;
}

Eigen::MatrixXd quadrature_fock(int n_max) {
    const int N = n_max + 1;
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(N, N);
    for (int n = 0; n < n_max; ++n) {
        const double v = std::sqrt(static_cast<double>(n + 1));
        x(n, n + 1) = v;
        x(n + 1, n) = v;
    }
    return x;
}

bool is_hermitian(const ComplexMatrix& h, double rel_tol) {
    if (h.rows() != h.cols()) return false;
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    return (h - h.adjoint()).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

EigenDecomposition hermitian_eigen(const ComplexMatrix& h, double rel_tol) {
    if (h.rows() != h.cols() || h.rows() == 0) {
        throw std::invalid_argument("hermitian_eigen: matrix must be square and non-empty");
    }
    if (!is_hermitian(h, rel_tol)) {
        throw std::invalid_argument("hermitian_eigen: input is not Hermitian within tolerance");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (h + h.adjoint()));
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("hermitian_eigen: eigensolver failed to converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

} // namespace uscraman::hilbert
