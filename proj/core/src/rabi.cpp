#include "uscraman/rabi.hpp"

#include "uscraman/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace uscraman::rabi {

void SystemParams::validate() const {
    if (omega_c <= 0.0) throw std::invalid_argument("SystemParams: omega_c must be positive");
    if (lambda < 0.0) throw std::invalid_argument("SystemParams: lambda must be nonnegative");
    if (Omega_p < 0.0) throw std::invalid_argument("SystemParams: Omega_p must be nonnegative");
    if (Omega_s < 0.0) throw std::invalid_argument("SystemParams: Omega_s must be nonnegative");
}

bool SystemParams::resonant_cavity() const {
    return std::abs((omega_e - omega_g) - omega_c) <= 1e-12 * omega_c;
}

ComplexMatrix rabi_hamiltonian(const SystemParams& params, const TruncatedSpace& space) {
    params.validate();
    const ComplexMatrix a = hilbert::annihilation(space);
    const ComplexMatrix quad = a + a.adjoint();
    ComplexMatrix h = params.omega_e * hilbert::atomic_transition(space, Level::e, Level::e)
                    + params.omega_g * hilbert::atomic_transition(space, Level::g, Level::g)
                    + params.omega_c * (a.adjoint() * a).eval();
    const ComplexMatrix flip = hilbert::atomic_transition(space, Level::e, Level::g)
                             + hilbert::atomic_transition(space, Level::g, Level::e);
    h += params.lambda * (quad * flip).eval();
    return h;
}

ComplexMatrix h0_hamiltonian(const SystemParams& params, const TruncatedSpace& space) {
    return rabi_hamiltonian(params, space)
         + params.omega_b * hilbert::atomic_transition(space, Level::b, Level::b);
}

namespace {

// Rotate an eigenvector phase so the first coefficient above threshold comes
// out real positive, making c_mn, d_mn deterministic across eigensolvers.
void fix_gauge(Eigen::VectorXcd& v) {
    constexpr double kThreshold = 1e-10;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double mag = std::abs(v(i));
        if (mag > kThreshold) {
            v *= std::conj(v(i)) / mag;
            return;
        }
    }
}

} // namespace

RabiSpectrum rabi_spectrum(const SystemParams& params, const TruncatedSpace& space) {
    const int N = space.n_max + 1;
    const ComplexMatrix full = rabi_hamiltonian(params, space);
    // g/e sector occupies the trailing 2N rows/cols of the atom-major layout
    const ComplexMatrix sector = full.block(N, N, 2 * N, 2 * N);
    const hilbert::EigenDecomposition eig = hilbert::hermitian_eigen(sector);

    RabiSpectrum spec;
    spec.energies = eig.values;
    spec.c.resize(2 * N, N);
    spec.d.resize(2 * N, N);
    for (int m = 0; m < 2 * N; ++m) {
        Eigen::VectorXcd v = eig.vectors.col(m);
        fix_gauge(v);
        const double imag_max = v.imag().cwiseAbs().maxCoeff();
        if (imag_max > 1e-10) {
            throw std::runtime_error("rabi_spectrum: eigenvector not real after gauge fixing");
        }
        spec.c.row(m) = v.head(N).real();
        spec.d.row(m) = v.tail(N).real();
    }
    return spec;
}

std::vector<SweepRow> coefficient_sweep(const std::vector<double>& lambdas,
                                        const SystemParams& base,
                                        const TruncatedSpace& space,
                                        int threads) {
    if (!base.resonant_cavity()) {
        throw std::invalid_argument("coefficient_sweep: requires omega_e - omega_g = omega_c");
    }
    std::vector<SweepRow> rows(lambdas.size());
    parallel::for_indexed(lambdas.size(), threads, [&](std::size_t i) {
        SystemParams p = base;
        p.lambda = lambdas[i];
        const RabiSpectrum spec = rabi_spectrum(p, space);
        rows[i] = {lambdas[i], std::abs(spec.c(0, 0)), std::abs(spec.c(0, 2)),
                   std::abs(spec.c(0, 4))};
    });
    return rows;
}

int DressedBasis::find(StateKind kind, int index) const {
    for (int j = 0; j < dim(); ++j) {
        if (states[j].kind == kind && states[j].index == index) return j;
    }
    return -1;
}

DressedBasis h0_dressed_basis(const SystemParams& params, const TruncatedSpace& space) {
    return h0_dressed_basis(params, space, rabi_spectrum(params, space));
}

DressedBasis h0_dressed_basis(const SystemParams& params, const TruncatedSpace& space,
                              const RabiSpectrum& spectrum) {
    const int N = space.n_max + 1;
    const int dim = space.dim;

    // b-ladder entries listed before Rabi entries; stable sort keeps that
    // order at exact energy ties.
    std::vector<DressedState> states;
    states.reserve(dim);
    for (int n = 0; n < N; ++n) {
        states.push_back({params.omega_b + n * params.omega_c, StateKind::BLadder, n});
    }
    for (int m = 0; m < 2 * N; ++m) {
        states.push_back({spectrum.energies(m), StateKind::Rabi, m});
    }
    std::stable_sort(states.begin(), states.end(),
                     [](const DressedState& a, const DressedState& b) {
                         return a.energy < b.energy;
                     });

    DressedBasis basis;
    basis.states = std::move(states);
    basis.energies.resize(dim);
    basis.vectors = Eigen::MatrixXd::Zero(dim, dim);
    for (int j = 0; j < dim; ++j) {
        const DressedState& s = basis.states[j];
        basis.energies(j) = s.energy;
        if (s.kind == StateKind::BLadder) {
            basis.vectors(space.index(Level::b, s.index), j) = 1.0;
        } else {
            for (int n = 0; n < N; ++n) {
                basis.vectors(space.index(Level::g, n), j) = spectrum.c(s.index, n);
                basis.vectors(space.index(Level::e, n), j) = spectrum.d(s.index, n);
            }
        }
    }
    return basis;
}

Eigen::MatrixXd dressed_sandwich(const DressedBasis& basis, const ComplexMatrix& op) {
    if (op.rows() != basis.vectors.rows()) {
        throw std::invalid_argument("dressed_sandwich: operator dimension mismatch");
    }
    const ComplexMatrix out = basis.vectors.transpose().cast<hilbert::Complex>() * op
                            * basis.vectors.cast<hilbert::Complex>();
    if (out.imag().cwiseAbs().maxCoeff() > 1e-12) {
        throw std::runtime_error("dressed_sandwich: expected a real matrix in the dressed basis");
    }
    return out.real();
}

Eigen::MatrixXd drive_operator(const DressedBasis& basis, const TruncatedSpace& space) {
    const ComplexMatrix coupling = hilbert::atomic_transition(space, Level::b, Level::g)
                                 + hilbert::atomic_transition(space, Level::g, Level::b);
    return dressed_sandwich(basis, coupling);
}

double truncation_drift(const SystemParams& params, int n_max, const std::string& quantity) {
    auto value_at = [&](int nm) {
        const TruncatedSpace space = hilbert::build_space(nm);
        const RabiSpectrum spec = rabi_spectrum(params, space);
        if (quantity == "eta_c") return std::abs(spec.c(0, 0) / spec.c(0, 2));
        if (quantity == "E0") return spec.energies(0);
        throw std::invalid_argument("truncation_drift: unknown quantity " + quantity);
    };
    const double q1 = value_at(n_max);
    const double q2 = value_at(2 * n_max);
    return std::abs(q1 - q2) / std::max(std::abs(q2), 1e-300);
}

} // namespace uscraman::rabi
