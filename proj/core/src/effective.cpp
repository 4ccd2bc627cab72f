#include "uscraman/effective.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace uscraman::effective {

namespace {

constexpr double kDenominatorFloor = 1e-6;   // in units of omega_c
constexpr double kRamanTol = 1e-9;

int capped_cutoff(int m_cutoff, const RabiSpectrum& spectrum) {
    if (m_cutoff <= 0) throw std::invalid_argument("m_cutoff must be positive");
    return std::min(m_cutoff, spectrum.levels());
}

void require_raman_resonance(const SystemParams& params) {
    if (std::abs((params.omega_p - params.omega_s) - 2.0 * params.omega_c)
        > kRamanTol * params.omega_c) {
        throw std::invalid_argument("drives are off the Raman resonance omega_p - omega_s = 2 omega_c");
    }
}

double checked_detuning(const SystemParams& params, const RabiSpectrum& spectrum,
                        int m, int n, int q, Drive l) {
    const double value = detuning(params, spectrum, m, n, q, l);
    if (std::abs(value) < kDenominatorFloor * params.omega_c) {
        throw std::runtime_error("near-resonant denominator: adiabatic elimination invalid");
    }
    return value;
}

} // namespace

double raman_resonant_omega_s(double omega_p, double omega_c) {
    return omega_p - 2.0 * omega_c;
}

double drive_coupling(const SystemParams& params, const RabiSpectrum& spectrum,
                      Drive l, int m, int n) {
    const double strength = (l == Drive::pump) ? params.Omega_p : params.Omega_s;
    return 0.5 * strength * spectrum.c(m, n);
}

double detuning(const SystemParams& params, const RabiSpectrum& spectrum,
                int m, int n, int q, Drive l) {
    const double omega_l = (l == Drive::pump) ? params.omega_p : params.omega_s;
    return spectrum.energies(m) - params.omega_b - n * params.omega_c + q * omega_l;
}

Complex effective_g(int n, const SystemParams& params, const RabiSpectrum& spectrum,
                    int m_cutoff) {
    require_raman_resonance(params);
    const int cut = capped_cutoff(m_cutoff, spectrum);
    Complex total{0.0, 0.0};
    for (int m = 0; m < cut; ++m) {
        const Complex op = drive_coupling(params, spectrum, Drive::pump, m, n);
        const Complex os = drive_coupling(params, spectrum, Drive::stokes, m, n + 2);
        if (op == 0.0 && os == 0.0) continue;
        const double d_s = checked_detuning(params, spectrum, m, n, +1, Drive::stokes);
        const double d_p = checked_detuning(params, spectrum, m, n, -1, Drive::pump);
        total += op * std::conj(os) * (1.0 / d_s + 1.0 / d_p);
    }
    return -total;
}

double stark_shift(int n, const SystemParams& params, const RabiSpectrum& spectrum,
                   int m_cutoff) {
    const int cut = capped_cutoff(m_cutoff, spectrum);
    double total = 0.0;
    for (int m = 0; m < cut; ++m) {
        for (const int q : {+1, -1}) {
            for (const Drive l : {Drive::pump, Drive::stokes}) {
                const double coupling = drive_coupling(params, spectrum, l, m, n);
                if (coupling == 0.0) continue;
                total += coupling * coupling / checked_detuning(params, spectrum, m, n, q, l);
            }
        }
    }
    return -total;
}

double stark_balance_F(double x, const SystemParams& params, const RabiSpectrum& spectrum,
                       int m_cutoff) {
    const int cut = capped_cutoff(m_cutoff, spectrum);
    double sum2 = 0.0;
    double sum0 = 0.0;
    for (int m = 0; m < cut; ++m) {
        const double d2 = spectrum.energies(m) - params.omega_b - 2.0 * params.omega_c;
        const double d0 = spectrum.energies(m) - params.omega_b;
        sum2 += spectrum.c(m, 2) * spectrum.c(m, 2) * d2 / (d2 * d2 - x * x);
        sum0 += spectrum.c(m, 0) * spectrum.c(m, 0) * d0 / (d0 * d0 - x * x);
    }
    return sum2 - sum0;
}

double balance_ratio_from_F(double f_omega_p, double f_omega_s) {
    if (f_omega_p * f_omega_s >= 0.0) {
        throw std::invalid_argument("F(omega_p) and F(omega_s) must have opposite signs");
    }
    return std::sqrt(-f_omega_p / f_omega_s);
}

double stark_balance_ratio(const SystemParams& params, const RabiSpectrum& spectrum,
                           int m_cutoff) {
    return balance_ratio_from_F(stark_balance_F(params.omega_p, params, spectrum, m_cutoff),
                                stark_balance_F(params.omega_s, params, spectrum, m_cutoff));
}

TwoLevelEffective two_level_effective(const SystemParams& params, const RabiSpectrum& spectrum,
                                      int m_cutoff) {
    TwoLevelEffective eff;
    eff.Delta0 = stark_shift(0, params, spectrum, m_cutoff);
    eff.Delta2 = stark_shift(2, params, spectrum, m_cutoff);
    eff.g02 = effective_g(0, params, spectrum, m_cutoff);
    return eff;
}

double two_level_p2(double t, const TwoLevelEffective& eff) {
    const double g = std::abs(eff.g02);
    const double det = eff.Delta2 - eff.Delta0;
    const double rabi2 = 4.0 * g * g + det * det;
    if (rabi2 == 0.0) return 0.0;
    const double s = std::sin(0.5 * std::sqrt(rabi2) * t);
    return (4.0 * g * g / rabi2) * s * s;
}

LambdaSystem lambda_system(const SystemParams& params, const RabiSpectrum& spectrum) {
    const double c00 = spectrum.c(0, 0);
    const double c02 = spectrum.c(0, 2);
    if (std::abs(c02) < 1e-14) {
        throw std::invalid_argument("lambda_system: c02 = 0 (JC regime), eta_c undefined");
    }
    if (params.Omega_p <= 0.0) {
        throw std::invalid_argument("lambda_system: requires a pump drive Omega_p > 0");
    }
    const double resonant_omega_p = spectrum.energies(0) - params.omega_b;
    if (std::abs(params.omega_p - resonant_omega_p) > 1e-8 * params.omega_c
        || std::abs(params.omega_s - (resonant_omega_p - 2.0 * params.omega_c))
               > 1e-8 * params.omega_c) {
        throw std::invalid_argument(
            "lambda_system: requires omega_p = E0 - omega_b and omega_s = omega_p - 2 omega_c");
    }
    LambdaSystem sys;
    sys.c00 = c00;
    sys.c02 = c02;
    sys.eta = params.Omega_s / params.Omega_p;
    sys.eta_c = std::abs(c00) / std::abs(c02);
    sys.Omega_p_prime = 0.5 * params.Omega_p * c00;
    sys.Omega_s_prime = 0.5 * params.Omega_s * c02;
    sys.Omega = 0.5 * params.Omega_p
              * std::sqrt(c00 * c00 + sys.eta * sys.eta * c02 * c02);
    return sys;
}

double resonant_p2(double t, const LambdaSystem& sys) {
    const double s = std::sin(0.5 * sys.Omega * t);
    return resonant_p2_max(sys) * s * s * s * s;
}

double resonant_p2_max(const LambdaSystem& sys) {
    const double x = sys.c00 * sys.c00;
    const double y = sys.c02 * sys.c02;
    const double denom = x + sys.eta * sys.eta * y;
    return 4.0 * sys.eta * sys.eta * x * y / (denom * denom);
}

Eigen::VectorXcd dark_state(const LambdaSystem& sys, const TruncatedSpace& space) {
    const double norm = std::hypot(sys.Omega_p_prime, sys.Omega_s_prime);
    if (norm == 0.0) {
        throw std::invalid_argument("dark_state: both drive couplings vanish");
    }
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(space.dim);
    psi(space.index(hilbert::Level::b, 0)) = sys.Omega_s_prime / norm;
    psi(space.index(hilbert::Level::b, 2)) = -sys.Omega_p_prime / norm;
    return psi;
}

Eigen::MatrixXcd lambda_hamiltonian(const LambdaSystem& sys, const TruncatedSpace& space,
                                    const RabiSpectrum& spectrum) {
    const int N = space.n_max + 1;
    Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(space.dim);
    for (int n = 0; n < N; ++n) {
        e0(space.index(hilbert::Level::g, n)) = spectrum.c(0, n);
        e0(space.index(hilbert::Level::e, n)) = spectrum.d(0, n);
    }
    Eigen::VectorXcd b0 = Eigen::VectorXcd::Zero(space.dim);
    Eigen::VectorXcd b2 = Eigen::VectorXcd::Zero(space.dim);
    b0(space.index(hilbert::Level::b, 0)) = 1.0;
    b2(space.index(hilbert::Level::b, 2)) = 1.0;
    Eigen::MatrixXcd h = sys.Omega_p_prime * (e0 * b0.adjoint())
                       + sys.Omega_s_prime * (e0 * b2.adjoint());
    return h + h.adjoint().eval();
}

ValidityMonitors validity_monitors(const SystemParams& params, const RabiSpectrum& spectrum,
                                   int m_cutoff) {
    const int cut = capped_cutoff(m_cutoff, spectrum);
    ValidityMonitors mon;
    mon.stokes_static = params.omega_s <= 0.0;
    for (int m = 0; m < cut; ++m) {
        for (const int n : {0, 2}) {
            for (const Drive l : {Drive::pump, Drive::stokes}) {
                const double coupling = drive_coupling(params, spectrum, l, m, n);
                const double denom = detuning(params, spectrum, m, n, -1, l);
                if (denom == 0.0) continue;
                const double ratio = std::abs(coupling / denom);
                mon.detuned_weak_drive_max = std::max(mon.detuned_weak_drive_max, ratio);
                if (m >= 1) {
                    mon.resonant_weak_drive_max = std::max(mon.resonant_weak_drive_max, ratio);
                }
            }
        }
    }
    try {
        const double g02 = std::abs(effective_g(0, params, spectrum, m_cutoff));
        const double g24 = std::abs(effective_g(2, params, spectrum, m_cutoff));
        mon.g24_over_g02 = (g02 == 0.0) ? 0.0 : g24 / g02;
    } catch (const std::runtime_error&) {
        // a resonant denominator means the two-level reduction does not apply;
        // the ratio is meaningless there
        mon.g24_over_g02 = std::numeric_limits<double>::quiet_NaN();
    }
    return mon;
}

} // namespace uscraman::effective
