#include "abring/ring_model.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "abring/error.hpp"

namespace abring {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool finite(cdouble z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

cdouble polar_phase(double magnitude, double phase) { return std::polar(magnitude, phase); }

}  // namespace

RingConfig::RingConfig(double t0, double t, cdouble e_u, cdouble e_d, double phi)
    : t0_(t0), t_(t), e_u_(e_u), e_d_(e_d), phi_(phi) {
    if (!(std::isfinite(t0) && t0 > 0.0)) {
        throw InvalidParameter("t0 must be finite and > 0, got " + std::to_string(t0));
    }
    if (!(std::isfinite(t) && t > 0.0)) {
        throw InvalidParameter("t must be finite and > 0, got " + std::to_string(t));
    }
    if (!finite(e_u) || !finite(e_d)) {
        throw InvalidParameter("dot energies must be finite");
    }
    if (!std::isfinite(phi)) {
        throw InvalidParameter("phi must be finite");
    }
    const double gamma = broadening();
    if (!(std::isfinite(gamma) && gamma > 0.0)) {
        throw InvalidParameter("broadening t^2/t0 must be finite and positive");
    }
}

RingConfig RingConfig::from_broadening(double t0, double broadening, cdouble e_u, cdouble e_d,
                                       double phi) {
    if (!(std::isfinite(broadening) && broadening > 0.0) || !(std::isfinite(t0) && t0 > 0.0)) {
        throw InvalidParameter("broadening and t0 must be finite and > 0");
    }
    return {t0, std::sqrt(broadening * t0), e_u, e_d, phi};
}

double RingConfig::phi_reduced() const noexcept {
    double r = std::fmod(phi_, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    return r;
}

double GaugeAllocation::loop_phase() const {
    return std::arg(uL * std::conj(uR) * dR * std::conj(dL));
}

GaugeAllocation symmetric_allocation(const RingConfig& config) {
    const double t = config.t();
    const double q = config.phi() / 4.0;
    return {
        .uL = polar_phase(t, q),
        .uR = polar_phase(t, -q),
        .dL = polar_phase(t, -q),
        .dR = polar_phase(t, q),
    };
}

GaugeAllocation asymmetric_allocation(const RingConfig& config) {
    const double t = config.t();
    return {
        .uL = polar_phase(t, config.phi()),
        .uR = {t, 0.0},
        .dL = {t, 0.0},
        .dR = {t, 0.0},
    };
}

GaugeAllocation random_allocation(const RingConfig& config, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    const double th_uL = angle(rng);
    const double th_uR = angle(rng);
    const double th_dL = angle(rng);
    const double th_dR = config.phi() - th_uL + th_uR + th_dL;
    const double t = config.t();
    return {
        .uL = polar_phase(t, th_uL),
        .uR = polar_phase(t, th_uR),
        .dL = polar_phase(t, th_dL),
        .dR = polar_phase(t, th_dR),
    };
}

Momentum::Momentum(double t0, double k) : t0_(t0), k_(k), omega_(-2.0 * t0 * std::cos(k)) {
    if (!(k > 0.0 && k < std::numbers::pi)) {
        throw NonPropagatingMode("k must lie strictly inside (0, pi), got " + std::to_string(k));
    }
}

Momentum dispersion(const RingConfig& config, double k) { return {config.t0(), k}; }

Momentum dispersion_at(double t0, double k) {
    if (!(std::isfinite(t0) && t0 > 0.0)) throw InvalidParameter("t0 must be finite and > 0");
    return {t0, k};
}

Momentum momentum_for_energy(const RingConfig& config, double omega) {
    const double c = -omega / (2.0 * config.t0());
    if (!(c > -1.0 && c < 1.0)) {
        throw NonPropagatingMode("energy " + std::to_string(omega) + " lies outside the open band");
    }
    return {config.t0(), std::acos(c)};
}

}  // namespace abring
