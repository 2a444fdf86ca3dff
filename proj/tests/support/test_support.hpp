#pragma once

// Helpers shared by the unit tests and the acceptance binary: seeded
// parameter draws and a second, independent route to the transmission
// amplitude through the dot Green's function.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "abring/ring_model.hpp"

namespace abring::testing {

inline constexpr double kPi = std::numbers::pi;

/// |a - b| / max(1, |b|)
inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }
inline double rel_diff(cdouble a, cdouble b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

/// Distance between two angles on the circle, in [0, pi].
inline double angle_distance(double a, double b) {
    return std::abs(std::remainder(a - b, 2.0 * kPi));
}

/// One random ring configuration plus momentum and a seed for the random gauge.
struct Draw {
    RingConfig config;
    double k;
    std::uint64_t gauge_seed;
};

enum class Levels { general, hermitian, balanced };

/// Levels eps in [-1, 1], gamma in [-0.5, 0.5], phi in [0, 2 pi),
/// k in (0.1, pi - 0.1), broadening 0.1.
class DrawSource {
public:
    explicit DrawSource(std::uint64_t seed) : rng_(seed) {}

    Draw next(Levels levels = Levels::general) {
        std::uniform_real_distribution<double> eps(-1.0, 1.0);
        std::uniform_real_distribution<double> gam(-0.5, 0.5);
        std::uniform_real_distribution<double> phi(0.0, 2.0 * kPi);
        std::uniform_real_distribution<double> k(0.1, kPi - 0.1);
        cdouble e_u{eps(rng_), gam(rng_)};
        cdouble e_d{eps(rng_), gam(rng_)};
        if (levels == Levels::hermitian) {
            e_u = e_u.real();
            e_d = e_d.real();
        } else if (levels == Levels::balanced) {
            e_d = std::conj(e_u);
        }
        const double p = phi(rng_);
        const double kk = k(rng_);
        return {RingConfig::from_broadening(1.0, 0.1, e_u, e_d, p), kk, rng_()};
    }

private:
    std::mt19937_64 rng_;
};

/// Transmission amplitude from the retarded Green's function of the two
/// dots dressed by both lead self-energies,
///   tau = i (2 sin k / t0) v_R^T G conj(v_L),
///   G = (omega - diag(E) - Sigma_L - Sigma_R)^-1,
///   Sigma_X = g conj(v_X) v_X^T,  g = -exp(ik) / t0,
/// with v_X the dot couplings to the lead site next to the ring.
inline cdouble green_function_tau(const RingConfig& c, const GaugeAllocation& a, double k) {
    const double t0 = c.t0();
    const double omega = -2.0 * t0 * std::cos(k);
    const cdouble g = -std::exp(cdouble{0.0, k}) / t0;
    const std::array<cdouble, 2> vl{a.uL, a.dL};
    const std::array<cdouble, 2> vr{a.uR, a.dR};
    const std::array<cdouble, 2> e{c.e_u(), c.e_d()};

    std::array<std::array<cdouble, 2>, 2> m{};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            m[i][j] = -g * (std::conj(vl[i]) * vl[j] + std::conj(vr[i]) * vr[j]);
        }
        m[i][i] += omega - e[i];
    }
    const cdouble det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    const std::array<std::array<cdouble, 2>, 2> inv{{{m[1][1] / det, -m[0][1] / det},
                                                    {-m[1][0] / det, m[0][0] / det}}};
    cdouble sum{};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) sum += vr[i] * inv[i][j] * std::conj(vl[j]);
    }
    return cdouble{0.0, 2.0 * std::sin(k) / t0} * sum;
}

/// Ground truth for synthetic Fano profiles on the grid [-1, 1]. The
/// amplitude is positive (the branch fits are reported on) and every
/// parameter is bounded away from zero so relative errors are meaningful.
/// |q| * width stays below 0.6 so the dip lies on the grid.
struct FanoTruth {
    double q;
    double center;
    double width;
    double amplitude;
    double background;
};

class FanoTruthSource {
public:
    explicit FanoTruthSource(std::uint64_t seed) : rng_(seed) {}

    FanoTruth next() {
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        auto sign = [&] { return unit(rng_) < 0.5 ? -1.0 : 1.0; };
        auto log_uniform = [&](double lo, double hi) {
            return lo * std::pow(hi / lo, unit(rng_));
        };
        FanoTruth t{};
        t.width = log_uniform(0.03, 0.15);
        t.q = sign() * log_uniform(0.2, std::min(10.0, 0.6 / t.width));
        t.center = sign() * (0.02 + 0.18 * unit(rng_));
        t.amplitude = 0.2 + 1.8 * unit(rng_);
        t.background = sign() * (0.05 + 0.45 * unit(rng_));
        return t;
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace abring::testing
