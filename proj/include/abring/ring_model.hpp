#pragma once

#include <complex>
#include <cstdint>

namespace abring {

using cdouble = std::complex<double>;

/// Physical parameters of the two-dot ring between two tight-binding leads.
///
/// Energies are in units of the lead hopping `t0`. Each dot level is
/// E = eps + i*gamma; gamma > 0 is gain and gamma < 0 is loss. `phi` is the
/// total flux phase threading the ring, in radians, kept unreduced.
class RingConfig {
public:
    /// Throws InvalidParameter unless t0 > 0, t > 0 and every value is finite.
    RingConfig(double t0, double t, cdouble e_u, cdouble e_d, double phi);

    /// Builds a config from the level broadening Gamma = t^2 / t0 instead of t.
    static RingConfig from_broadening(double t0, double broadening, cdouble e_u, cdouble e_d,
                                      double phi);

    double t0() const noexcept { return t0_; }
    double t() const noexcept { return t_; }
    cdouble e_u() const noexcept { return e_u_; }
    cdouble e_d() const noexcept { return e_d_; }
    double phi() const noexcept { return phi_; }

    /// Gamma = t^2 / t0.
    double broadening() const noexcept { return t_ * t_ / t0_; }

    /// Flux phase reduced to [0, 2*pi) for reporting.
    double phi_reduced() const noexcept;

    RingConfig with_levels(cdouble e_u, cdouble e_d) const { return {t0_, t_, e_u, e_d, phi_}; }
    RingConfig with_phi(double phi) const { return {t0_, t_, e_u_, e_d_, phi}; }

    friend bool operator==(const RingConfig&, const RingConfig&) = default;

private:
    double t0_;
    double t_;
    cdouble e_u_;
    cdouble e_d_;
    double phi_;
};

/// The four dot-lead tunneling amplitudes for one choice of gauge.
struct GaugeAllocation {
    cdouble uL;
    cdouble uR;
    cdouble dL;
    cdouble dR;

    /// arg(uL * conj(uR) * dR * conj(dL)), in (-pi, pi]. Equals phi mod 2*pi
    /// for every allocation realizing flux phi.
    double loop_phase() const;

    friend bool operator==(const GaugeAllocation&, const GaugeAllocation&) = default;
};

/// Flux split evenly as +-phi/4 over the four bonds.
GaugeAllocation symmetric_allocation(const RingConfig& config);

/// Whole flux phase carried by the upper-left bond.
GaugeAllocation asymmetric_allocation(const RingConfig& config);

/// Three bond phases drawn uniformly from [0, 2*pi); the fourth closes the
/// loop so the total flux is exactly phi. Deterministic for a fixed seed.
GaugeAllocation random_allocation(const RingConfig& config, std::uint64_t seed);

/// Propagating lead mode. omega is always derived from k.
class Momentum {
public:
    double k() const noexcept { return k_; }
    double omega() const noexcept { return omega_; }
    double t0() const noexcept { return t0_; }

private:
    friend Momentum dispersion(const RingConfig&, double);
    friend Momentum dispersion_at(double, double);
    friend Momentum momentum_for_energy(const RingConfig&, double);
    Momentum(double t0, double k);

    double t0_;
    double k_;
    double omega_;
};

/// omega = -2 t0 cos(k). Throws NonPropagatingMode unless 0 < k < pi.
Momentum dispersion(const RingConfig& config, double k);
Momentum dispersion_at(double t0, double k);

/// Inverse dispersion: the momentum whose band energy is `omega`. Throws
/// NonPropagatingMode unless |omega| < 2 t0.
Momentum momentum_for_energy(const RingConfig& config, double omega);

}  // namespace abring
