#pragma once

#include "abring/ring_model.hpp"

namespace abring::closed_form {

/// Denominators below this fraction of their largest term are treated as zero.
inline constexpr double kSingularThreshold = 1e-12;

struct TransmissionResult {
    cdouble tau;
    /// |tau|^2; may exceed 1 when the dots exchange particles with the environment.
    double T = 0.0;
    /// Conductance in units of 2e^2/h.
    double G = 0.0;
};

struct FanoParameters {
    double q = 0.0;
    double alpha = 0.0;
};

enum class PtForm { symmetric, asymmetric };

/// Transmission amplitude for an arbitrary gauge allocation.
cdouble tau_general(const RingConfig& config, const GaugeAllocation& alloc, const Momentum& m);

/// Reflection amplitude for an arbitrary gauge allocation. Has its own
/// denominator, which can vanish where tau_general is regular.
cdouble r_general(const RingConfig& config, const GaugeAllocation& alloc, const Momentum& m);

/// Amplitude in the evenly split gauge.
cdouble tau_symmetric(const RingConfig& config, const Momentum& m);

/// Amplitude with the whole flux on one bond; exactly exp(-i phi/2) times tau_symmetric.
cdouble tau_asymmetric(const RingConfig& config, const Momentum& m);

/// The denominator B shared by the symmetric and asymmetric amplitudes.
cdouble denominator_b(const RingConfig& config, const Momentum& m);

/// Gauge-independent transmission probability written directly in terms of
/// the dot levels and flux.
TransmissionResult transmission_T(const RingConfig& config, const Momentum& m);

/// Transmission for balanced levels E_u = eps + i*gamma, E_d = eps - i*gamma.
/// Throws InvalidParameter for unbalanced levels.
double transmission_pt(const RingConfig& config, const Momentum& m, PtForm form);

/// Amplitude at the band center (k = pi/2, omega = 0).
cdouble tau_fermi(const RingConfig& config);

/// Band-center conductance for balanced levels eps +- i*gamma, in the
/// tan-free form (eps cos(phi/2) - gamma sin(phi/2))^2 / (eps^2 + alpha^2).
double conductance_fano_form(double epsilon, double gamma, double phi, double broadening);

/// alpha = (eps^2 - (4 Gamma^2 sin^2(phi/2) - gamma^2)) / (4 Gamma)
double fano_alpha(double epsilon, double gamma, double phi, double broadening);

/// q = -gamma tan(phi/2) together with alpha at detuning `epsilon`.
/// Throws InfiniteQ when phi = pi (mod 2 pi).
FanoParameters fano_parameters(double gamma, double phi, double epsilon = 0.0,
                               double broadening = 0.1);

}  // namespace abring::closed_form
