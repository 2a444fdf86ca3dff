#pragma once

#include <span>

#include "abring/spectra.hpp"

namespace abring {

/// Standard Fano profile (e + q)^2 / (e^2 + 1).
double fano_profile(double e, double q);

/// G(x) = background + amplitude * fano_profile((x - center) / width, q).
///
/// The profile has a second parameterization (q, A, B) -> (-1/q, -A q^2,
/// B + A (1 + q^2)) producing the same curve; fits are reported on the
/// branch with amplitude >= 0.
struct FanoFit {
    double q = 0.0;
    double center = 0.0;
    double width = 1.0;
    double amplitude = 0.0;
    double background = 0.0;
    double rms_residual = 0.0;
    int iterations = 0;

    double operator()(double x) const;
    /// Zero of the profile: x where the interference is fully destructive.
    double dip_position() const { return center - q * width; }
    /// Asymmetry parameter in detuning units, -dip_position(); this is the
    /// quantity compared with -gamma tan(phi/2).
    double q_detuning() const { return -dip_position(); }
};

enum class FitWindow {
    /// Every row of the table.
    full,
    /// Rows within |i - i_dip| <= |i_peak - i_dip| around the deepest
    /// minimum, where i_peak is the highest maximum.
    resonance,
};

struct FanoFitOptions {
    FitWindow window = FitWindow::full;
    /// Initial width scale; 0 derives one from the extrema spacing.
    double width_hint = 0.0;
    int max_iterations = 10000;
};

/// Least-squares fit of the five profile parameters. Nonlinear parameters
/// (q, center, log width) are searched by downhill simplex from 8 starts
/// seeded at the detected extrema; amplitude and background are solved
/// exactly at every step. Throws FitDiverged when every start exhausts its
/// iteration budget or the rms residual exceeds 10% of the G range.
FanoFit fit_fano(const SpectrumTable& table, const FanoFitOptions& options = {});
FanoFit fit_fano(std::span<const double> x, std::span<const double> g,
                 const FanoFitOptions& options = {});

}  // namespace abring
