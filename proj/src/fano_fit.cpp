#include "abring/fano_fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "abring/error.hpp"
#include "abring/nelder_mead.hpp"

namespace abring {

namespace {

constexpr int kMinRows = 20;
constexpr int kPolishRounds = 8;

struct LinearPart {
    double amplitude = 0.0;
    double background = 0.0;
    double mean_square = std::numeric_limits<double>::infinity();
};

// Closed-form least squares for background + amplitude * profile.
LinearPart solve_linear(std::span<const double> x, std::span<const double> y, double q,
                        double center, double width) {
    const std::size_t n = x.size();
    std::vector<double> f(n);
    double fbar = 0.0, ybar = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        f[i] = fano_profile((x[i] - center) / width, q);
        fbar += f[i];
        ybar += y[i];
    }
    fbar /= static_cast<double>(n);
    ybar /= static_cast<double>(n);
    double sff = 0.0, sfy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sff += (f[i] - fbar) * (f[i] - fbar);
        sfy += (f[i] - fbar) * (y[i] - ybar);
    }
    LinearPart out;
    out.amplitude = sff > 0.0 ? sfy / sff : 0.0;
    out.background = ybar - out.amplitude * fbar;
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = out.background + out.amplitude * f[i] - y[i];
        ss += r * r;
    }
    out.mean_square = ss / static_cast<double>(n);
    return out;
}

FanoFit canonical(FanoFit fit) {
    if (fit.amplitude < 0.0 && fit.q != 0.0) {
        const double q = fit.q;
        const double a = fit.amplitude;
        fit.q = -1.0 / q;
        fit.amplitude = -a * q * q;
        fit.background = fit.background + a * (1.0 + q * q);
    }
    return fit;
}

struct Window {
    std::size_t begin = 0;
    std::size_t end = 0;
};

Window resonance_window(std::span<const double> x, std::span<const double> y) {
    Window w{0, y.size()};
    std::vector<Extremum> ex;
    try {
        ex = find_extrema(x, y);
    } catch (const EmptyResult&) {
        return w;
    }
    const Extremum* dip = nullptr;
    const Extremum* peak = nullptr;
    for (const auto& e : ex) {
        if (e.kind == ExtremumKind::min && (!dip || y[e.index] < y[dip->index])) dip = &e;
        if (e.kind == ExtremumKind::max && (!peak || y[e.index] > y[peak->index])) peak = &e;
    }
    if (!dip || !peak) return w;
    const std::size_t i0 = dip->index;
    const std::size_t d = std::max<std::size_t>(
        kMinRows / 2, i0 > peak->index ? i0 - peak->index : peak->index - i0);
    w.begin = i0 > d ? i0 - d : 0;
    w.end = std::min(y.size(), i0 + d + 1);
    return w;
}

}  // namespace

double fano_profile(double e, double q) { return (e + q) * (e + q) / (e * e + 1.0); }

double FanoFit::operator()(double x) const {
    return background + amplitude * fano_profile((x - center) / width, q);
}

FanoFit fit_fano(std::span<const double> x_all, std::span<const double> g_all,
                 const FanoFitOptions& options) {
    if (x_all.size() != g_all.size()) throw InvalidParameter("x and G differ in length");

    std::vector<double> xs, ys;
    {
        Window w{0, x_all.size()};
        if (options.window == FitWindow::resonance) w = resonance_window(x_all, g_all);
        for (std::size_t i = w.begin; i < w.end; ++i) {
            if (std::isfinite(g_all[i])) {
                xs.push_back(x_all[i]);
                ys.push_back(g_all[i]);
            }
        }
    }
    if (xs.size() < static_cast<std::size_t>(kMinRows)) {
        throw InvalidParameter("Fano fit needs at least 20 finite rows");
    }
    const auto [lo_it, hi_it] = std::minmax_element(ys.begin(), ys.end());
    const double range = *hi_it - *lo_it;
    if (!(range > 0.0)) throw InvalidParameter("Fano fit needs a non-constant curve");

    const std::span<const double> x(xs), y(ys);
    const double span_x = x.back() - x.front();

    // Seeds: the highest maximum and the deepest minimum.
    double c_peak = x[static_cast<std::size_t>(hi_it - ys.begin())];
    double c_dip = x[static_cast<std::size_t>(lo_it - ys.begin())];
    try {
        double best_max = -HUGE_VAL, best_min = HUGE_VAL;
        for (const auto& e : find_extrema(x, y)) {
            if (e.kind == ExtremumKind::max && y[e.index] > best_max) {
                best_max = y[e.index];
                c_peak = e.position;
            }
            if (e.kind == ExtremumKind::min && y[e.index] < best_min) {
                best_min = y[e.index];
                c_dip = e.position;
            }
        }
    } catch (const EmptyResult&) {
    }
    double width0 = options.width_hint;
    if (!(width0 > 0.0)) width0 = std::abs(c_peak - c_dip) / 2.0;
    if (!(width0 > 0.0)) width0 = span_x / 20.0;

    const double inv_range2 = 1.0 / (range * range);
    const std::function<double(const std::array<double, 3>&)> cost =
        [&](const std::array<double, 3>& p) {
            const double width = std::exp(p[2]);
            if (!std::isfinite(width) || width <= 0.0) return HUGE_VAL;
            return solve_linear(x, y, p[0], p[1], width).mean_square * inv_range2;
        };

    SimplexOptions sopt;
    sopt.x_tolerance = 1e-13;

    FanoFit best;
    double best_cost = HUGE_VAL;
    bool any_converged = false;
    for (double c0 : {c_peak, c_dip}) {
        for (double w0 : {width0, 4.0 * width0}) {
            for (double q0 : {1.0, -1.0}) {
                std::array<double, 3> p{q0, c0, std::log(w0)};
                std::array<double, 3> step{0.5, w0, 0.5};
                int used = 0;
                bool converged = false;
                double value = HUGE_VAL;
                for (int round = 0; round < kPolishRounds && used < options.max_iterations; ++round) {
                    sopt.max_iterations = options.max_iterations - used;
                    const auto r = nelder_mead<3>(cost, p, step, sopt);
                    used += r.iterations;
                    converged = r.converged;
                    const bool improved = r.value < value;
                    p = r.x;
                    value = std::min(value, r.value);
                    if (!improved && converged) break;
                    // Restart with a fresh simplex around the current optimum.
                    const double w = std::exp(p[2]);
                    step = {std::max(1e-3, 0.1 * std::abs(p[0])), 0.1 * w, 0.1};
                }
                any_converged = any_converged || converged;
                if (value < best_cost) {
                    best_cost = value;
                    const double width = std::exp(p[2]);
                    const LinearPart lin = solve_linear(x, y, p[0], p[1], width);
                    best.q = p[0];
                    best.center = p[1];
                    best.width = width;
                    best.amplitude = lin.amplitude;
                    best.background = lin.background;
                    best.rms_residual = std::sqrt(lin.mean_square);
                    best.iterations = used;
                }
            }
        }
    }
    if (!any_converged) throw FitDiverged("every Fano fit start exhausted its iteration budget");
    if (!(best.rms_residual <= 0.1 * range)) {
        throw FitDiverged("Fano fit rms residual " + std::to_string(best.rms_residual) +
                          " exceeds 10% of the G range " + std::to_string(range));
    }
    return canonical(best);
}

FanoFit fit_fano(const SpectrumTable& table, const FanoFitOptions& options) {
    const auto x = table.xs();
    const auto g = table.gs();
    return fit_fano(std::span<const double>(x), std::span<const double>(g), options);
}

}  // namespace abring
