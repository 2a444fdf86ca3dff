#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>

namespace abring {

template <std::size_t N>
SimplexResult<N> nelder_mead(const std::function<double(const std::array<double, N>&)>& f,
                             const std::array<double, N>& start,
                             const std::array<double, N>& step, const SimplexOptions& opt) {
    using Point = std::array<double, N>;
    std::array<Point, N + 1> p;
    std::array<double, N + 1> fp;
    p[0] = start;
    for (std::size_t i = 0; i < N; ++i) {
        p[i + 1] = start;
        p[i + 1][i] += step[i];
    }
    for (std::size_t i = 0; i <= N; ++i) fp[i] = f(p[i]);

    auto eval = [&](const Point& x) {
        const double v = f(x);
        return std::isnan(v) ? HUGE_VAL : v;
    };
    auto affine = [](const Point& a, const Point& b, double s) {
        Point out;
        for (std::size_t i = 0; i < N; ++i) out[i] = a[i] + s * (b[i] - a[i]);
        return out;
    };

    SimplexResult<N> res;
    std::array<std::size_t, N + 1> order;
    int iter = 0;
    for (; iter < opt.max_iterations; ++iter) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](auto a, auto b) { return fp[a] < fp[b]; });
        const std::size_t best = order[0], worst = order[N], second = order[N - 1];

        double diameter = 0.0;
        for (std::size_t v = 0; v <= N; ++v)
            for (std::size_t i = 0; i < N; ++i)
                diameter = std::max(diameter, std::abs(p[v][i] - p[best][i]));
        if (diameter <= opt.x_tolerance || fp[worst] - fp[best] <= opt.f_tolerance) {
            res.converged = true;
            break;
        }

        Point centroid{};
        for (std::size_t v = 0; v <= N; ++v) {
            if (v == worst) continue;
            for (std::size_t i = 0; i < N; ++i) centroid[i] += p[v][i] / static_cast<double>(N);
        }

        const Point xr = affine(centroid, p[worst], -1.0);
        const double fr = eval(xr);
        if (fr < fp[best]) {
            const Point xe = affine(centroid, p[worst], -2.0);
            const double fe = eval(xe);
            if (fe < fr) {
                p[worst] = xe;
                fp[worst] = fe;
            } else {
                p[worst] = xr;
                fp[worst] = fr;
            }
            continue;
        }
        if (fr < fp[second]) {
            p[worst] = xr;
            fp[worst] = fr;
            continue;
        }
        // Contract toward the better of the reflected and worst points.
        const bool outside = fr < fp[worst];
        const Point xc = outside ? affine(centroid, xr, 0.5) : affine(centroid, p[worst], 0.5);
        const double fc = eval(xc);
        if (fc < std::min(fr, fp[worst])) {
            p[worst] = xc;
            fp[worst] = fc;
            continue;
        }
        for (std::size_t v = 0; v <= N; ++v) {
            if (v == best) continue;
            p[v] = affine(p[best], p[v], 0.5);
            fp[v] = eval(p[v]);
        }
    }
    const auto best = static_cast<std::size_t>(std::min_element(fp.begin(), fp.end()) - fp.begin());
    res.x = p[best];
    res.value = fp[best];
    res.iterations = iter;
    return res;
}

}  // namespace abring
