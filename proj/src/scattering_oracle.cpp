#include "abring/scattering_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>

#include <Eigen/Dense>

#include "abring/error.hpp"

namespace abring {

namespace {

using Vec4 = std::array<cdouble, 4>;

double max_norm(const LinearSystem4& s) {
    double m = 0.0;
    for (const auto& row : s.matrix)
        for (const cdouble& v : row) m = std::max(m, std::abs(v));
    return m;
}

double max_norm(const Vec4& v) {
    double m = 0.0;
    for (const cdouble& x : v) m = std::max(m, std::abs(x));
    return m;
}

// Gaussian elimination with row pivoting. Empty when a pivot falls below the
// threshold.
std::optional<Vec4> lu_solve(LinearSystem4 s, double pivot_floor) {
    auto& a = s.matrix;
    auto& b = s.rhs;
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int row = col + 1; row < 4; ++row) {
            if (std::abs(a[row][col]) > std::abs(a[piv][col])) piv = row;
        }
        if (std::abs(a[piv][col]) <= pivot_floor) return std::nullopt;
        if (piv != col) {
            std::swap(a[piv], a[col]);
            std::swap(b[piv], b[col]);
        }
        for (int row = col + 1; row < 4; ++row) {
            const cdouble f = a[row][col] / a[col][col];
            if (f == cdouble{}) continue;
            for (int j = col; j < 4; ++j) a[row][j] -= f * a[col][j];
            b[row] -= f * b[col];
        }
    }
    Vec4 x{};
    for (int row = 3; row >= 0; --row) {
        cdouble acc = b[row];
        for (int j = row + 1; j < 4; ++j) acc -= a[row][j] * x[j];
        x[row] = acc / a[row][row];
    }
    return x;
}

Vec4 min_norm_least_squares(const LinearSystem4& s, double relative_threshold) {
    Eigen::Matrix4cd a;
    Eigen::Vector4cd b;
    for (int i = 0; i < 4; ++i) {
        b(i) = s.rhs[i];
        for (int j = 0; j < 4; ++j) a(i, j) = s.matrix[i][j];
    }
    Eigen::CompleteOrthogonalDecomposition<Eigen::Matrix4cd> cod;
    cod.setThreshold(relative_threshold);
    cod.compute(a);
    const Eigen::Vector4cd x = cod.solve(b);
    return {x(0), x(1), x(2), x(3)};
}

}  // namespace

double residual_norm(const LinearSystem4& system, const Vec4& x) {
    double r = 0.0;
    for (int i = 0; i < 4; ++i) {
        cdouble acc = -system.rhs[i];
        for (int j = 0; j < 4; ++j) acc += system.matrix[i][j] * x[j];
        r = std::max(r, std::abs(acc));
    }
    return r;
}

LinearSystem4 build_system(const RingConfig& config, const GaugeAllocation& alloc,
                           const Momentum& m) {
    const double t0 = config.t0();
    const double k = m.k();
    const cdouble w{m.omega(), 0.0};
    const cdouble em1 = std::polar(1.0, -k);
    const cdouble em2 = std::polar(1.0, -2.0 * k);

    LinearSystem4 s;
    auto& a = s.matrix;
    // Left contact site.
    a[0] = {cdouble{-t0}, cdouble{}, alloc.uL, alloc.dL};
    s.rhs[0] = t0;
    // Right contact site.
    a[1] = {cdouble{}, cdouble{-t0}, alloc.uR, alloc.dR};
    s.rhs[1] = 0.0;
    // Upper dot.
    a[2] = {std::conj(alloc.uL), std::conj(alloc.uR), (w - config.e_u()) * em1, cdouble{}};
    s.rhs[2] = -std::conj(alloc.uL) * em2;
    // Lower dot.
    a[3] = {std::conj(alloc.dL), std::conj(alloc.dR), cdouble{}, (w - config.e_d()) * em1};
    s.rhs[3] = -std::conj(alloc.dL) * em2;
    return s;
}

ScatteringSolution solve_scattering(const RingConfig& config, const GaugeAllocation& alloc,
                                    const Momentum& m, const OracleOptions& options) {
    const LinearSystem4 system = build_system(config, alloc, m);
    const double scale = max_norm(system);
    const double tolerance = options.residual_tolerance * std::max(1.0, max_norm(system.rhs));

    bool singular = false;
    std::optional<Vec4> x = lu_solve(system, options.pivot_tolerance * scale);
    if (!x) {
        singular = true;
        x = min_norm_least_squares(system, options.pivot_tolerance);
    }

    ScatteringSolution sol;
    sol.r_LL = (*x)[unknown::reflection];
    sol.tau_RL = (*x)[unknown::transmission];
    sol.a_u = (*x)[unknown::dot_u];
    sol.a_d = (*x)[unknown::dot_d];
    sol.singular = singular;
    sol.residual = residual_norm(system, *x);
    if (!(sol.residual <= tolerance)) {
        throw SolveFailure("scattering system residual " + std::to_string(sol.residual) +
                           " exceeds tolerance " + std::to_string(tolerance));
    }
    return sol;
}

}  // namespace abring
