#pragma once

#include <array>

#include "abring/ring_model.hpp"

namespace abring {

/// Dense 4x4 complex system in unknown order (r_LL, tau_RL, a_u, a_d).
struct LinearSystem4 {
    std::array<std::array<cdouble, 4>, 4> matrix{};
    std::array<cdouble, 4> rhs{};
};

namespace unknown {
inline constexpr int reflection = 0;
inline constexpr int transmission = 1;
inline constexpr int dot_u = 2;
inline constexpr int dot_d = 3;
}  // namespace unknown

struct ScatteringSolution {
    cdouble r_LL;
    cdouble tau_RL;
    cdouble a_u;
    cdouble a_d;
    /// Max-norm residual of the system at the returned solution.
    double residual = 0.0;
    /// The system matrix was rank-deficient; the minimum-norm least-squares
    /// solution was returned.
    bool singular = false;

    double transmission() const { return std::norm(tau_RL); }
    double reflection() const { return std::norm(r_LL); }
};

struct OracleOptions {
    /// Pivots below pivot_tolerance * max|matrix entry| mark the matrix rank-deficient.
    double pivot_tolerance = 1e-12;
    /// Accepted solutions satisfy residual <= residual_tolerance * max(1, |rhs|_inf).
    double residual_tolerance = 1e-9;
};

/// Transcribes the stationary Schroedinger equation on sites -1, 1 and the
/// two dots for a plane wave incident from the left lead.
LinearSystem4 build_system(const RingConfig& config, const GaugeAllocation& alloc,
                           const Momentum& m);

/// Direct solve with partial pivoting. Throws SolveFailure if no solution
/// meets the residual tolerance.
ScatteringSolution solve_scattering(const RingConfig& config, const GaugeAllocation& alloc,
                                    const Momentum& m, const OracleOptions& options = {});

/// max_i |(A x - b)_i|
double residual_norm(const LinearSystem4& system, const std::array<cdouble, 4>& x);

}  // namespace abring
