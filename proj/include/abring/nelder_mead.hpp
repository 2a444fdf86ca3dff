#pragma once

#include <array>
#include <cstddef>
#include <functional>

namespace abring {

template <std::size_t N>
struct SimplexResult {
    std::array<double, N> x{};
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

struct SimplexOptions {
    int max_iterations = 10000;
    /// Stop when every vertex lies within this distance (max-norm) of the best one.
    double x_tolerance = 1e-12;
    /// ... or when the spread of objective values is below this.
    double f_tolerance = 0.0;
};

/// Nelder-Mead downhill simplex with the standard coefficients
/// (reflection 1, expansion 2, contraction 1/2, shrink 1/2).
template <std::size_t N>
SimplexResult<N> nelder_mead(const std::function<double(const std::array<double, N>&)>& f,
                             const std::array<double, N>& start,
                             const std::array<double, N>& step, const SimplexOptions& opt = {});

}  // namespace abring

#include "abring/nelder_mead.ipp"
