#pragma once

#include "plurikernel/core.hpp"

#include <cmath>
#include <span>
#include <vector>

namespace plurikernel {

struct Extrapolated {
    double limit = 0.0;
    double error_estimate = 0.0;  // |difference| between the two best consecutive entries
    int order = 0;                // Richardson column the estimate was taken from
};

/// Richardson extrapolation of samples v_k = F(s_0 * 2^{-k}) assuming an
/// expansion F(s) = L + c_1 s^e + c_2 s^{2e} + ... ; `exponent_step` is e.
/// Returns the entry of the Neville table whose last-row increment is the
/// smallest, which tolerates round-off in the finest samples.
inline Extrapolated richardson_limit(std::span<const double> values, double exponent_step = 1.0)
{
    const std::size_t m = values.size();
    if (m == 0) fail(ErrorKind::invalid_argument, "richardson_limit: empty sequence");
    if (m == 1) return {values[0], std::numeric_limits<double>::infinity(), 0};

    // table[j][k] for k >= j
    std::vector<std::vector<double>> table(m, std::vector<double>(m, 0.0));
    for (std::size_t k = 0; k < m; ++k) table[0][k] = values[k];
    for (std::size_t j = 1; j < m; ++j) {
        const double f = std::pow(2.0, exponent_step * static_cast<double>(j));
        for (std::size_t k = j; k < m; ++k)
            table[j][k] = (f * table[j - 1][k] - table[j - 1][k - 1]) / (f - 1.0);
    }

    Extrapolated best{values[m - 1], std::abs(values[m - 1] - values[m - 2]), 0};
    for (std::size_t j = 1; j + 1 < m; ++j) {
        const double err = std::abs(table[j][m - 1] - table[j][m - 2]);
        if (err < best.error_estimate) best = {table[j][m - 1], err, static_cast<int>(j)};
    }
    return best;
}

/// Geometric approach grid t_k = 1 - 2^{-k}, k = k_first..k_last.
inline std::vector<double> geometric_t_grid(int k_first, int k_last)
{
    std::vector<double> t;
    for (int k = k_first; k <= k_last; ++k) t.push_back(1.0 - std::ldexp(1.0, -k));
    return t;
}

}  // namespace plurikernel
