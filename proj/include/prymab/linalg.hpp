#pragma once

#include <cstddef>
#include <vector>

#include "prymab/rational.hpp"

namespace prymab {

/// Exact rank of a rational matrix (vector of rows).
///
/// Rows are first scaled to integers, then reduced by fraction-free Bareiss
/// elimination so intermediate values stay polynomially bounded.
inline std::size_t rank_exact(const std::vector<std::vector<Rat>>& m) {
    if (m.empty() || m.front().empty()) return 0;
    const std::size_t rows = m.size(), cols = m.front().size();

    std::vector<std::vector<Int>> a(rows, std::vector<Int>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        Int scale = 1;
        for (std::size_t j = 0; j < cols; ++j)
            scale = lcm(scale, denominator(m[i][j]));
        for (std::size_t j = 0; j < cols; ++j)
            a[i][j] = numerator(m[i][j]) * (scale / denominator(m[i][j]));
    }

    Int prev = 1;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && a[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[rank], a[piv]);

        for (std::size_t i = rank + 1; i < rows; ++i) {
            for (std::size_t j = col + 1; j < cols; ++j)
                a[i][j] = (a[rank][col] * a[i][j] - a[i][col] * a[rank][j]) / prev;
            a[i][col] = 0;
        }
        prev = a[rank][col];
        ++rank;
    }
    return rank;
}

} // namespace prymab
