#pragma once

/**
 * @file charpoly.hpp
 * @brief Division-free characteristic polynomial (Berkowitz).
 */

#include <cstddef>
#include <vector>

#include "simpson/matrix.hpp"

namespace simpson {

/// Coefficients c_0 = 1, c_1, ..., c_n of det(tI - a) = sum_k c_k t^(n-k).
inline std::vector<PadicScalar> charpoly(const Matrix& a) {
    if (!a.square()) throw DimensionMismatch("charpoly of a non-square matrix");
    const Context& ctx = a.context();
    const std::size_t n = a.rows();
    std::vector<PadicScalar> vec{PadicScalar::one(ctx)};
    if (n == 0) return vec;
    vec.push_back(-a(0, 0));
    for (std::size_t r = 1; r < n; ++r) {
        // leading block M (r x r), row R = a(r, 0..r-1), column C = a(0..r-1, r)
        std::vector<PadicScalar> col(r);
        for (std::size_t i = 0; i < r; ++i) col[i] = a(i, r);
        std::vector<PadicScalar> first{PadicScalar::one(ctx), -a(r, r)};
        for (std::size_t k = 0; k < r; ++k) {
            PadicScalar rc = PadicScalar::zero(ctx);
            for (std::size_t j = 0; j < r; ++j) rc += a(r, j) * col[j];
            first.push_back(-rc);
            if (k + 1 < r) {
                std::vector<PadicScalar> next(r, PadicScalar::zero(ctx));
                for (std::size_t i = 0; i < r; ++i)
                    for (std::size_t j = 0; j < r; ++j) next[i] += a(i, j) * col[j];
                col = std::move(next);
            }
        }
        // Toeplitz (r+2) x (r+1) product with vec (length r+1)
        std::vector<PadicScalar> out(r + 2, PadicScalar::zero(ctx));
        for (std::size_t i = 0; i < r + 2; ++i)
            for (std::size_t j = 0; j <= std::min(i, r); ++j) out[i] += first[i - j] * vec[j];
        vec = std::move(out);
    }
    return vec;
}

} // namespace simpson
