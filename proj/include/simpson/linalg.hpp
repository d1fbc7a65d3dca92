#pragma once

/**
 * @file linalg.hpp
 * @brief Rank, kernel and linear solves over Q_p with guarded zero decisions.
 *
 * Elimination always pivots on a remaining entry of minimal valuation, so
 * every multiplier is integral and no precision is lost to growth. An entry is
 * treated as zero only when it is zero to precision. The margin of a
 * decomposition is the smaller of
 *   - the least relative precision of a pivot, and
 *   - the precision of the residual (all-zero) block minus the largest pivot
 *     valuation,
 * i.e. how many digits separate every rank decision from ambiguity. A margin
 * below the slack raises PrecisionExhausted.
 */

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "simpson/matrix.hpp"

namespace simpson {

inline constexpr std::int64_t kDefaultSlack = 4;

struct Echelon {
    Matrix reduced;                       ///< row-echelon form (rows permuted)
    std::vector<std::size_t> pivot_cols;  ///< pivot column of row k, k < rank
    std::size_t rank = 0;
    std::int64_t margin = 0;
};

/// Forward elimination; pivots are searched only among the first `eligible_cols` columns.
inline Echelon echelon(const Matrix& a, std::size_t eligible_cols) {
    Echelon e;
    e.reduced = a;
    Matrix& m = e.reduced;
    const std::size_t rows = m.rows();
    eligible_cols = std::min(eligible_cols, m.cols());
    std::vector<bool> used(eligible_cols, false);
    std::int64_t min_rel = std::numeric_limits<std::int64_t>::max();
    std::int64_t max_pivot_val = std::numeric_limits<std::int64_t>::min();
    std::size_t r = 0;
    while (r < rows) {
        std::size_t pi = rows, pj = eligible_cols;
        std::int64_t best = std::numeric_limits<std::int64_t>::max();
        for (std::size_t i = r; i < rows; ++i)
            for (std::size_t j = 0; j < eligible_cols; ++j) {
                if (used[j]) continue;
                const PadicScalar& x = m(i, j);
                if (x.is_zero()) continue;
                if (x.valuation_bound() < best) {
                    best = x.valuation_bound();
                    pi = i;
                    pj = j;
                }
            }
        if (pi == rows) break;
        if (pi != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(pi, j));
        used[pj] = true;
        const PadicScalar pivot = m(r, pj);
        min_rel = std::min(min_rel, pivot.relative_precision());
        max_pivot_val = std::max(max_pivot_val, pivot.valuation_bound());
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (m(i, pj).is_zero()) {
                m(i, pj) = PadicScalar::zero(m.context(), m(i, pj).precision());
                continue;
            }
            const PadicScalar factor = m(i, pj) / pivot;
            for (std::size_t j = 0; j < m.cols(); ++j) {
                if (j == pj) continue;
                if (m(r, j).is_zero() && m(r, j).precision() >= m.context()->precision()) continue;
                m(i, j) -= factor * m(r, j);
            }
            m(i, pj) = PadicScalar::zero(m.context(), std::min(m(i, pj).precision(), pivot.precision()));
        }
        e.pivot_cols.push_back(pj);
        ++r;
    }
    e.rank = r;
    std::int64_t residual_prec = std::numeric_limits<std::int64_t>::max();
    for (std::size_t i = r; i < rows; ++i)
        for (std::size_t j = 0; j < eligible_cols; ++j)
            if (!used[j]) residual_prec = std::min(residual_prec, m(i, j).precision());
    std::int64_t margin = min_rel;
    if (residual_prec != std::numeric_limits<std::int64_t>::max())
        margin = std::min(margin, r == 0 ? residual_prec : residual_prec - max_pivot_val);
    if (margin == std::numeric_limits<std::int64_t>::max()) margin = a.context() ? a.context()->precision() : 0;
    e.margin = margin;
    return e;
}

inline Echelon echelon(const Matrix& a) { return echelon(a, a.cols()); }

inline void require_margin(std::int64_t margin, std::int64_t slack, const std::string& what) {
    if (margin < slack)
        throw PrecisionExhausted(what + ": rank decision margin " + std::to_string(margin) +
                                 " is below the slack " + std::to_string(slack) +
                                 "; rerun at a higher precision");
}

struct RankResult {
    std::size_t rank = 0;
    std::int64_t margin = 0;
};

inline RankResult rank_with_margin(const Matrix& a, std::int64_t slack = kDefaultSlack) {
    if (a.rows() == 0 || a.cols() == 0) return {0, a.context() ? a.context()->precision() : 0};
    const Echelon e = echelon(a);
    require_margin(e.margin, slack, "rank");
    return {e.rank, e.margin};
}

inline std::size_t rank(const Matrix& a, std::int64_t slack = kDefaultSlack) {
    return rank_with_margin(a, slack).rank;
}

namespace detail {

// Solves the pivot rows of an echelon form for the given right-hand column block.
inline std::vector<PadicScalar> back_substitute(const Echelon& e, std::size_t n_unknowns,
                                                const std::vector<PadicScalar>& rhs,
                                                const std::vector<PadicScalar>& fixed) {
    const Matrix& u = e.reduced;
    std::vector<PadicScalar> x = fixed;
    for (std::size_t k = e.rank; k-- > 0;) {
        const std::size_t c = e.pivot_cols[k];
        PadicScalar acc = rhs[k];
        for (std::size_t j = 0; j < n_unknowns; ++j) {
            if (j == c || (x[j].is_zero() && x[j].precision() >= x[j].context()->precision())) continue;
            acc -= u(k, j) * x[j];
        }
        x[c] = acc / u(k, c);
    }
    return x;
}

} // namespace detail

/// Basis of {x : a x = 0}, one column vector per element.
inline std::vector<std::vector<PadicScalar>> kernel(const Matrix& a, std::int64_t slack = kDefaultSlack) {
    const Context& ctx = a.context();
    const std::size_t n = a.cols();
    std::vector<std::vector<PadicScalar>> basis;
    if (a.rows() == 0) {
        for (std::size_t f = 0; f < n; ++f) {
            std::vector<PadicScalar> v(n, PadicScalar::zero(ctx));
            v[f] = PadicScalar::one(ctx);
            basis.push_back(std::move(v));
        }
        return basis;
    }
    const Echelon e = echelon(a);
    require_margin(e.margin, slack, "kernel");
    std::vector<bool> is_pivot(n, false);
    for (std::size_t k = 0; k < e.rank; ++k) is_pivot[e.pivot_cols[k]] = true;
    const std::vector<PadicScalar> rhs(e.rank, PadicScalar::zero(ctx));
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        std::vector<PadicScalar> fixed(n, PadicScalar::zero(ctx));
        fixed[f] = PadicScalar::one(ctx);
        basis.push_back(detail::back_substitute(e, n, rhs, fixed));
    }
    return basis;
}

/// A solution of a x = b, or nullopt when the system is inconsistent.
inline std::optional<std::vector<PadicScalar>> solve(const Matrix& a, const std::vector<PadicScalar>& b,
                                                     std::int64_t slack = kDefaultSlack) {
    if (b.size() != a.rows()) throw DimensionMismatch("solve: right-hand side length");
    const Context& ctx = a.context();
    const std::size_t n = a.cols();
    Matrix aug(ctx, a.rows(), n + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n) = b[i];
    }
    const Echelon e = echelon(aug, n);
    require_margin(e.margin, slack, "solve");
    for (std::size_t i = e.rank; i < a.rows(); ++i)
        if (!e.reduced(i, n).is_zero()) return std::nullopt;
    std::vector<PadicScalar> rhs;
    for (std::size_t k = 0; k < e.rank; ++k) rhs.push_back(e.reduced(k, n));
    return detail::back_substitute(e, n, rhs, std::vector<PadicScalar>(n, PadicScalar::zero(ctx)));
}

inline Matrix inverse(const Matrix& a, std::int64_t slack = kDefaultSlack) {
    if (!a.square()) throw DimensionMismatch("inverse of a non-square matrix");
    const Context& ctx = a.context();
    const std::size_t n = a.rows();
    Matrix aug(ctx, n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n + i) = PadicScalar::one(ctx);
    }
    const Echelon e = echelon(aug, n);
    require_margin(e.margin, slack, "inverse");
    if (e.rank < n) throw DivisionByZeroToPrecision("inverse: matrix is singular to precision");
    Matrix inv(ctx, n, n);
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<PadicScalar> rhs;
        for (std::size_t k = 0; k < n; ++k) rhs.push_back(e.reduced(k, n + c));
        const auto x = detail::back_substitute(e, n, rhs, std::vector<PadicScalar>(n, PadicScalar::zero(ctx)));
        for (std::size_t i = 0; i < n; ++i) inv(i, c) = x[i];
    }
    return inv;
}

} // namespace simpson
