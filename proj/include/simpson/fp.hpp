#pragma once

/**
 * @file fp.hpp
 * @brief Small dense linear algebra over the prime field F_p.
 */

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace simpson::fp {

using Vec = std::vector<std::int64_t>;
using Mat = std::vector<Vec>;

inline std::int64_t reduce(std::int64_t a, std::int64_t p) {
    a %= p;
    return a < 0 ? a + p : a;
}

inline std::int64_t mul(std::int64_t a, std::int64_t b, std::int64_t p) {
    return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % p);
}

inline std::int64_t power(std::int64_t a, std::int64_t e, std::int64_t p) {
    std::int64_t r = 1 % p;
    a = reduce(a, p);
    while (e > 0) {
        if (e & 1) r = mul(r, a, p);
        a = mul(a, a, p);
        e >>= 1;
    }
    return r;
}

inline std::int64_t inverse(std::int64_t a, std::int64_t p) { return power(a, p - 2, p); }

/// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<std::size_t> rref(Mat& m, std::int64_t p) {
    std::vector<std::size_t> pivots;
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pr = r;
        while (pr < rows && reduce(m[pr][c], p) == 0) ++pr;
        if (pr == rows) continue;
        std::swap(m[r], m[pr]);
        const std::int64_t inv = inverse(m[r][c], p);
        for (auto& x : m[r]) x = mul(reduce(x, p), inv, p);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            const std::int64_t f = reduce(m[i][c], p);
            if (f == 0) continue;
            for (std::size_t j = 0; j < cols; ++j) m[i][j] = reduce(m[i][j] - mul(f, m[r][j], p), p);
        }
        pivots.push_back(c);
        ++r;
    }
    m.resize(r);
    return pivots;
}

inline std::size_t rank(Mat m, std::int64_t p) { return rref(m, p).size(); }

/// Basis of {x : m x = 0}.
inline std::vector<Vec> kernel(Mat m, std::size_t cols, std::int64_t p) {
    const auto pivots = rref(m, p);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        Vec v(cols, 0);
        v[f] = 1;
        for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = reduce(-m[k][f], p);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Row-reduced basis of the span of the given vectors, with its pivot columns.
inline std::pair<std::vector<Vec>, std::vector<std::size_t>> span_basis(std::vector<Vec> vs, std::int64_t p) {
    auto pivots = rref(vs, p);
    return {std::move(vs), std::move(pivots)};
}

inline Mat multiply(const Mat& a, const Mat& b, std::int64_t p) {
    const std::size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
    Mat r(n, Vec(m, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (std::size_t j = 0; j < m; ++j) r[i][j] = reduce(r[i][j] + mul(a[i][l], b[l][j], p), p);
        }
    return r;
}

} // namespace simpson::fp
