#pragma once

/**
 * @file spectral.hpp
 * @brief The spectral algebra B_theta of a Higgs module and rank-one twists over it.
 */

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "simpson/algebra_exp.hpp"
#include "simpson/higgs.hpp"

namespace simpson {

struct SpectralAlgebra {
    Algebra algebra;
    std::vector<Matrix> basis;  ///< image of each algebra basis element in End(E)
    Matrix embedding;           ///< n^2 x dim: column j is basis[j] flattened row-major
    std::vector<AlgElement> tau;

    Matrix embed(const AlgElement& x) const {
        if (x.algebra().get() != algebra.get()) throw AlgebraMismatch("embed: element of another algebra");
        const std::size_t n = basis.empty() ? 0 : basis[0].rows();
        Matrix m(algebra->context(), n, n);
        for (std::size_t j = 0; j < basis.size(); ++j)
            if (!FinAlgebra::exact_zero(x[j])) m += x[j] * basis[j];
        return m;
    }
};

namespace detail {

inline std::vector<PadicScalar> flatten(const Matrix& m) {
    std::vector<PadicScalar> v;
    v.reserve(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
    return v;
}

inline Matrix columns_of(const Context& ctx, const std::vector<std::vector<PadicScalar>>& cols, std::size_t len) {
    Matrix w(ctx, len, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < len; ++i) w(i, j) = cols[j][i];
    return w;
}

} // namespace detail

namespace detail {

// Basis of span(cols) intersected with Z_p^len, by full-pivot column normalization.
// The first column is kept when it is primitive (as the identity is).
inline std::vector<std::vector<PadicScalar>> saturate(std::vector<std::vector<PadicScalar>> cols) {
    const std::size_t m = cols.size();
    if (m == 0) return cols;
    const std::size_t len = cols[0].size();
    std::vector<bool> row_used(len, false), col_done(m, false);
    for (std::size_t step = 0; step < m; ++step) {
        std::size_t pr = len, pc = m;
        std::int64_t best = std::numeric_limits<std::int64_t>::max();
        for (std::size_t j = 0; j < m; ++j) {
            if (col_done[j] || (step == 0 && j != 0)) continue;
            for (std::size_t i = 0; i < len; ++i) {
                if (row_used[i] || cols[j][i].is_zero()) continue;
                if (cols[j][i].valuation_bound() < best) {
                    best = cols[j][i].valuation_bound();
                    pr = i;
                    pc = j;
                }
            }
        }
        if (pc == m) throw PrecisionExhausted("spectral_algebra: spanning set became dependent");
        const PadicScalar inv = cols[pc][pr].inverse();
        for (auto& x : cols[pc]) x = x * inv;
        cols[pc][pr] = PadicScalar::one(cols[pc][pr].context());
        for (std::size_t j = 0; j < m; ++j) {
            if (j == pc || col_done[j]) continue;
            const PadicScalar a = cols[j][pr];
            if (a.is_zero()) continue;
            for (std::size_t i = 0; i < len; ++i) cols[j][i] -= a * cols[pc][i];
            cols[j][pr] = PadicScalar::zero(a.context());
        }
        row_used[pr] = true;
        col_done[pc] = true;
    }
    return cols;
}

inline Matrix unflatten(const Context& ctx, const std::vector<PadicScalar>& v, std::size_t n) {
    Matrix m(ctx, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = v[i * n + j];
    return m;
}

} // namespace detail

/// The subalgebra of End(E) generated by 1 and theta_1..theta_d, with a basis of
/// B_theta intersected with End(Z_p^n) (so that the structure constants are integral).
/// Entries known to full precision are read as exact; the construction runs in a
/// widened context and the result is returned at the precision of h.
inline SpectralAlgebra spectral_algebra(const HiggsModule& h, std::int64_t slack = kDefaultSlack) {
    require_valid(h);
    const Context& base = h.ctx;
    const std::size_t n = h.rank;
    const std::size_t len = n * n;
    const Context ctx = base->widened(4 * static_cast<std::int64_t>(len) + 16);
    std::vector<Matrix> theta;
    for (const auto& t : h.theta) {
        Matrix w(ctx, n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) w(i, j) = exact_lift(t(i, j), ctx);
        theta.push_back(std::move(w));
    }
    std::vector<Matrix> span{Matrix::identity(ctx, n)};
    std::vector<std::vector<PadicScalar>> flat{detail::flatten(span[0])};
    auto try_add = [&](const Matrix& m) {
        auto trial = flat;
        trial.push_back(detail::flatten(m));
        if (rank(detail::columns_of(ctx, trial, len), slack) == trial.size()) {
            flat = std::move(trial);
            span.push_back(m);
        }
    };
    for (std::size_t i = 0; i < h.d(); ++i) try_add(theta[i]);
    for (std::size_t b = 1; b < span.size() && span.size() < len; ++b)
        for (std::size_t i = 0; i < h.d() && span.size() < len; ++i) try_add(span[b] * theta[i]);

    flat = detail::saturate(std::move(flat));
    const std::size_t m = flat.size();
    std::vector<Matrix> basis;
    for (const auto& v : flat) basis.push_back(detail::unflatten(ctx, v, n));
    const Matrix emb = detail::columns_of(ctx, flat, len);
    auto coords = [&](const Matrix& x) {
        auto c = solve(emb, detail::flatten(x), slack);
        if (!c) throw PrecisionExhausted("spectral_algebra: product left the computed span");
        return *c;
    };
    auto down = [&](std::vector<PadicScalar> v) {
        for (auto& x : v) x = x.in_context(base);
        return v;
    };
    FinAlgebra::Constants c(m, std::vector<std::vector<PadicScalar>>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) c[i][j] = j < i ? c[j][i] : down(coords(basis[i] * basis[j]));
    std::vector<PadicScalar> one(m, PadicScalar::zero(base));
    one[0] = PadicScalar::one(base);
    std::vector<std::string> labels{"1"};
    for (std::size_t j = 1; j < m; ++j) labels.push_back("w" + std::to_string(j));
    std::vector<Matrix> basis_out;
    for (const auto& b : basis) basis_out.push_back(b.in_context(base));
    SpectralAlgebra s{FinAlgebra::create(base, std::move(c), std::move(one), std::move(labels)), basis_out,
                      emb.in_context(base), {}};
    for (std::size_t i = 0; i < h.d(); ++i) s.tau.emplace_back(s.algebra, down(coords(theta[i])));
    return s;
}

/// Rank-one module over B given by the cocycle gamma_i -> units_i.
struct BTwist {
    Algebra algebra;
    std::vector<AlgElement> tau;
    std::vector<AlgElement> units;
};

inline BTwist make_twist(const Algebra& b, const std::vector<AlgElement>& tau) {
    BTwist t{b, tau, {}};
    for (const auto& x : tau) {
        if (x.algebra().get() != b.get()) throw AlgebraMismatch("make_twist: tau lives in another algebra");
        t.units.push_back(alg_exp(x));
    }
    return t;
}

/// The representation on E obtained by twisting with L: rho_i = image of units_i.
inline SmallRep twist_higgs(const HiggsModule& h, const SpectralAlgebra& s, const BTwist& l) {
    if (l.algebra.get() != s.algebra.get()) throw AlgebraMismatch("twist_higgs: twist over a different algebra");
    if (l.units.size() != h.d()) throw DimensionMismatch("twist_higgs: twist has the wrong number of units");
    SmallRep v{h.ctx, h.rank, {}};
    for (const auto& u : l.units) v.rho.push_back(s.embed(u));
    return v;
}

} // namespace simpson
