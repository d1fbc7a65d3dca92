#pragma once

/**
 * @file generate.hpp
 * @brief Seeded generation of valid small Higgs modules and representations.
 *
 * Commuting families come from a common triangular basis: every component is
 * a polynomial without constant term in one random integral upper-triangular
 * matrix T, scaled into p^e0 Z_p, and the whole family is conjugated by a
 * random unimodular integral matrix P = L U (so P^-1 is integral and exact).
 */

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "simpson/higgs.hpp"
#include "simpson/random.hpp"

namespace simpson {

struct GenParams {
    std::int64_t p = 5;
    std::int64_t precision = 32;
    std::size_t d = 2;
    std::size_t rank = 3;
    double density = 0.6;
    std::uint64_t seed = 0;
};

namespace detail {

struct TriangularFamily {
    Context ctx;
    Matrix conj;
    Matrix conj_inv;
    std::vector<Matrix> components;  // p^e0 * f_i(T), before conjugation
};

inline Matrix unitriangular(const Context& ctx, std::size_t n, Rng& rng, bool lower) {
    Matrix m = Matrix::identity(ctx, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if ((lower && j < i) || (!lower && j > i)) m(i, j) = PadicScalar::from_int(ctx, random_small(rng, 2));
    return m;
}

// Exact inverse of a unitriangular integral matrix by substitution.
inline Matrix unitriangular_inverse(const Matrix& m, bool lower) {
    const Context& ctx = m.context();
    const std::size_t n = m.rows();
    Matrix inv = Matrix::identity(ctx, n);
    for (std::size_t c = 0; c < n; ++c) {
        if (lower) {
            for (std::size_t i = c + 1; i < n; ++i) {
                PadicScalar acc = PadicScalar::zero(ctx);
                for (std::size_t k = c; k < i; ++k) acc += m(i, k) * inv(k, c);
                inv(i, c) = -acc;
            }
        } else {
            for (std::size_t i = c; i-- > 0;) {
                PadicScalar acc = PadicScalar::zero(ctx);
                for (std::size_t k = i + 1; k <= c; ++k) acc += m(i, k) * inv(k, c);
                inv(i, c) = -acc;
            }
        }
    }
    return inv;
}

inline TriangularFamily triangular_family(const GenParams& g) {
    const Context ctx = PrimeContext::create(g.p, g.precision);
    Rng rng(g.seed);
    std::bernoulli_distribution present(g.density);
    std::bernoulli_distribution diagonal_zero(0.5);
    const std::size_t n = g.rank;
    Matrix t(ctx, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            if (!present(rng)) continue;
            if (i == j && diagonal_zero(rng)) continue;
            long v = random_small(rng, 3);
            if (v == 0) v = 1;
            t(i, j) = PadicScalar::from_int(ctx, v);
        }
    std::vector<Matrix> powers{t};
    for (std::size_t k = 1; k < std::max<std::size_t>(n, 1); ++k) powers.push_back(powers.back() * t);
    const std::int64_t e0 = ctx->exp_domain();
    TriangularFamily f{ctx, {}, {}, {}};
    std::uniform_int_distribution<int> extra(0, 1);
    for (std::size_t i = 0; i < g.d; ++i) {
        Matrix c(ctx, n, n);
        for (const auto& pw : powers) {
            const long a = random_small(rng, 2);
            if (a != 0) c += PadicScalar::from_int(ctx, a) * pw;
        }
        f.components.push_back(PadicScalar::power_of_p(ctx, e0 + extra(rng)) * c);
    }
    const Matrix l = unitriangular(ctx, n, rng, true);
    const Matrix u = unitriangular(ctx, n, rng, false);
    f.conj = l * u;
    f.conj_inv = unitriangular_inverse(u, false) * unitriangular_inverse(l, true);
    return f;
}

} // namespace detail

/// A valid small Higgs module, deterministic in the parameters.
inline HiggsModule generate_higgs(const GenParams& g) {
    const auto f = detail::triangular_family(g);
    HiggsModule h{f.ctx, g.rank, {}};
    for (const auto& c : f.components) h.theta.push_back(f.conj * c * f.conj_inv);
    return h;
}

/// A valid small representation rho_i = P (1 + p^e0 g_i(T)) P^-1, deterministic in the parameters.
inline SmallRep generate_rep(const GenParams& g) {
    const auto f = detail::triangular_family(g);
    SmallRep v{f.ctx, g.rank, {}};
    const Matrix id = Matrix::identity(f.ctx, g.rank);
    for (const auto& c : f.components) v.rho.push_back(f.conj * (id + c) * f.conj_inv);
    return v;
}

/// Trivial module of the given rank: theta = 0.
inline HiggsModule trivial_higgs(const Context& ctx, std::size_t rank, std::size_t d) {
    return HiggsModule{ctx, rank, std::vector<Matrix>(d, Matrix(ctx, rank, rank))};
}

inline SmallRep trivial_rep(const Context& ctx, std::size_t rank, std::size_t d) {
    return SmallRep{ctx, rank, std::vector<Matrix>(d, Matrix::identity(ctx, rank))};
}

} // namespace simpson
