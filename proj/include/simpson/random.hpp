#pragma once

/**
 * @file random.hpp
 * @brief Seeded random p-adic integers and algebra elements.
 */

#include <cstdint>
#include <random>
#include <vector>

#include "simpson/algebra.hpp"

namespace simpson {

using Rng = std::mt19937_64;

/// Uniform integer in [0, p^digits).
inline mpz_class random_residue(const Context& ctx, Rng& rng, std::int64_t digits) {
    const mpz_class& mod = ctx->power(digits);
    mpz_class acc = 0;
    const std::size_t limbs = mpz_sizeinbase(mod.get_mpz_t(), 2) / 64 + 2;
    for (std::size_t i = 0; i < limbs; ++i) {
        acc <<= 64;
        acc += mpz_class(static_cast<unsigned long>(rng()));
    }
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), acc.get_mpz_t(), mod.get_mpz_t());
    return r;
}

/// Random element of p^min_val Z_p, known to the context precision.
inline PadicScalar random_scalar(const Context& ctx, Rng& rng, std::int64_t min_val = 0) {
    const std::int64_t digits = ctx->precision() - min_val;
    if (digits <= 0) return PadicScalar::zero(ctx);
    return PadicScalar::from_parts(ctx, min_val, random_residue(ctx, rng, digits), ctx->precision());
}

/// Random p-adic unit.
inline PadicScalar random_unit(const Context& ctx, Rng& rng) {
    const std::int64_t p = ctx->prime();
    mpz_class u = random_residue(ctx, rng, ctx->precision());
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), u.get_mpz_t(), static_cast<unsigned long>(p));
    if (r == 0) u += 1;
    return PadicScalar::from_mpz(ctx, u);
}

/// Small signed integer in [-bound, bound].
inline long random_small(Rng& rng, long bound) {
    std::uniform_int_distribution<long> dist(-bound, bound);
    return dist(rng);
}

inline AlgElement random_element(const Algebra& a, Rng& rng, std::int64_t min_val = 0) {
    std::vector<PadicScalar> c;
    for (std::size_t i = 0; i < a->dim(); ++i) c.push_back(random_scalar(a->context(), rng, min_val));
    return {a, std::move(c)};
}

} // namespace simpson
