#pragma once

/**
 * @file padic_series.hpp
 * @brief Scalar exponential, logarithm, Teichmüller lift and Exp.
 *
 * Series are summed in a widened working context so that the exact divisions
 * by n! and n do not eat into the caller's precision; the result is reduced
 * back to the caller's context.
 */

#include <cstdint>

#include "simpson/padic.hpp"

namespace simpson {

namespace detail {

inline std::int64_t floor_log(std::int64_t p, std::int64_t n) {
    std::int64_t k = 0;
    for (std::int64_t q = p; q <= n; q *= p) ++k;
    return k;
}

} // namespace detail

/// Least k with val(x^n / n!) >= target for every n >= k, given val(x) = v.
inline std::int64_t exp_truncation_index(std::int64_t p, std::int64_t v, std::int64_t target) {
    // val(x^n/n!) >= n*v - (n - 1)/(p - 1)
    const std::int64_t slope = v * (p - 1) - 1;
    if (slope <= 0) throw OutsideExpDomain("exp series does not converge at this valuation");
    const std::int64_t need = target * (p - 1) - 1;
    if (need <= 0) return 1;
    return (need + slope - 1) / slope + 1;
}

/// Least k with v*n - floor(log_p n) >= target for every n >= k.
inline std::int64_t log_truncation_index(std::int64_t p, std::int64_t v, std::int64_t target) {
    std::int64_t n = 1;
    while (n * v - detail::floor_log(p, n) < target) ++n;
    return n;
}

inline PadicScalar exp_scalar(const PadicScalar& x) {
    const Context& ctx = x.context();
    const std::int64_t e0 = ctx->exp_domain();
    if (x.valuation_bound() < e0)
        throw OutsideExpDomain("exp_scalar: valuation " + std::to_string(x.valuation_bound()) +
                               " is below the exp domain bound " + std::to_string(e0));
    const std::int64_t target = std::min(ctx->precision(), x.precision());
    if (x.is_zero()) return PadicScalar::one(ctx).reduced_to(target);
    const std::int64_t p = ctx->prime();
    const std::int64_t k = exp_truncation_index(p, x.valuation_bound(), target);
    const Context work = ctx->widened(k / (p - 1) + 8);
    const PadicScalar xw = x.in_context(work);
    PadicScalar term = PadicScalar::one(work);
    PadicScalar sum = term;
    for (std::int64_t n = 1; n < k; ++n) {
        term = term * xw / PadicScalar::from_int(work, static_cast<long>(n));
        sum += term;
    }
    return sum.in_context(ctx).reduced_to(target);
}

inline PadicScalar log_scalar(const PadicScalar& u) {
    const Context& ctx = u.context();
    const PadicScalar y = u - PadicScalar::one(ctx);
    if (y.valuation_bound() < 1)
        throw OutsideLogDomain("log_scalar: val(u - 1) = " + std::to_string(y.valuation_bound()) + " < 1");
    const std::int64_t target = std::min(ctx->precision(), y.precision());
    if (y.is_zero()) return PadicScalar::zero(ctx, target);
    const std::int64_t p = ctx->prime();
    const std::int64_t k = log_truncation_index(p, y.valuation_bound(), target);
    const Context work = ctx->widened(detail::floor_log(p, k) + 8);
    const PadicScalar yw = y.in_context(work);
    PadicScalar power = yw;
    PadicScalar sum = PadicScalar::zero(work);
    for (std::int64_t n = 1; n < k; ++n) {
        const PadicScalar t = power / PadicScalar::from_int(work, static_cast<long>(n));
        sum = (n % 2 == 1) ? sum + t : sum - t;
        power = power * yw;
    }
    return sum.in_context(ctx).reduced_to(target);
}

/// The (p-1)-st root of unity congruent to a modulo p.
inline PadicScalar teichmuller(const Context& ctx, const mpz_class& a) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), ctx->prime_mpz().get_mpz_t());
    if (r == 0) throw ZeroResidue("teichmuller: residue is zero mod p");
    PadicScalar x = PadicScalar::from_mpz(ctx, r);
    for (std::int64_t i = 0; i < ctx->precision(); ++i) {
        const PadicScalar next = x.pow(ctx->prime());
        if (next == x) break;
        x = next;
    }
    return x;
}

inline PadicScalar teichmuller(const Context& ctx, long a) { return teichmuller(ctx, mpz_class(a)); }

/// Exp restricted to the domain where a logarithm section is computable over Q_p.
inline PadicScalar big_exp(const PadicScalar& x) {
    const std::int64_t e0 = x.context()->exp_domain();
    if (x.valuation_bound() < e0)
        throw OutsideRepresentableDomain(
            "big_exp: valuation " + std::to_string(x.valuation_bound()) + " < " + std::to_string(e0) +
            "; Exp beyond the exp domain requires an algebraically closed base field and is not representable over Q_p");
    return exp_scalar(x);
}

} // namespace simpson
