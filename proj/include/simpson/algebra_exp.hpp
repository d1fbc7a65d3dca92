#pragma once

/**
 * @file algebra_exp.hpp
 * @brief exp and log on finite-dimensional algebras, and exp_G on unit groups.
 *
 * Truncation uses the characteristic polynomial t^m + c_1 t^(m-1) + ... + c_m
 * of multiplication by x. With lambda = min_k val(c_k)/k (the least valuation
 * of an eigenvalue) and mu = min_{j<m} val(x^j), Cayley-Hamilton gives
 * val(x^n) >= mu + (n - m + 1) * lambda for n >= m - 1.
 */

#include <cstddef>
#include <algorithm>
#include <cstdint>
#include <limits>

#include "simpson/algebra_structure.hpp"
#include "simpson/charpoly.hpp"
#include "simpson/padic_series.hpp"

namespace simpson {

/// Eigenvalue valuation data of an algebra element.
struct SpectralBound {
    bool nilpotent = false;       ///< characteristic polynomial is exactly t^m
    std::int64_t lambda_num = 0;  ///< lambda = lambda_num / lambda_den
    std::int64_t lambda_den = 1;
    std::int64_t mu = 0;

    bool lambda_at_least(std::int64_t e) const { return nilpotent || lambda_num >= e * lambda_den; }

    /// Lower bound for val(x^n).
    std::int64_t power_bound(std::int64_t n, std::int64_t m) const {
        if (n < m - 1 || nilpotent) return mu;
        const std::int64_t t = (n - m + 1) * lambda_num;
        return mu + (t >= 0 ? (t + lambda_den - 1) / lambda_den : -((-t) / lambda_den));
    }
};

inline SpectralBound spectral_bound(const AlgElement& x) {
    const std::size_t m = x.dim();
    const auto cp = charpoly(x.multiplication_matrix());
    SpectralBound b;
    b.nilpotent = true;
    bool have = false;
    for (std::size_t k = 1; k <= m; ++k) {
        const PadicScalar& c = cp[k];
        if (!FinAlgebra::exact_zero(c)) b.nilpotent = false;
        const std::int64_t v = c.valuation_bound();
        const auto kk = static_cast<std::int64_t>(k);
        if (!have || v * b.lambda_den < b.lambda_num * kk) {
            b.lambda_num = v;
            b.lambda_den = kk;
            have = true;
        }
    }
    AlgElement power = AlgElement::one(x.algebra());
    b.mu = std::numeric_limits<std::int64_t>::max();
    for (std::size_t j = 0; j < m; ++j) {
        b.mu = std::min(b.mu, power.min_valuation());
        power = power * x;
    }
    return b;
}

namespace detail {

// Precision of the structure constants: a cap on anything computed in the algebra.
inline std::int64_t constants_precision(const FinAlgebra& a) {
    std::int64_t v = a.context()->precision();
    for (const auto& plane : a.constants())
        for (const auto& row : plane)
            for (const auto& x : row) v = std::min(v, x.precision());
    return v;
}

// x as an element of the algebra lifted to a wider context.
inline AlgElement lift_element(const AlgElement& x, const Algebra& wide) {
    auto c = x.coords();
    for (auto& y : c) y = y.in_context(wide->context());
    return {wide, std::move(c)};
}

inline AlgElement lower_element(const AlgElement& x, const Algebra& narrow, std::int64_t prec) {
    auto c = x.coords();
    for (auto& y : c) y = y.in_context(narrow->context()).reduced_to(prec);
    return {narrow, std::move(c)};
}

} // namespace detail

inline AlgElement alg_exp(const AlgElement& x) {
    const Algebra& a = x.algebra();
    const Context& ctx = a->context();
    const std::int64_t p = ctx->prime();
    const std::int64_t e0 = ctx->exp_domain();
    const auto m = static_cast<std::int64_t>(a->dim());
    const SpectralBound b = spectral_bound(x);
    if (!b.lambda_at_least(e0))
        throw OutsideExpDomain("alg_exp: an eigenvalue has valuation below " + std::to_string(e0));
    const std::int64_t target = std::min({ctx->precision(), x.min_precision(), detail::constants_precision(*a)});
    std::int64_t k = m;
    if (!b.nilpotent) {
        k = std::max<std::int64_t>(m - 1, 1);
        while (b.power_bound(k, m) - (k - 1) / (p - 1) < target) ++k;
    }
    const Context work = ctx->widened(k / (p - 1) + 8 + std::max<std::int64_t>(0, -b.mu));
    const Algebra aw = a->lifted(work);
    const AlgElement xw = detail::lift_element(x, aw);
    AlgElement term = AlgElement::one(aw);
    AlgElement sum = term;
    for (std::int64_t n = 1; n < k; ++n) {
        term = PadicScalar::from_rational(work, 1, static_cast<long>(n)) * (term * xw);
        sum += term;
    }
    return detail::lower_element(sum, a, target);
}

inline AlgElement alg_log(const AlgElement& u) {
    const Algebra& a = u.algebra();
    const Context& ctx = a->context();
    const std::int64_t p = ctx->prime();
    const auto m = static_cast<std::int64_t>(a->dim());
    const AlgElement y = u - AlgElement::one(a);
    const SpectralBound b = spectral_bound(y);
    if (!b.lambda_at_least(1)) throw OutsideLogDomain("alg_log: u - 1 has an eigenvalue of valuation below 1");
    const std::int64_t target = std::min({ctx->precision(), y.min_precision(), detail::constants_precision(*a)});
    std::int64_t k = m;
    if (!b.nilpotent) {
        k = std::max<std::int64_t>(m - 1, 1);
        while (b.power_bound(k, m) - detail::floor_log(p, k) < target) ++k;
    }
    const Context work = ctx->widened(detail::floor_log(p, k) + 8 + std::max<std::int64_t>(0, -b.mu));
    const Algebra aw = a->lifted(work);
    const AlgElement yw = detail::lift_element(y, aw);
    AlgElement power = yw;
    AlgElement sum = AlgElement::zero(aw);
    for (std::int64_t n = 1; n < k; ++n) {
        sum += PadicScalar::from_rational(work, n % 2 ? 1 : -1, static_cast<long>(n)) * power;
        power = power * yw;
    }
    return detail::lower_element(sum, a, target);
}

/// Exp on the unit group of a connected split algebra: x = a + nu -> Exp(a) * exp(nu).
inline AlgElement exp_G(const AlgElement& x, std::int64_t slack = kDefaultSlack) {
    const Algebra& a = x.algebra();
    const ReducedQuotient q = reduced_quotient(a, slack);
    require_split_connected(a, q, slack);
    const PadicScalar s = split_scalar_part(q, x);
    const AlgElement nu = x - AlgElement::scalar(a, s);
    return big_exp(s) * nil_exp(nu);
}

} // namespace simpson
