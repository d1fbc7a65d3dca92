#pragma once

/**
 * @file higgs.hpp
 * @brief Small Higgs modules, small Z_p^d-representations and the local correspondence.
 *
 * Component i of the Higgs field corresponds to the generator gamma_i of
 * Delta = Z_p^d (the chart is implicit and Tate twists are trivialized), and
 * the correspondence is theta_i <-> rho_i = exp(theta_i).
 */

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "simpson/linalg.hpp"
#include "simpson/padic_series.hpp"

namespace simpson {

struct HiggsModule {
    Context ctx;
    std::size_t rank = 0;
    std::vector<Matrix> theta;

    std::size_t d() const noexcept { return theta.size(); }
};

struct SmallRep {
    Context ctx;
    std::size_t rank = 0;
    std::vector<Matrix> rho;

    std::size_t d() const noexcept { return rho.size(); }
};

struct SmallnessViolation {
    std::size_t index = 0;
    std::size_t row = 0;
    std::size_t col = 0;
    std::int64_t valuation = 0;
};

struct ValidationReport {
    std::vector<std::string> shape_errors;
    std::vector<std::pair<std::size_t, std::size_t>> noncommuting;
    std::vector<SmallnessViolation> smallness;

    bool valid() const { return shape_errors.empty() && noncommuting.empty() && smallness.empty(); }

    std::string summary() const {
        std::string s;
        for (const auto& e : shape_errors) s += e + "; ";
        for (const auto& [i, j] : noncommuting)
            s += "components " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " do not commute; ";
        for (const auto& v : smallness)
            s += "component " + std::to_string(v.index + 1) + " entry (" + std::to_string(v.row + 1) + ", " +
                 std::to_string(v.col + 1) + ") has valuation " + std::to_string(v.valuation) + "; ";
        if (s.empty()) return "valid";
        s.resize(s.size() - 2);
        return s;
    }
};

namespace detail {

inline ValidationReport validate_family(const std::vector<Matrix>& ms, std::size_t n, std::int64_t e0,
                                        bool shift_identity) {
    ValidationReport r;
    for (std::size_t i = 0; i < ms.size(); ++i)
        if (ms[i].rows() != n || ms[i].cols() != n)
            r.shape_errors.push_back("component " + std::to_string(i + 1) + " has shape " + ms[i].shape() +
                                     ", expected " + std::to_string(n) + "x" + std::to_string(n));
    if (!r.shape_errors.empty()) return r;
    for (std::size_t i = 0; i < ms.size(); ++i)
        for (std::size_t j = i + 1; j < ms.size(); ++j)
            if (!ms[i].commutes_with(ms[j])) r.noncommuting.emplace_back(i, j);
    for (std::size_t i = 0; i < ms.size(); ++i) {
        if (n == 0) continue;
        const Matrix m = shift_identity ? ms[i] - Matrix::identity(ms[i].context(), n) : ms[i];
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (m(a, b).valuation_bound() < e0) r.smallness.push_back({i, a, b, m(a, b).valuation_bound()});
    }
    return r;
}

} // namespace detail

inline ValidationReport validate_higgs(const HiggsModule& h) {
    return detail::validate_family(h.theta, h.rank, h.ctx->exp_domain(), false);
}

inline ValidationReport validate_rep(const SmallRep& v) {
    return detail::validate_family(v.rho, v.rank, v.ctx->exp_domain(), true);
}

/// exp of a matrix whose entries lie in p^e0 Z_p (the bound val(a^n) >= n * minval is used).
inline Matrix matrix_exp(const Matrix& a) {
    const Context& ctx = a.context();
    const std::size_t n = a.rows();
    if (!a.square()) throw DimensionMismatch("matrix_exp of a non-square matrix");
    if (n == 0) return a;
    const std::int64_t v = a.min_valuation();
    if (v < ctx->exp_domain())
        throw OutsideExpDomain("matrix_exp: entry valuation " + std::to_string(v) + " below " +
                               std::to_string(ctx->exp_domain()));
    const std::int64_t target = std::min(ctx->precision(), a.min_precision());
    if (a.is_zero()) return Matrix::identity(ctx, n).reduced_to(target);
    const std::int64_t p = ctx->prime();
    const std::int64_t k = exp_truncation_index(p, v, target);
    const Context work = ctx->widened(k / (p - 1) + 8);
    const Matrix aw = a.in_context(work);
    Matrix term = Matrix::identity(work, n);
    Matrix sum = term;
    for (std::int64_t j = 1; j < k; ++j) {
        term = PadicScalar::from_rational(work, 1, static_cast<long>(j)) * (term * aw);
        if (term.is_zero() && term.min_valuation() >= target + k) break;
        sum += term;
    }
    return sum.in_context(ctx).reduced_to(target);
}

/// log of a matrix congruent to the identity modulo p.
inline Matrix matrix_log(const Matrix& u) {
    const Context& ctx = u.context();
    const std::size_t n = u.rows();
    if (!u.square()) throw DimensionMismatch("matrix_log of a non-square matrix");
    if (n == 0) return u;
    const Matrix y = u - Matrix::identity(ctx, n);
    const std::int64_t v = y.min_valuation();
    if (v < 1) throw OutsideLogDomain("matrix_log: val(rho - 1) = " + std::to_string(v) + " < 1");
    const std::int64_t target = std::min(ctx->precision(), y.min_precision());
    if (y.is_zero()) return Matrix(ctx, n, n).reduced_to(target);
    const std::int64_t p = ctx->prime();
    const std::int64_t k = log_truncation_index(p, v, target);
    const Context work = ctx->widened(detail::floor_log(p, k) + 8);
    const Matrix yw = y.in_context(work);
    Matrix power = yw;
    Matrix sum(work, n, n);
    for (std::int64_t j = 1; j < k; ++j) {
        sum += PadicScalar::from_rational(work, j % 2 ? 1 : -1, static_cast<long>(j)) * power;
        power = power * yw;
        if (power.is_zero() && power.min_valuation() >= target + k) break;
    }
    return sum.in_context(ctx).reduced_to(target);
}

inline void require_valid(const HiggsModule& h) {
    const auto r = validate_higgs(h);
    if (!r.valid()) throw ValidationError("invalid Higgs module: " + r.summary());
}

inline void require_valid(const SmallRep& v) {
    const auto r = validate_rep(v);
    if (!r.valid()) throw ValidationError("invalid small representation: " + r.summary());
}

/// rho_i = exp(theta_i).
inline SmallRep higgs_to_rep(const HiggsModule& h) {
    require_valid(h);
    SmallRep v{h.ctx, h.rank, {}};
    for (const auto& t : h.theta) v.rho.push_back(matrix_exp(t));
    return v;
}

/// theta_i = log(rho_i): the canonical Higgs field of the representation.
inline HiggsModule rep_to_higgs(const SmallRep& v) {
    require_valid(v);
    HiggsModule h{v.ctx, v.rank, {}};
    for (const auto& r : v.rho) h.theta.push_back(matrix_log(r));
    return h;
}

inline bool is_trivial(const HiggsModule& h) {
    for (const auto& t : h.theta)
        if (!t.is_zero()) return false;
    return true;
}

inline bool is_trivial(const SmallRep& v) {
    for (const auto& r : v.rho)
        if (!(r - Matrix::identity(v.ctx, v.rank)).is_zero()) return false;
    return true;
}

namespace detail {

template <class T>
void check_compatible(const T& a, const T& b) {
    if (!a.ctx->same_prime(*b.ctx)) throw ContextMismatch("objects over different primes");
    if (a.d() != b.d()) throw DimensionMismatch("objects with different numbers of components");
}

} // namespace detail

inline HiggsModule direct_sum(const HiggsModule& a, const HiggsModule& b) {
    detail::check_compatible(a, b);
    HiggsModule r{a.ctx->precision() >= b.ctx->precision() ? a.ctx : b.ctx, a.rank + b.rank, {}};
    for (std::size_t i = 0; i < a.d(); ++i) r.theta.push_back(block_diag(a.theta[i], b.theta[i]));
    return r;
}

inline SmallRep direct_sum(const SmallRep& a, const SmallRep& b) {
    detail::check_compatible(a, b);
    SmallRep r{a.ctx->precision() >= b.ctx->precision() ? a.ctx : b.ctx, a.rank + b.rank, {}};
    for (std::size_t i = 0; i < a.d(); ++i) r.rho.push_back(block_diag(a.rho[i], b.rho[i]));
    return r;
}

/// theta = theta_1 (x) 1 + 1 (x) theta_2.
inline HiggsModule tensor(const HiggsModule& a, const HiggsModule& b) {
    detail::check_compatible(a, b);
    HiggsModule r{a.ctx->precision() >= b.ctx->precision() ? a.ctx : b.ctx, a.rank * b.rank, {}};
    const Matrix ia = Matrix::identity(a.ctx, a.rank), ib = Matrix::identity(b.ctx, b.rank);
    for (std::size_t i = 0; i < a.d(); ++i) r.theta.push_back(kron(a.theta[i], ib) + kron(ia, b.theta[i]));
    return r;
}

inline SmallRep tensor(const SmallRep& a, const SmallRep& b) {
    detail::check_compatible(a, b);
    SmallRep r{a.ctx->precision() >= b.ctx->precision() ? a.ctx : b.ctx, a.rank * b.rank, {}};
    for (std::size_t i = 0; i < a.d(); ++i) r.rho.push_back(kron(a.rho[i], b.rho[i]));
    return r;
}

/// Dual Higgs field -theta^T, so that the evaluation pairing is flat.
inline HiggsModule dual(const HiggsModule& a) {
    HiggsModule r{a.ctx, a.rank, {}};
    for (const auto& t : a.theta) r.theta.push_back(-t.transpose());
    return r;
}

inline SmallRep dual(const SmallRep& a, std::int64_t slack = kDefaultSlack) {
    SmallRep r{a.ctx, a.rank, {}};
    for (const auto& m : a.rho) r.rho.push_back(inverse(m, slack).transpose());
    return r;
}

/// The action of gamma^a = prod gamma_i^(a_i) for p-adic integers a_i.
inline Matrix evaluate_rep(const SmallRep& v, const std::vector<PadicScalar>& a) {
    require_valid(v);
    if (a.size() != v.d()) throw DimensionMismatch("evaluate_rep: exponent vector length differs from d");
    Matrix acc(v.ctx, v.rank, v.rank);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].valuation_bound() < 0) throw OutsideExpDomain("evaluate_rep: exponent is not a p-adic integer");
        acc += a[i] * matrix_log(v.rho[i]);
    }
    return matrix_exp(acc);
}

} // namespace simpson
