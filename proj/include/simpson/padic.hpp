#pragma once

/**
 * @file padic.hpp
 * @brief Q_p scalars with tracked absolute precision.
 *
 * A nonzero PadicScalar stores x = p^v * u with u a unit known modulo
 * p^(prec - v); the value is known modulo p^prec. A value all of whose digits
 * vanish below prec is kept as a distinguished zero-to-precision marker and
 * is never confused with an exact zero.
 *
 * Precision rules (capped by the context precision N):
 *   add / sub : min(prec_a, prec_b)
 *   mul       : min(prec_a + v_b, prec_b + v_a)
 *   div       : (v_a - v_b) + min(rel_a, rel_b)      rel = prec - v
 *   inverse   : prec_a - 2 v_a
 */

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "simpson/error.hpp"

namespace simpson {

class PrimeContext;
using Context = std::shared_ptr<const PrimeContext>;

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    mpz_class z(static_cast<long>(n));
    return mpz_probab_prime_p(z.get_mpz_t(), 40) != 0;
}

/// Prime, default absolute precision N and exp-domain exponent e0.
class PrimeContext {
public:
    static constexpr std::int64_t kMinPrecision = 8;

    static Context create(std::int64_t p, std::int64_t precision) {
        if (!is_prime(p)) throw std::invalid_argument("PrimeContext: " + std::to_string(p) + " is not prime");
        if (precision < kMinPrecision)
            throw std::invalid_argument("PrimeContext: precision must be at least " +
                                        std::to_string(kMinPrecision));
        return Context(new PrimeContext(p, precision));
    }

    std::int64_t prime() const noexcept { return p_; }
    std::int64_t precision() const noexcept { return precision_; }
    /// e0 = 1 for odd p, 2 for p = 2: exp is an isomorphism p^e0 Z_p -> 1 + p^e0 Z_p.
    std::int64_t exp_domain() const noexcept { return p_ == 2 ? 2 : 1; }
    const mpz_class& prime_mpz() const noexcept { return powers_[1]; }

    /// p^k for k >= 0. References stay valid for the lifetime of the context.
    const mpz_class& power(std::int64_t k) const {
        if (k < 0) throw std::invalid_argument("PrimeContext::power: negative exponent");
        const auto uk = static_cast<std::size_t>(k);
        if (uk < powers_.size()) return powers_[uk];
        std::lock_guard<std::mutex> lock(overflow_mutex_);
        const std::size_t idx = uk - powers_.size();
        while (overflow_.size() <= idx) {
            const mpz_class& prev = overflow_.empty() ? powers_.back() : overflow_.back();
            overflow_.push_back(prev * powers_[1]);
        }
        return overflow_[idx];
    }

    /// Same prime, precision raised by extra digits (working context for series).
    Context widened(std::int64_t extra) const {
        extra = std::max<std::int64_t>(0, extra);
        std::lock_guard<std::mutex> lock(widened_mutex_);
        auto it = widened_.find(extra);
        if (it == widened_.end())
            it = widened_.emplace(extra, Context(new PrimeContext(p_, precision_ + extra))).first;
        return it->second;
    }

    /// Same prime with an explicit precision.
    Context with_precision(std::int64_t precision) const { return create(p_, precision); }

    bool same_prime(const PrimeContext& other) const noexcept { return p_ == other.p_; }

private:
    PrimeContext(std::int64_t p, std::int64_t precision) : p_(p), precision_(precision) {
        const auto size = static_cast<std::size_t>(2 * precision + 72);
        powers_.reserve(size);
        powers_.emplace_back(1);
        const mpz_class pz(static_cast<long>(p));
        for (std::size_t i = 1; i < size; ++i) powers_.push_back(powers_.back() * pz);
    }

    std::int64_t p_;
    std::int64_t precision_;
    std::vector<mpz_class> powers_;
    mutable std::mutex overflow_mutex_;
    mutable std::deque<mpz_class> overflow_;
    mutable std::mutex widened_mutex_;
    mutable std::map<std::int64_t, Context> widened_;
};

/// p-adic number of Q_p with tracked absolute precision.
class PadicScalar {
public:
    PadicScalar() = default;

    static PadicScalar zero(const Context& ctx) { return zero(ctx, ctx->precision()); }
    static PadicScalar zero(const Context& ctx, std::int64_t prec) {
        PadicScalar z;
        z.ctx_ = ctx;
        z.prec_ = std::min(prec, ctx->precision());
        z.val_ = z.prec_;
        return z;
    }
    static PadicScalar one(const Context& ctx) { return from_int(ctx, 1); }

    static PadicScalar from_int(const Context& ctx, long value) { return from_mpz(ctx, mpz_class(value)); }

    static PadicScalar from_mpz(const Context& ctx, const mpz_class& value) {
        return normalize(ctx, 0, value, ctx->precision());
    }

    static PadicScalar from_rational(const Context& ctx, const mpz_class& num, const mpz_class& den) {
        if (den == 0) throw DivisionByZeroToPrecision("from_rational: zero denominator");
        if (num == 0) return zero(ctx);
        mpz_class n = num, d = den;
        const std::int64_t vn = strip(n, ctx->prime_mpz());
        const std::int64_t vd = strip(d, ctx->prime_mpz());
        const std::int64_t v = vn - vd;
        const std::int64_t prec = ctx->precision();
        if (v >= prec) return zero(ctx, prec);
        const mpz_class& mod = ctx->power(prec - v);
        mpz_class dinv;
        mpz_invert(dinv.get_mpz_t(), d.get_mpz_t(), mod.get_mpz_t());
        return normalize(ctx, v, n * dinv, prec);
    }

    /// p^valuation * unit, known modulo p^prec.
    static PadicScalar from_parts(const Context& ctx, std::int64_t valuation, const mpz_class& unit,
                                  std::int64_t prec) {
        return normalize(ctx, valuation, unit, prec);
    }

    /// p^k exactly (to the context precision).
    static PadicScalar power_of_p(const Context& ctx, std::int64_t k) {
        return normalize(ctx, k, mpz_class(1), ctx->precision());
    }

    const Context& context() const noexcept { return ctx_; }
    bool valid() const noexcept { return static_cast<bool>(ctx_); }
    std::int64_t prime() const { return ctx_->prime(); }

    bool is_zero() const noexcept { return unit_ == 0; }
    /// Valuation, or nullopt for a zero-to-precision value.
    std::optional<std::int64_t> valuation() const {
        if (is_zero()) return std::nullopt;
        return val_;
    }
    /// Valuation, or the precision for a zero-to-precision value (a valid lower bound).
    std::int64_t valuation_bound() const noexcept { return val_; }
    std::int64_t precision() const noexcept { return prec_; }
    std::int64_t relative_precision() const noexcept { return prec_ - val_; }
    const mpz_class& unit() const noexcept { return unit_; }

    /// Same value re-homed into another context of the same prime; precision capped there.
    PadicScalar in_context(const Context& ctx) const {
        check_prime(*ctx_, *ctx);
        if (is_zero()) return zero(ctx, prec_);
        return normalize(ctx, val_, unit_, prec_);
    }

    /// Forget digits at and beyond p^prec.
    PadicScalar reduced_to(std::int64_t prec) const {
        if (prec >= prec_) return *this;
        if (is_zero() || val_ >= prec) return zero(ctx_, prec);
        return normalize(ctx_, val_, unit_, prec);
    }

    PadicScalar operator-() const {
        if (is_zero()) return *this;
        PadicScalar r = *this;
        r.unit_ = ctx_->power(prec_ - val_) - unit_;
        return r;
    }

    friend PadicScalar operator+(const PadicScalar& a, const PadicScalar& b) { return add(a, b, false); }
    friend PadicScalar operator-(const PadicScalar& a, const PadicScalar& b) { return add(a, b, true); }

    friend PadicScalar operator*(const PadicScalar& a, const PadicScalar& b) {
        const Context& ctx = pick(a, b);
        if (a.is_zero() || b.is_zero()) {
            const std::int64_t prec = std::min(a.prec_ + b.val_, b.prec_ + a.val_);
            return zero(ctx, prec);
        }
        const std::int64_t v = a.val_ + b.val_;
        const std::int64_t rel = std::min(a.prec_ - a.val_, b.prec_ - b.val_);
        std::int64_t prec = std::min(v + rel, ctx->precision());
        if (v >= prec) return zero(ctx, prec);
        PadicScalar r;
        r.ctx_ = ctx;
        r.val_ = v;
        r.prec_ = prec;
        mpz_mul(r.unit_.get_mpz_t(), a.unit_.get_mpz_t(), b.unit_.get_mpz_t());
        mpz_fdiv_r(r.unit_.get_mpz_t(), r.unit_.get_mpz_t(), ctx->power(prec - v).get_mpz_t());
        return r;
    }

    friend PadicScalar operator/(const PadicScalar& a, const PadicScalar& b) {
        const Context& ctx = pick(a, b);
        if (b.is_zero()) throw DivisionByZeroToPrecision("division by a value that is zero to precision");
        if (a.is_zero()) return zero(ctx, a.prec_ - b.val_);
        const std::int64_t v = a.val_ - b.val_;
        const std::int64_t rel = std::min(a.prec_ - a.val_, b.prec_ - b.val_);
        const std::int64_t prec = std::min(v + rel, ctx->precision());
        if (v >= prec) return zero(ctx, prec);
        const mpz_class& mod = ctx->power(prec - v);
        mpz_class binv;
        mpz_invert(binv.get_mpz_t(), b.unit_.get_mpz_t(), mod.get_mpz_t());
        return normalize_unit(ctx, v, a.unit_ * binv, prec);
    }

    /// Multiplicative inverse; loses 2 * val(a) digits of absolute precision.
    PadicScalar inverse() const {
        if (is_zero()) throw DivisionByZeroToPrecision("inverse of a value that is zero to precision");
        const std::int64_t rel = prec_ - val_;
        const std::int64_t v = -val_;
        const std::int64_t prec = std::min(prec_ - 2 * val_, ctx_->precision());
        const mpz_class& mod = ctx_->power(prec - v);
        mpz_class inv;
        mpz_invert(inv.get_mpz_t(), unit_.get_mpz_t(), ctx_->power(rel).get_mpz_t());
        return normalize_unit(ctx_, v, inv % mod, prec);
    }

    PadicScalar pow(std::int64_t e) const {
        if (e < 0) return inverse().pow(-e);
        PadicScalar result = one(ctx_);
        PadicScalar base = *this;
        while (e > 0) {
            if (e & 1) result = result * base;
            e >>= 1;
            if (e) base = base * base;
        }
        return result;
    }

    PadicScalar& operator+=(const PadicScalar& b) { return *this = *this + b; }
    PadicScalar& operator-=(const PadicScalar& b) { return *this = *this - b; }
    PadicScalar& operator*=(const PadicScalar& b) { return *this = *this * b; }
    PadicScalar& operator/=(const PadicScalar& b) { return *this = *this / b; }

    /// Agreement modulo p^min(precisions).
    friend bool operator==(const PadicScalar& a, const PadicScalar& b) { return (a - b).is_zero(); }

    /// True when a - b is known to vanish modulo p^digits.
    bool agrees_with(const PadicScalar& b, std::int64_t digits) const {
        return (*this - b).valuation_bound() >= digits;
    }

    /// Integer representative in [0, p^prec) for values of nonnegative valuation.
    mpz_class residue() const {
        if (val_ < 0) throw std::domain_error("residue: negative valuation");
        if (is_zero()) return 0;
        return unit_ * ctx_->power(val_);
    }

    /// Representative in (-p^prec / 2, p^prec / 2].
    mpz_class balanced_residue() const {
        mpz_class r = residue();
        if (prec_ <= 0) return 0;
        const mpz_class& mod = ctx_->power(prec_);
        if (2 * r > mod) r -= mod;
        return r;
    }

    /// x mod p as an integer in [0, p); requires val >= 0 and prec >= 1.
    std::int64_t residue_mod_p() const {
        if (val_ < 0) throw std::domain_error("residue_mod_p: negative valuation");
        if (prec_ < 1) throw PrecisionExhausted("residue_mod_p: no digits known");
        if (val_ > 0 || is_zero()) return 0;
        mpz_class r;
        mpz_fdiv_r(r.get_mpz_t(), unit_.get_mpz_t(), ctx_->prime_mpz().get_mpz_t());
        return r.get_si();
    }

private:
    static std::int64_t strip(mpz_class& m, const mpz_class& p) {
        return static_cast<std::int64_t>(mpz_remove(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t()));
    }

    static void check_prime(const PrimeContext& a, const PrimeContext& b) {
        if (!a.same_prime(b))
            throw ContextMismatch("p-adic values over different primes: " + std::to_string(a.prime()) + " vs " +
                                  std::to_string(b.prime()));
    }

    static const Context& pick(const PadicScalar& a, const PadicScalar& b) {
        if (a.ctx_.get() == b.ctx_.get()) return a.ctx_;
        check_prime(*a.ctx_, *b.ctx_);
        return a.ctx_->precision() >= b.ctx_->precision() ? a.ctx_ : b.ctx_;
    }

    // m arbitrary integer; value p^v * m known modulo p^prec.
    static PadicScalar normalize(const Context& ctx, std::int64_t v, const mpz_class& m, std::int64_t prec) {
        prec = std::min(prec, ctx->precision());
        if (v >= prec || m == 0) return zero(ctx, prec);
        mpz_class r;
        mpz_fdiv_r(r.get_mpz_t(), m.get_mpz_t(), ctx->power(prec - v).get_mpz_t());
        if (r == 0) return zero(ctx, prec);
        v += strip(r, ctx->prime_mpz());
        if (v >= prec) return zero(ctx, prec);
        PadicScalar s;
        s.ctx_ = ctx;
        s.val_ = v;
        s.prec_ = prec;
        mpz_fdiv_r(s.unit_.get_mpz_t(), r.get_mpz_t(), ctx->power(prec - v).get_mpz_t());
        return s;
    }

    // m already known to be coprime to p.
    static PadicScalar normalize_unit(const Context& ctx, std::int64_t v, const mpz_class& m, std::int64_t prec) {
        PadicScalar s;
        s.ctx_ = ctx;
        s.val_ = v;
        s.prec_ = prec;
        mpz_fdiv_r(s.unit_.get_mpz_t(), m.get_mpz_t(), ctx->power(prec - v).get_mpz_t());
        return s;
    }

    static PadicScalar add(const PadicScalar& a, const PadicScalar& b, bool subtract) {
        const Context& ctx = pick(a, b);
        const std::int64_t prec = std::min({a.prec_, b.prec_, ctx->precision()});
        if (b.is_zero()) return a.in_context_reduced(ctx, prec);
        if (a.is_zero()) {
            PadicScalar nb = b.in_context_reduced(ctx, prec);
            return subtract ? -nb : nb;
        }
        const std::int64_t v = std::min(a.val_, b.val_);
        if (v >= prec) return zero(ctx, prec);
        const std::int64_t width = prec - v;
        mpz_class m;
        if (a.val_ - v < width) {
            if (a.val_ == v) m = a.unit_;
            else m = a.unit_ * ctx->power(a.val_ - v);
        }
        if (b.val_ - v < width) {
            if (b.val_ == v) {
                if (subtract) m -= b.unit_;
                else m += b.unit_;
            } else {
                if (subtract) m -= b.unit_ * ctx->power(b.val_ - v);
                else m += b.unit_ * ctx->power(b.val_ - v);
            }
        }
        return normalize(ctx, v, m, prec);
    }

    PadicScalar in_context_reduced(const Context& ctx, std::int64_t prec) const {
        if (is_zero() || val_ >= prec) return zero(ctx, prec);
        if (ctx.get() == ctx_.get() && prec == prec_) return *this;
        return normalize(ctx, val_, unit_, prec);
    }

    Context ctx_;
    std::int64_t val_ = 0;
    std::int64_t prec_ = 0;
    mpz_class unit_;
};

/// Valuation of a value, nullopt when zero to precision.
inline std::optional<std::int64_t> val(const PadicScalar& a) { return a.valuation(); }

inline PadicScalar scalar(const Context& ctx, long value) { return PadicScalar::from_int(ctx, value); }

/// Re-home into a wider context, reading values known to full precision as exact.
inline PadicScalar exact_lift(const PadicScalar& x, const Context& wide) {
    if (x.precision() < x.context()->precision()) return x.in_context(wide);
    if (x.is_zero()) return PadicScalar::zero(wide);
    // balanced unit, so that small negative integers lift to themselves
    const mpz_class& mod = x.context()->power(x.relative_precision());
    mpz_class u = x.unit();
    if (2 * u > mod) u -= mod;
    return PadicScalar::from_parts(wide, x.valuation_bound(), u, wide->precision());
}

// ---------------------------------------------------------------------------
// Text form.
//
//   "a"      decimal integer            "a/b"   rational
//   "v:u"    p^v * u (u decimal)        any form may carry "@k": absolute precision k
// ---------------------------------------------------------------------------

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

inline mpz_class parse_integer(const std::string& s, const std::string& whole) {
    const std::string t = trim(s);
    if (t.empty()) throw ParseError("empty integer in scalar '" + whole + "'");
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) throw ParseError("malformed integer in scalar '" + whole + "'");
    for (std::size_t j = i; j < t.size(); ++j)
        if (!std::isdigit(static_cast<unsigned char>(t[j]))) throw ParseError("malformed scalar '" + whole + "'");
    mpz_class z;
    if (z.set_str(t[0] == '+' ? t.substr(1) : t, 10) != 0) throw ParseError("malformed scalar '" + whole + "'");
    return z;
}

inline std::int64_t parse_i64(const std::string& s, const std::string& whole) {
    const mpz_class z = parse_integer(s, whole);
    if (!z.fits_slong_p()) throw ParseError("exponent out of range in scalar '" + whole + "'");
    return z.get_si();
}

} // namespace detail

inline PadicScalar parse_scalar(const Context& ctx, const std::string& text) {
    std::string body = detail::trim(text);
    std::optional<std::int64_t> prec;
    if (const auto at = body.find('@'); at != std::string::npos) {
        prec = detail::parse_i64(body.substr(at + 1), text);
        body = detail::trim(body.substr(0, at));
    }
    PadicScalar x;
    if (const auto colon = body.find(':'); colon != std::string::npos) {
        const std::int64_t v = detail::parse_i64(body.substr(0, colon), text);
        const mpz_class u = detail::parse_integer(body.substr(colon + 1), text);
        if (u == 0) {
            x = PadicScalar::zero(ctx);
        } else {
            const std::int64_t p = prec.value_or(ctx->precision());
            x = PadicScalar::from_parts(ctx, v, u, p);
        }
    } else if (const auto slash = body.find('/'); slash != std::string::npos) {
        const mpz_class num = detail::parse_integer(body.substr(0, slash), text);
        const mpz_class den = detail::parse_integer(body.substr(slash + 1), text);
        if (den == 0) throw ParseError("zero denominator in scalar '" + text + "'");
        x = PadicScalar::from_rational(ctx, num, den);
    } else {
        x = PadicScalar::from_mpz(ctx, detail::parse_integer(body, text));
    }
    if (prec) x = x.reduced_to(*prec);
    return x;
}

/// Canonical text; "@k" is emitted only when the precision is below full_precision.
inline std::string format_scalar(const PadicScalar& x, std::int64_t full_precision) {
    const std::string suffix = x.precision() < full_precision ? "@" + std::to_string(x.precision()) : "";
    if (x.is_zero()) return "0" + suffix;
    if (x.valuation_bound() >= 0) return x.balanced_residue().get_str() + suffix;
    return std::to_string(x.valuation_bound()) + ":" + x.unit().get_str() + suffix;
}

inline std::string format_scalar(const PadicScalar& x) { return format_scalar(x, x.context()->precision()); }

} // namespace simpson
