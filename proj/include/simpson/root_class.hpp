#pragma once

/**
 * @file root_class.hpp
 * @brief p-power root classes of units and the unit-group square of a nilpotent thickening.
 *
 * A RootClass (u, k) stands for "u^(1/p^k)" in the colimit of R^x under x -> x^p.
 * Two classes are compared by raising both representatives to a common level,
 * plus enough further p-th powers to kill the p-power roots of unity an algebra
 * of this dimension can contain.
 */

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "simpson/algebra_exp.hpp"
#include "simpson/random.hpp"

namespace simpson {

struct RootClass {
    AlgElement representative;
    std::int64_t level = 0;
};

/// Largest t with p^(t-1)(p-1) <= dim: bounds the order of p-power roots of unity in A.
inline std::int64_t root_of_unity_exponent(std::int64_t p, std::size_t dim) {
    std::int64_t t = 0;
    std::int64_t degree = p - 1;
    while (degree <= static_cast<std::int64_t>(dim)) {
        ++t;
        degree *= p;
    }
    return t;
}

namespace detail {

inline AlgElement pow_p(AlgElement x, std::int64_t p, std::int64_t times) {
    for (std::int64_t i = 0; i < times; ++i) x = x.pow(static_cast<std::uint64_t>(p));
    return x;
}

} // namespace detail

/// Equality of root classes to relative precision digits.
inline bool root_classes_agree(const RootClass& a, const RootClass& b, std::int64_t digits) {
    const Algebra& alg = a.representative.algebra();
    if (alg.get() != b.representative.algebra().get()) {
        if (!alg->context()->same_prime(*b.representative.algebra()->context()))
            throw ContextMismatch("root classes over different primes");
        throw AlgebraMismatch("root classes over different algebras");
    }
    const std::int64_t p = alg->context()->prime();
    const std::int64_t k = std::max(a.level, b.level);
    const std::int64_t t = root_of_unity_exponent(p, alg->dim());
    const AlgElement x = detail::pow_p(a.representative, p, k - a.level + t);
    const AlgElement y = detail::pow_p(b.representative, p, k - b.level + t);
    return x.agrees_with(y, digits + std::max<std::int64_t>(0, y.min_valuation()));
}

inline bool root_class_equal(const RootClass& a, const RootClass& b, std::int64_t slack = kDefaultSlack) {
    return root_classes_agree(a, b, a.representative.algebra()->context()->precision() - slack);
}

inline RootClass operator*(const RootClass& a, const RootClass& b) {
    const std::int64_t p = a.representative.algebra()->context()->prime();
    const std::int64_t k = std::max(a.level, b.level);
    return {detail::pow_p(a.representative, p, k - a.level) * detail::pow_p(b.representative, p, k - b.level), k};
}

/// Outcome of the pullback / pushout verification.
struct CartSquareReport {
    std::size_t pullback_checked = 0;
    std::size_t pushout_checked = 0;
    std::size_t uniqueness_checked = 0;
    std::vector<std::string> counterexamples;
    std::vector<std::string> notes;

    bool passed() const { return counterexamples.empty(); }
};

struct CartSquareOptions {
    std::size_t count = 16;
    std::int64_t max_level = 3;
    std::uint64_t seed = 0;
    std::int64_t slack = kDefaultSlack;
};

namespace detail {

inline AlgElement random_unit_element(const Algebra& a, Rng& rng, std::int64_t slack) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        AlgElement x = random_element(a, rng);
        if (x.is_unit(slack) && x.inverse(slack).min_valuation() >= 0) return x;
    }
    return AlgElement::one(a);
}

inline AlgElement random_in_span(const Algebra& a, const std::vector<AlgElement>& basis, Rng& rng) {
    AlgElement x = AlgElement::zero(a);
    for (const auto& b : basis) x += random_scalar(a->context(), rng) * b;
    return x;
}

// (1 + m)^(1/p^k) for nilpotent m.
inline AlgElement nil_root(const AlgElement& one_plus_m, std::int64_t k) {
    const Context& ctx = one_plus_m.algebra()->context();
    return nil_exp(PadicScalar::power_of_p(ctx, -k) * nil_log(one_plus_m));
}

inline bool is_nilpotent(const AlgElement& x) { return x.pow(x.dim()).is_zero(); }

// Checks on one point component: f maps R (connected) onto S with nilpotent kernel.
inline void check_point_component(const AlgebraMorphism& f, const CartSquareOptions& opt, std::int64_t digits,
                                  CartSquareReport& report, const std::string& tag) {
    const Algebra& r = f.source();
    const Algebra& s = f.target();
    const std::int64_t p = r->context()->prime();
    const auto ker = f.kernel_basis(opt.slack);
    for (const auto& k : ker)
        if (!is_nilpotent(k)) {
            report.counterexamples.push_back(tag + ": kernel element " + k.to_string() + " is not nilpotent");
            return;
        }
    Rng rng(opt.seed);
    auto lift = [&](const AlgElement& y) {
        auto x = solve(f.matrix(), y.coords(), opt.slack);
        if (!x) throw NotSurjective("cart_square_check: element has no preimage");
        return AlgElement(r, std::move(*x));
    };
    std::uniform_int_distribution<std::int64_t> level(0, opt.max_level);
    for (std::size_t i = 0; i < opt.count; ++i) {
        // pullback: (s, [r, k]) with equal images determine a unique unit u of R
        const AlgElement sv = random_unit_element(s, rng, opt.slack);
        const AlgElement st = lift(sv);
        const AlgElement m = random_in_span(r, ker, rng);
        const std::int64_t k = level(rng);
        const AlgElement rep = pow_p(st, p, k) * (AlgElement::one(r) + m);
        const AlgElement u = st * nil_root(AlgElement::one(r) + m, k);
        ++report.pullback_checked;
        if (!f(u).agrees_with(sv, digits) || !root_classes_agree({u, 0}, {rep, k}, digits)) {
            report.counterexamples.push_back(tag + ": pullback fails for s = " + sv.to_string() + ", r = " +
                                             rep.to_string() + ", level " + std::to_string(k));
            continue;
        }
        if (!ker.empty()) {
            std::uniform_int_distribution<std::size_t> pick(0, ker.size() - 1);
            const AlgElement m2 = random_unit(r->context(), rng) * ker[pick(rng)];
            const AlgElement other = u * (AlgElement::one(r) + m2);
            ++report.uniqueness_checked;
            if (root_classes_agree({other, 0}, {rep, k}, digits))
                report.counterexamples.push_back(tag + ": pullback not unique for s = " + sv.to_string());
        }
    }
    // pushout: every [s, k] is [s0, 0] * f([r, k])
    const ReducedQuotient qs = reduced_quotient(s, opt.slack);
    const bool split = qs.reduced->dim() == 1;
    if (!split) report.notes.push_back(tag + ": residue algebra of S is a proper extension; pushout via lifts");
    for (std::size_t i = 0; i < opt.count; ++i) {
        const AlgElement sv = random_unit_element(s, rng, opt.slack);
        const std::int64_t k = level(rng);
        AlgElement s0 = AlgElement::one(s);
        AlgElement rv = lift(sv);
        if (split) {
            const PadicScalar a = split_scalar_part(qs, sv);
            const AlgElement n = a.inverse() * sv - AlgElement::one(s);
            s0 = nil_root(AlgElement::one(s) + n, k);
            rv = AlgElement::scalar(r, a);
        }
        ++report.pushout_checked;
        const RootClass lhs{sv, k};
        const RootClass rhs = RootClass{s0, 0} * RootClass{f(rv), k};
        if (!root_classes_agree(lhs, rhs, digits))
            report.counterexamples.push_back(tag + ": pushout decomposition fails for s = " + sv.to_string() +
                                             " at level " + std::to_string(k));
    }
}

} // namespace detail

/// Verifies the unit-group square of f: R -> S on a seeded battery of units.
inline CartSquareReport cart_square_check(const AlgebraMorphism& f, const CartSquareOptions& opt = {}) {
    const Algebra& r0 = f.source();
    const Algebra& s0 = f.target();
    if (!r0->context()->same_prime(*s0->context())) throw ContextMismatch("cart_square_check: different primes");
    f.validate();
    if (!f.surjective(opt.slack)) throw NotSurjective("cart_square_check: the quotient map is not surjective");
    if (!is_connected(s0, opt.slack)) throw NotConnected("cart_square_check: S must be connected");

    const Context& ctx = r0->context();
    const std::int64_t digits = ctx->precision() - opt.slack;
    const Context work = ctx->widened(4 * opt.max_level * static_cast<std::int64_t>(r0->dim()) + 16);
    const Algebra r = r0->lifted(work);
    const Algebra s = s0->lifted(work);
    const AlgebraMorphism fw = f.lifted(r, s);

    CartSquareReport report;
    const auto idem = idempotents(r, opt.slack);
    std::size_t index = 0;
    for (const auto& e : idem) {
        const std::string tag = "component " + std::to_string(index++);
        const AlgElement fe = fw(e);
        if (fe.is_zero()) {
            report.notes.push_back(tag + " maps to 0 in S; handled as a separate factor");
            continue;
        }
        if (!(fe == AlgElement::one(s))) {
            report.counterexamples.push_back(tag + ": image of the idempotent is neither 0 nor 1");
            continue;
        }
        const Component c = component_algebra(e, opt.slack);
        const Matrix fm = fw.matrix() * c.embedding;
        const AlgebraMorphism fc(c.algebra, s, fm);
        fc.validate();
        detail::check_point_component(fc, opt, digits, report, tag);
    }
    return report;
}

} // namespace simpson
