#pragma once

/**
 * @file koszul.hpp
 * @brief Koszul complexes of commuting operators; Higgs and group cohomology.
 *
 * C^k = E (x) Lambda^k with basis v_a (x) e_S, |S| = k, subsets in increasing
 * bitmask order. The differential is
 *   d(v (x) e_S) = sum_{i not in S} A_i v (x) e_i ^ e_S,
 *   e_i ^ e_S = (-1)^{#{j in S : j < i}} e_{S u {i}}.
 */

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "simpson/higgs.hpp"

namespace simpson {

struct CohomologyReport {
    std::vector<std::size_t> h;
    std::vector<std::int64_t> margins;
    std::string side;

    std::string dims() const {
        std::string s;
        for (std::size_t i = 0; i < h.size(); ++i) s += (i ? " " : "") + std::to_string(h[i]);
        return s;
    }
};

class ComparisonFailure : public Error {
public:
    ComparisonFailure(const std::string& what, CohomologyReport higgs, CohomologyReport group)
        : Error(what), higgs_(std::move(higgs)), group_(std::move(group)) {}
    const CohomologyReport& higgs() const noexcept { return higgs_; }
    const CohomologyReport& group() const noexcept { return group_; }

private:
    CohomologyReport higgs_;
    CohomologyReport group_;
};

class KoszulComplex {
public:
    KoszulComplex(const Context& ctx, std::size_t n, std::vector<Matrix> ops) : ctx_(ctx), n_(n), ops_(std::move(ops)) {
        for (std::size_t i = 0; i < ops_.size(); ++i)
            if (ops_[i].rows() != n_ || ops_[i].cols() != n_)
                throw DimensionMismatch("Koszul operator " + std::to_string(i + 1) + " has shape " +
                                        ops_[i].shape());
        for (std::size_t i = 0; i < ops_.size(); ++i)
            for (std::size_t j = i + 1; j < ops_.size(); ++j)
                if (!ops_[i].commutes_with(ops_[j]))
                    throw CommutationFailure("Koszul operators " + std::to_string(i + 1) + " and " +
                                             std::to_string(j + 1) + " do not commute");
        const std::size_t d = ops_.size();
        subsets_.assign(d + 1, {});
        for (unsigned mask = 0; mask < (1u << d); ++mask) subsets_[popcount(mask)].push_back(mask);
        for (std::size_t k = 0; k < d; ++k) diffs_.push_back(build(k));
    }

    std::size_t d() const noexcept { return ops_.size(); }
    std::size_t module_dim() const noexcept { return n_; }
    std::size_t term_dim(std::size_t k) const { return n_ * subsets_.at(k).size(); }
    /// d^k : C^k -> C^(k+1), for k < d.
    const Matrix& differential(std::size_t k) const { return diffs_.at(k); }

    /// Throws CommutationFailure unless consecutive differentials compose to zero.
    void check_square_zero() const {
        for (std::size_t k = 0; k + 1 < diffs_.size(); ++k)
            if (!(diffs_[k + 1] * diffs_[k]).is_zero())
                throw CommutationFailure("Koszul differential does not square to zero in degree " + std::to_string(k));
    }

    CohomologyReport cohomology(const std::string& side, std::int64_t slack = kDefaultSlack) const {
        const std::size_t d = ops_.size();
        std::vector<std::size_t> ranks(d, 0);
        std::vector<std::int64_t> rank_margin(d, std::numeric_limits<std::int64_t>::max());
        for (std::size_t k = 0; k < d; ++k) {
            const RankResult r = rank_with_margin(diffs_[k], slack);
            ranks[k] = r.rank;
            rank_margin[k] = r.margin;
        }
        CohomologyReport rep;
        rep.side = side;
        for (std::size_t k = 0; k <= d; ++k) {
            std::size_t h = term_dim(k);
            std::int64_t margin = ctx_->precision();
            if (k < d) {
                h -= ranks[k];
                margin = std::min(margin, rank_margin[k]);
            }
            if (k > 0) {
                h -= ranks[k - 1];
                margin = std::min(margin, rank_margin[k - 1]);
            }
            rep.h.push_back(h);
            rep.margins.push_back(margin);
        }
        return rep;
    }

private:
    static std::size_t popcount(unsigned x) {
        std::size_t c = 0;
        for (; x; x &= x - 1) ++c;
        return c;
    }

    std::size_t index_of(std::size_t k, unsigned mask) const {
        const auto& s = subsets_[k];
        for (std::size_t i = 0; i < s.size(); ++i)
            if (s[i] == mask) return i;
        throw std::logic_error("Koszul: subset not found");
    }

    Matrix build(std::size_t k) const {
        Matrix m(ctx_, term_dim(k + 1), term_dim(k));
        for (std::size_t si = 0; si < subsets_[k].size(); ++si) {
            const unsigned s = subsets_[k][si];
            for (std::size_t i = 0; i < ops_.size(); ++i) {
                if (s & (1u << i)) continue;
                const std::size_t below = popcount(s & ((1u << i) - 1));
                const std::size_t ti = index_of(k + 1, s | (1u << i));
                const bool negative = below % 2 == 1;
                for (std::size_t a = 0; a < n_; ++a)
                    for (std::size_t b = 0; b < n_; ++b) {
                        const PadicScalar& x = ops_[i](a, b);
                        m(ti * n_ + a, si * n_ + b) = negative ? -x : x;
                    }
            }
        }
        return m;
    }

    Context ctx_;
    std::size_t n_;
    std::vector<Matrix> ops_;
    std::vector<std::vector<unsigned>> subsets_;
    std::vector<Matrix> diffs_;
};

inline CohomologyReport koszul_cohomology(const Context& ctx, std::size_t n, const std::vector<Matrix>& ops,
                                          const std::string& side, std::int64_t slack = kDefaultSlack) {
    const KoszulComplex k(ctx, n, ops);
    k.check_square_zero();
    return k.cohomology(side, slack);
}

inline CohomologyReport higgs_cohomology(const HiggsModule& h, std::int64_t slack = kDefaultSlack) {
    require_valid(h);
    return koszul_cohomology(h.ctx, h.rank, h.theta, "higgs", slack);
}

/// Continuous cohomology of Z_p^d via Kos(rho_1 - 1, ..., rho_d - 1).
inline CohomologyReport group_cohomology(const SmallRep& v, std::int64_t slack = kDefaultSlack) {
    require_valid(v);
    std::vector<Matrix> ops;
    const Matrix id = Matrix::identity(v.ctx, v.rank);
    for (const auto& r : v.rho) ops.push_back(r - id);
    return koszul_cohomology(v.ctx, v.rank, ops, "group", slack);
}

/// u = sum_{n>=0} theta^n / (n+1)!, so that theta * u = exp(theta) - 1.
inline Matrix exp_quotient(const Matrix& theta) {
    const Context& ctx = theta.context();
    const std::size_t n = theta.rows();
    const std::int64_t p = ctx->prime();
    const std::int64_t v = theta.min_valuation();
    if (v < ctx->exp_domain()) throw OutsideExpDomain("exp_quotient: entry valuation below the exp domain");
    const std::int64_t target = std::min(ctx->precision(), theta.min_precision());
    const std::int64_t k = exp_truncation_index(p, v, target + 1) + 1;
    const Context work = ctx->widened(k / (p - 1) + 8);
    const Matrix tw = theta.in_context(work);
    Matrix term = Matrix::identity(work, n);
    Matrix sum = term;
    for (std::int64_t j = 1; j < k; ++j) {
        term = PadicScalar::from_rational(work, 1, static_cast<long>(j + 1)) * (term * tw);
        sum += term;
    }
    return sum.in_context(ctx).reduced_to(target);
}

struct CohomologyComparison {
    CohomologyReport higgs;
    CohomologyReport group;
};

/// Higgs and group cohomology of H and exp(H), with the unit-scaling witness checked.
inline CohomologyComparison compare_cohomology(const HiggsModule& h, std::int64_t slack = kDefaultSlack) {
    const SmallRep v = higgs_to_rep(h);
    CohomologyComparison c{higgs_cohomology(h, slack), group_cohomology(v, slack)};
    const std::int64_t digits = h.ctx->precision() - slack;
    const Matrix id = Matrix::identity(h.ctx, h.rank);
    for (std::size_t i = 0; i < h.d(); ++i) {
        const Matrix u = exp_quotient(h.theta[i]);
        if (!(h.theta[i] * u).agrees_with(v.rho[i] - id, digits))
            throw ComparisonFailure("unit-scaling witness: theta u != rho - 1 for component " + std::to_string(i + 1),
                                    c.higgs, c.group);
        if (h.rank > 0 && rank(u, slack) != h.rank)
            throw ComparisonFailure("unit-scaling witness is not invertible for component " + std::to_string(i + 1),
                                    c.higgs, c.group);
        for (std::size_t j = 0; j < h.d(); ++j)
            if (!u.commutes_with(h.theta[j]))
                throw ComparisonFailure("unit-scaling witness does not commute with component " +
                                            std::to_string(j + 1),
                                        c.higgs, c.group);
    }
    if (c.higgs.h != c.group.h)
        throw ComparisonFailure("cohomology dimensions differ: higgs " + c.higgs.dims() + " vs group " + c.group.dims(),
                                c.higgs, c.group);
    return c;
}

/// Whether Kos(a_i) and Kos(a_i u_i) have equal cohomology dimensions.
inline bool koszul_unit_scaling_check(const Context& ctx, std::size_t n, const std::vector<Matrix>& ops,
                                      const std::vector<Matrix>& units, std::int64_t slack = kDefaultSlack) {
    if (ops.size() != units.size()) throw DimensionMismatch("unit scaling: operator and unit counts differ");
    for (std::size_t i = 0; i < ops.size(); ++i)
        for (std::size_t j = 0; j < ops.size(); ++j) {
            if (j > i && !ops[i].commutes_with(ops[j]))
                throw CommutationFailure("operators " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                         " do not commute");
            if (!units[i].commutes_with(ops[j]))
                throw CommutationFailure("unit " + std::to_string(i + 1) + " does not commute with operator " +
                                         std::to_string(j + 1));
            if (j > i && !units[i].commutes_with(units[j]))
                throw CommutationFailure("units " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                         " do not commute");
        }
    std::vector<Matrix> scaled;
    for (std::size_t i = 0; i < ops.size(); ++i) {
        if (n > 0 && rank(units[i], slack) != n) throw NotAUnit("unit " + std::to_string(i + 1) + " is singular");
        scaled.push_back(ops[i] * units[i]);
    }
    return koszul_cohomology(ctx, n, ops, "base", slack).h == koszul_cohomology(ctx, n, scaled, "scaled", slack).h;
}

} // namespace simpson
