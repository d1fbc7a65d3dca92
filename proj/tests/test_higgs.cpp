#include <gtest/gtest.h>

#include <gmpxx.h>

#include <random>
#include <vector>

#include "simpson/algebra_structure.hpp"
#include "simpson/generate.hpp"
#include "simpson/higgs.hpp"
#include "simpson/spectral.hpp"

using namespace simpson;

namespace {

constexpr std::int64_t kSlack = 4;
constexpr std::int64_t kRoundTripLoss = 8;

HiggsModule higgs(const Context& c, const std::vector<std::vector<std::vector<long>>>& theta) {
    HiggsModule h{c, theta.empty() ? 0 : theta[0].size(), {}};
    for (const auto& t : theta) h.theta.push_back(Matrix::from_ints(c, t));
    return h;
}

bool families_agree(const std::vector<Matrix>& a, const std::vector<Matrix>& b, std::int64_t digits) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].agrees_with(b[i], digits)) return false;
    return true;
}

// Sum of a^k / k! for a nilpotent integer matrix, in exact rational arithmetic.
Matrix nilpotent_exp_oracle(const Context& c, const std::vector<std::vector<long>>& a) {
    const std::size_t n = a.size();
    using Q = std::vector<std::vector<mpq_class>>;
    Q sum(n, std::vector<mpq_class>(n)), term(n, std::vector<mpq_class>(n));
    for (std::size_t i = 0; i < n; ++i) term[i][i] = 1;
    for (std::size_t k = 0; k <= n; ++k) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) sum[i][j] += term[i][j];
        Q next(n, std::vector<mpq_class>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l)
                for (std::size_t j = 0; j < n; ++j) next[i][j] += term[i][l] * a[l][j];
        for (auto& row : next)
            for (auto& x : row) x /= static_cast<long>(k + 1);
        term = std::move(next);
    }
    Matrix m(c, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            sum[i][j].canonicalize();
            m(i, j) = PadicScalar::from_rational(c, sum[i][j].get_num(), sum[i][j].get_den());
        }
    return m;
}

} // namespace

TEST(Validation, AcceptsSmallCommutingFamilies) {
    const Context c = PrimeContext::create(5, 32);
    EXPECT_TRUE(validate_higgs(higgs(c, {{{0, 5}, {0, 0}}, {{0, 25}, {0, 0}}})).valid());
    EXPECT_TRUE(validate_higgs(higgs(c, {{{0, 0}, {0, 0}}})).valid());
}

TEST(Validation, ReportsEachKindOfViolation) {
    const Context c = PrimeContext::create(5, 32);
    const auto small = validate_higgs(higgs(c, {{{1, 0}, {0, 0}}}));
    ASSERT_EQ(small.smallness.size(), 1u);
    EXPECT_EQ(small.smallness[0].valuation, 0);
    EXPECT_EQ(small.smallness[0].row, 0u);

    const auto nc = validate_higgs(higgs(c, {{{0, 5}, {0, 0}}, {{0, 0}, {5, 0}}}));
    ASSERT_EQ(nc.noncommuting.size(), 1u);
    EXPECT_NE(nc.summary().find("do not commute"), std::string::npos);

    HiggsModule bad = higgs(c, {{{0, 5}, {0, 0}}});
    bad.rank = 3;
    EXPECT_FALSE(validate_higgs(bad).shape_errors.empty());
    EXPECT_THROW(higgs_to_rep(bad), ValidationError);

    const SmallRep v{c, 2, {Matrix::from_ints(c, {{2, 0}, {0, 1}})}};
    EXPECT_EQ(validate_rep(v).smallness.size(), 1u);
    EXPECT_THROW(rep_to_higgs(v), ValidationError);
}

TEST(Validation, TwoAdicDomainNeedsValuationTwo) {
    const Context c = PrimeContext::create(2, 32);
    EXPECT_FALSE(validate_higgs(higgs(c, {{{0, 2}, {0, 0}}})).valid());
    EXPECT_TRUE(validate_higgs(higgs(c, {{{0, 4}, {0, 0}}})).valid());
}

TEST(Correspondence, RankOneIsTheScalarExponential) {
    const Context c = PrimeContext::create(5, 32);
    const SmallRep v = higgs_to_rep(higgs(c, {{{5}}}));
    mpq_class sum = 0, term = 1;
    for (int k = 0; k < 80; ++k) {
        sum += term;
        term = term * 5 / (k + 1);
    }
    sum.canonicalize();
    EXPECT_TRUE(v.rho[0](0, 0).agrees_with(PadicScalar::from_rational(c, sum.get_num(), sum.get_den()), 32 - kSlack));
}

TEST(Correspondence, NilpotentFieldsMatchFiniteExponential) {
    for (std::int64_t p : {2, 3, 5, 7}) {
        const Context c = PrimeContext::create(p, 32);
        const long q = p == 2 ? 4 : p;
        const std::vector<std::vector<long>> a{{0, q, 3 * q}, {0, 0, -q}, {0, 0, 0}};
        const SmallRep v = higgs_to_rep(higgs(c, {a}));
        EXPECT_TRUE(v.rho[0].agrees_with(nilpotent_exp_oracle(c, a), 32 - kSlack)) << "p = " << p;
    }
}

TEST(Correspondence, RoundTripOnGeneratedInstances) {
    for (std::int64_t p : {2, 3, 5, 7}) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            GenParams g;
            g.p = p;
            g.d = 1 + seed % 3;
            g.rank = 1 + seed % 4;
            g.seed = seed;
            const HiggsModule h = generate_higgs(g);
            ASSERT_TRUE(validate_higgs(h).valid());
            const SmallRep v = higgs_to_rep(h);
            EXPECT_TRUE(validate_rep(v).valid());
            EXPECT_TRUE(families_agree(rep_to_higgs(v).theta, h.theta, g.precision - kRoundTripLoss));
            const SmallRep w = generate_rep(g);
            EXPECT_TRUE(families_agree(higgs_to_rep(rep_to_higgs(w)).rho, w.rho, g.precision - kRoundTripLoss));
        }
    }
}

TEST(Correspondence, TrivialObjectsCorrespond) {
    const Context c = PrimeContext::create(3, 24);
    const HiggsModule h = trivial_higgs(c, 3, 2);
    EXPECT_TRUE(is_trivial(h));
    EXPECT_TRUE(is_trivial(higgs_to_rep(h)));
    EXPECT_TRUE(is_trivial(rep_to_higgs(trivial_rep(c, 2, 3))));
    EXPECT_FALSE(is_trivial(higgs_to_rep(higgs(c, {{{0, 3}, {0, 0}}}))));
}

TEST(Correspondence, FunctorialForConjugationMorphisms) {
    for (std::int64_t p : {3, 5, 7}) {
        GenParams g;
        g.p = p;
        g.rank = 3;
        g.seed = static_cast<std::uint64_t>(p);
        const HiggsModule h = generate_higgs(g);
        const Matrix f = Matrix::from_ints(h.ctx, {{1, 2, 0}, {0, 1, -1}, {1, 0, 1}});
        const Matrix fi = inverse(f, kSlack);
        HiggsModule h2{h.ctx, h.rank, {}};
        for (const auto& t : h.theta) h2.theta.push_back(f * t * fi);
        const SmallRep v = higgs_to_rep(h), v2 = higgs_to_rep(h2);
        for (std::size_t i = 0; i < h.d(); ++i)
            EXPECT_TRUE((f * v.rho[i]).agrees_with(v2.rho[i] * f, g.precision - kRoundTripLoss));
    }
}

TEST(Operations, DualTensorAndSum) {
    GenParams g;
    g.p = 5;
    g.rank = 2;
    g.d = 2;
    g.seed = 4;
    const HiggsModule h = generate_higgs(g);
    const HiggsModule k = generate_higgs({5, 32, 2, 3, 0.6, 5});
    const std::int64_t digits = g.precision - kRoundTripLoss;
    EXPECT_TRUE(families_agree(dual(dual(h)).theta, h.theta, g.precision));
    EXPECT_TRUE(families_agree(tensor(h, trivial_higgs(h.ctx, 1, 2)).theta, h.theta, g.precision));
    EXPECT_TRUE(families_agree(higgs_to_rep(tensor(h, k)).rho, tensor(higgs_to_rep(h), higgs_to_rep(k)).rho, digits));
    EXPECT_TRUE(families_agree(higgs_to_rep(direct_sum(h, k)).rho,
                               direct_sum(higgs_to_rep(h), higgs_to_rep(k)).rho, digits));
    EXPECT_TRUE(families_agree(higgs_to_rep(dual(h)).rho, dual(higgs_to_rep(h)).rho, digits));
    EXPECT_THROW(tensor(h, trivial_higgs(h.ctx, 1, 3)), DimensionMismatch);
}

TEST(Operations, EvaluateRepIsAHomomorphism) {
    const Context c = PrimeContext::create(5, 32);
    const SmallRep v = higgs_to_rep(higgs(c, {{{0, 5}, {0, 0}}, {{5, 0}, {0, 5}}}));
    const PadicScalar one = PadicScalar::one(c), zero = PadicScalar::zero(c);
    EXPECT_TRUE(evaluate_rep(v, {one, zero}).agrees_with(v.rho[0], 28));
    const PadicScalar half = PadicScalar::from_rational(c, 1, 2);
    const Matrix r = evaluate_rep(v, {half, half});
    EXPECT_TRUE((r * r).agrees_with(v.rho[0] * v.rho[1], 28));
    const PadicScalar a = PadicScalar::from_int(c, 7), b = PadicScalar::from_rational(c, -3, 4);
    EXPECT_TRUE((evaluate_rep(v, {a, zero}) * evaluate_rep(v, {b, one})).agrees_with(evaluate_rep(v, {a + b, one}), 28));
    EXPECT_THROW(evaluate_rep(v, {PadicScalar::from_rational(c, 1, 5), zero}), OutsideExpDomain);
    EXPECT_THROW(evaluate_rep(v, {one}), DimensionMismatch);
}

TEST(Spectral, ZeroFieldGivesTheBaseField) {
    const Context c = PrimeContext::create(5, 32);
    const SpectralAlgebra s = spectral_algebra(trivial_higgs(c, 3, 2));
    EXPECT_EQ(s.algebra->dim(), 1u);
    ASSERT_EQ(s.tau.size(), 2u);
    for (const auto& t : s.tau) EXPECT_TRUE(t.is_zero());
}

TEST(Spectral, NilpotentFieldGivesDualNumbers) {
    const Context c = PrimeContext::create(5, 32);
    const HiggsModule h = higgs(c, {{{0, 5}, {0, 0}}});
    const SpectralAlgebra s = spectral_algebra(h);
    EXPECT_EQ(s.algebra->dim(), 2u);
    EXPECT_EQ(nilradical(s.algebra).size(), 1u);
    EXPECT_TRUE(s.embed(s.tau[0]).agrees_with(h.theta[0], 28));
}

TEST(Spectral, DiagonalFieldsGiveSplitAlgebra) {
    const Context c = PrimeContext::create(5, 32);
    const HiggsModule h = higgs(c, {{{5, 0}, {0, 0}}, {{0, 0}, {0, 5}}});
    const SpectralAlgebra s = spectral_algebra(h);
    ASSERT_EQ(s.algebra->dim(), 2u);
    const AlgElement& t1 = s.tau[0];
    const AlgElement& t2 = s.tau[1];
    EXPECT_TRUE((t1 * t2).is_zero());
    EXPECT_TRUE((t1 * t1).agrees_with(PadicScalar::from_int(c, 5) * t1, 28));
    EXPECT_TRUE((t2 * t2).agrees_with(PadicScalar::from_int(c, 5) * t2, 28));
    EXPECT_EQ(idempotents(s.algebra).size(), 2u);
}

TEST(Spectral, EmbeddingIsFaithfulOnGeneratedInstances) {
    for (std::int64_t p : {2, 3, 5, 7}) {
        for (std::uint64_t seed = 0; seed < 6; ++seed) {
            GenParams g;
            g.p = p;
            g.rank = 1 + seed % 4;
            g.d = 1 + seed % 3;
            g.seed = seed;
            const HiggsModule h = generate_higgs(g);
            const SpectralAlgebra s = spectral_algebra(h);
            EXPECT_LE(s.algebra->dim(), g.rank * g.rank);
            EXPECT_EQ(rank(s.embedding), s.algebra->dim());
            for (std::size_t i = 0; i < h.d(); ++i)
                EXPECT_TRUE(s.embed(s.tau[i]).agrees_with(h.theta[i], g.precision - kRoundTripLoss));
            const SmallRep t = twist_higgs(h, s, make_twist(s.algebra, s.tau));
            EXPECT_TRUE(families_agree(t.rho, higgs_to_rep(h).rho, g.precision - kRoundTripLoss)) << "p = " << p;
        }
    }
}

TEST(Twist, ExamplesOverSmallAlgebras) {
    const Context c = PrimeContext::create(5, 32);
    const Algebra k = FinAlgebra::field(c);
    const BTwist l = make_twist(k, {AlgElement::scalar(k, PadicScalar::from_int(c, 5))});
    EXPECT_TRUE(l.units[0][0].agrees_with(exp_scalar(PadicScalar::from_int(c, 5)), 28));
    const Algebra x2 = FinAlgebra::monogenic(c, std::vector<long>{0, 0});
    const BTwist m = make_twist(x2, {AlgElement::basis(x2, 1)});
    EXPECT_TRUE(m.units[0].agrees_with(AlgElement::one(x2) + AlgElement::basis(x2, 1), 28));
    EXPECT_THROW(make_twist(k, {AlgElement::basis(x2, 1)}), AlgebraMismatch);
}
