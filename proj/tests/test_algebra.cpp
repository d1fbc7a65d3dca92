#include <gtest/gtest.h>

#include <gmpxx.h>

#include <random>
#include <vector>

#include "simpson/algebra.hpp"
#include "simpson/algebra_exp.hpp"
#include "simpson/algebra_structure.hpp"
#include "simpson/higgs.hpp"
#include "simpson/random.hpp"
#include "simpson/root_class.hpp"

using namespace simpson;

namespace {

constexpr std::int64_t kSlack = 4;

AlgElement elem(const Algebra& a, const std::vector<long>& c) {
    std::vector<PadicScalar> v;
    for (long x : c) v.push_back(PadicScalar::from_int(a->context(), x));
    return {a, v};
}

AlgebraMorphism evaluate_at(const Algebra& r, const Algebra& k, long root) {
    const Context& ctx = r->context();
    Matrix m(ctx, 1, r->dim());
    PadicScalar pw = PadicScalar::one(ctx);
    for (std::size_t j = 0; j < r->dim(); ++j) {
        m(0, j) = pw;
        pw = pw * PadicScalar::from_int(ctx, root);
    }
    return AlgebraMorphism(r, k, m);
}

// exp(q) mod p^n from the rational partial series.
PadicScalar exp_oracle(const Context& c, const mpq_class& q, int terms) {
    mpq_class sum = 0, term = 1;
    for (int k = 0; k < terms; ++k) {
        sum += term;
        term = term * q / (k + 1);
    }
    sum.canonicalize();
    return PadicScalar::from_rational(c, sum.get_num(), sum.get_den());
}

bool is_idempotent(const AlgElement& e) { return (e * e).agrees_with(e, e.algebra()->context()->precision() - kSlack); }

} // namespace

TEST(FinAlgebra, MonogenicStructure) {
    const Context c = PrimeContext::create(5, 24);
    const Algebra a = FinAlgebra::monogenic(c, std::vector<long>{2, 0, 1});  // x^3 + x^2 + 2
    ASSERT_EQ(a->dim(), 3u);
    const AlgElement x = AlgElement::basis(a, 1);
    EXPECT_EQ((x * x * x).coords(), elem(a, {-2, 0, -1}).coords());
    EXPECT_EQ(AlgElement::one(a) * x, x);
    EXPECT_EQ(a->labels()[1], "x");
}

TEST(FinAlgebra, RejectsNonAssociativeConstants) {
    const Context c = PrimeContext::create(3, 16);
    FinAlgebra::Constants k(2, std::vector<std::vector<PadicScalar>>(2, std::vector<PadicScalar>(2, PadicScalar::zero(c))));
    k[0][0][0] = PadicScalar::one(c);
    k[0][1][1] = PadicScalar::one(c);
    k[1][0][1] = PadicScalar::one(c);
    k[1][1][0] = PadicScalar::one(c);
    k[1][1][1] = PadicScalar::one(c);
    EXPECT_NO_THROW(FinAlgebra::create(c, k, {PadicScalar::one(c), PadicScalar::zero(c)}));
    k[1][0][0] = PadicScalar::one(c);
    EXPECT_THROW(FinAlgebra::create(c, k, {PadicScalar::one(c), PadicScalar::zero(c)}), Error);
}

TEST(FinAlgebra, UnitsAndInverses) {
    const Context c = PrimeContext::create(7, 24);
    const Algebra a = FinAlgebra::monogenic(c, std::vector<long>{0, 0});
    const AlgElement u = elem(a, {3, 1});
    EXPECT_TRUE(u.is_unit());
    EXPECT_TRUE((u * u.inverse()).agrees_with(AlgElement::one(a), 20));
    EXPECT_FALSE(AlgElement::basis(a, 1).is_unit());
    EXPECT_THROW(AlgElement::basis(a, 1).inverse(), NotAUnit);
}

TEST(Nilradical, ClassicalExamples) {
    const Context c = PrimeContext::create(5, 24);
    EXPECT_TRUE(nilradical(FinAlgebra::field(c)).empty());
    const Algebra x2 = FinAlgebra::monogenic(c, std::vector<long>{0, 0});
    const auto n = nilradical(x2);
    ASSERT_EQ(n.size(), 1u);
    EXPECT_TRUE(n[0][0].is_zero());
    EXPECT_FALSE(n[0][1].is_zero());
    EXPECT_TRUE(nilradical(FinAlgebra::monogenic(c, std::vector<long>{0, -1})).empty());
    EXPECT_EQ(nilradical(FinAlgebra::monogenic(c, std::vector<long>{0, 0, 0, 0})).size(), 3u);
}

TEST(Idempotents, ClassicalExamples) {
    const Context c = PrimeContext::create(5, 24);
    const auto one = idempotents(FinAlgebra::monogenic(c, std::vector<long>{0, 0}));
    ASSERT_EQ(one.size(), 1u);
    EXPECT_TRUE(one[0].agrees_with(AlgElement::one(one[0].algebra()), 20));

    const Algebra split = FinAlgebra::monogenic(c, std::vector<long>{0, -1});
    const auto es = idempotents(split);
    ASSERT_EQ(es.size(), 2u);
    const AlgElement x = AlgElement::basis(split, 1);
    const bool order = es[0].agrees_with(x, 20);
    EXPECT_TRUE(es[order ? 0 : 1].agrees_with(x, 20));
    EXPECT_TRUE(es[order ? 1 : 0].agrees_with(AlgElement::one(split) - x, 20));

    EXPECT_EQ(idempotents(FinAlgebra::monogenic(c, std::vector<long>{-2, 0})).size(), 1u);
}

TEST(Idempotents, PrimitiveOrthogonalPartitionOfUnity) {
    for (std::int64_t p : {2, 3, 5, 7}) {
        const Context c = PrimeContext::create(p, 32);
        // x^2 (x^2 + x - 1): the two factors stay coprime mod every p
        const Algebra a = FinAlgebra::monogenic(c, std::vector<long>{0, 0, -1, 1});
        const auto es = idempotents(a);
        AlgElement sum = AlgElement::zero(a);
        for (std::size_t i = 0; i < es.size(); ++i) {
            EXPECT_TRUE(is_idempotent(es[i])) << "p = " << p;
            for (std::size_t j = i + 1; j < es.size(); ++j) EXPECT_TRUE((es[i] * es[j]).agrees_with(AlgElement::zero(a), 28));
            sum += es[i];
        }
        EXPECT_TRUE(sum.agrees_with(AlgElement::one(a), 28));
        EXPECT_GE(es.size(), 2u);
    }
}

TEST(Decompose, UnitSplitsIntoScalarAndNilpotent) {
    const Context c = PrimeContext::create(5, 24);
    const Algebra a = FinAlgebra::monogenic(c, std::vector<long>{0, 0});
    const NilUnitDecomposition d = decompose_unit(elem(a, {3, 1}));
    EXPECT_EQ(d.scalar_part, PadicScalar::from_int(c, 3));
    EXPECT_TRUE(d.nilpotent_part[0].is_zero());
    EXPECT_EQ(d.nilpotent_part[1], PadicScalar::from_rational(c, 1, 3));
    EXPECT_THROW(decompose_unit(AlgElement::basis(a, 1)), NotAUnit);
    EXPECT_THROW(decompose_unit(elem(FinAlgebra::monogenic(c, std::vector<long>{0, -1}), {1, 1})), NotConnected);
    EXPECT_THROW(decompose_unit(elem(FinAlgebra::monogenic(c, std::vector<long>{-2, 0}), {1, 1})), NonSplitResidue);
}

TEST(AlgebraExp, DualNumbersMatchSeriesOracle) {
    for (std::int64_t p : {3, 5, 7}) {
        const Context c = PrimeContext::create(p, 32);
        const Algebra a = FinAlgebra::monogenic(c, std::vector<long>{0, 0});
        for (long b : {1L, -2L, 4L}) {
            const AlgElement x = elem(a, {p, b});
            const PadicScalar ep = exp_oracle(c, mpq_class(p), 80);
            const AlgElement expected{a, {ep, ep * PadicScalar::from_int(c, b)}};
            EXPECT_TRUE(alg_exp(x).agrees_with(expected, 32 - kSlack)) << "p = " << p << " b = " << b;
        }
    }
}

TEST(AlgebraExp, LogInvertsExpOnTruncatedPolynomials) {
    const Context c = PrimeContext::create(5, 32);
    const Algebra a = FinAlgebra::monogenic(c, std::vector<long>{0, 0, 0});
    const AlgElement x = elem(a, {0, 5, 0});
    EXPECT_TRUE(alg_log(alg_exp(x)).agrees_with(x, 28));
    const AlgElement y = elem(a, {25, 3, -7});
    EXPECT_TRUE(alg_log(alg_exp(y)).agrees_with(y, 28));
}

TEST(AlgebraExp, MatchesMatrixExponentialOfMultiplication) {
    std::mt19937_64 rng(4);
    for (std::int64_t p : {2, 3, 5, 7}) {
        const Context c = PrimeContext::create(p, 32);
        const Algebra a = FinAlgebra::monogenic(c, std::vector<long>{1, p, -3});
        const std::int64_t e0 = c->exp_domain();
        for (int trial = 0; trial < 20; ++trial) {
            const AlgElement x = random_element(a, rng, e0);
            const Matrix e = matrix_exp(x.multiplication_matrix());
            std::vector<PadicScalar> col;
            for (std::size_t i = 0; i < a->dim(); ++i) col.push_back(e(i, 0));
            EXPECT_TRUE(alg_exp(x).agrees_with(AlgElement(a, col), 32 - kSlack)) << "p = " << p;
        }
    }
}

TEST(AlgebraExp, HomomorphismAndRoundTrip) {
    std::mt19937_64 rng(8);
    for (std::int64_t p : {2, 3, 5, 7}) {
        const Context c = PrimeContext::create(p, 32);
        const Algebra a = FinAlgebra::monogenic(c, std::vector<long>{-p, 0, 1, 2});
        const std::int64_t e0 = c->exp_domain();
        for (int trial = 0; trial < 20; ++trial) {
            const AlgElement x = random_element(a, rng, e0);
            const AlgElement y = random_element(a, rng, e0);
            EXPECT_TRUE(alg_exp(x + y).agrees_with(alg_exp(x) * alg_exp(y), 32 - kSlack)) << "p = " << p;
            EXPECT_TRUE(alg_log(alg_exp(x)).agrees_with(x, 32 - kSlack)) << "p = " << p;
        }
    }
}

TEST(AlgebraExp, DomainErrors) {
    const Context c2 = PrimeContext::create(2, 32);
    const Algebra a = FinAlgebra::monogenic(c2, std::vector<long>{0, 0});
    EXPECT_THROW(alg_exp(elem(a, {2, 0})), OutsideExpDomain);
    EXPECT_NO_THROW(alg_exp(elem(a, {4, 1})));
    EXPECT_NO_THROW(alg_exp(elem(a, {0, 1})));
    const Context c5 = PrimeContext::create(5, 32);
    const Algebra b = FinAlgebra::monogenic(c5, std::vector<long>{0, 0});
    EXPECT_THROW(alg_exp(elem(b, {1, 0})), OutsideExpDomain);
    EXPECT_THROW(alg_log(elem(b, {2, 0})), OutsideLogDomain);
}

TEST(ExpG, NilpotentAndScalarParts) {
    const Context c = PrimeContext::create(5, 32);
    const Algebra a = FinAlgebra::monogenic(c, std::vector<long>{0, 0});
    EXPECT_TRUE(exp_G(AlgElement::basis(a, 1)).agrees_with(elem(a, {1, 1}), 28));
    const AlgElement s = exp_G(elem(a, {5, 1}));
    const PadicScalar e5 = exp_scalar(PadicScalar::from_int(c, 5));
    EXPECT_TRUE(s.agrees_with(AlgElement(a, {e5, e5}), 28));
    EXPECT_THROW(exp_G(elem(a, {3, 0})), OutsideRepresentableDomain);
}

TEST(RootClasses, EqualityModuloPPowers) {
    const Context c = PrimeContext::create(5, 32);
    const Algebra k = FinAlgebra::field(c);
    const AlgElement u = elem(k, {7});
    EXPECT_TRUE(root_class_equal({u, 0}, {u.pow(5), 1}));
    EXPECT_TRUE(root_class_equal({AlgElement::one(k), 0}, {AlgElement::one(k), 7}));
    EXPECT_FALSE(root_class_equal({elem(k, {2}), 0}, {elem(k, {3}), 0}));
    const RootClass prod = RootClass{elem(k, {2}), 0} * RootClass{elem(k, {3}), 1};
    EXPECT_EQ(prod.level, 1);
    EXPECT_TRUE(root_class_equal(prod, {elem(k, {2}).pow(5) * elem(k, {3}), 1}));
    EXPECT_EQ(root_of_unity_exponent(2, 1), 1);
    EXPECT_EQ(root_of_unity_exponent(5, 3), 0);
    EXPECT_EQ(root_of_unity_exponent(3, 2), 1);
}

TEST(CartSquare, PointAndNilpotentThickenings) {
    for (std::int64_t p : {2, 3, 5}) {
        const Context c = PrimeContext::create(p, 32);
        const Algebra k = FinAlgebra::field(c);
        CartSquareOptions opt;
        opt.count = 8;
        opt.seed = static_cast<std::uint64_t>(p);
        EXPECT_TRUE(cart_square_check(AlgebraMorphism::identity(k), opt).passed());
        EXPECT_TRUE(cart_square_check(evaluate_at(FinAlgebra::monogenic(c, std::vector<long>{0, 0}), k, 0), opt).passed());
        EXPECT_TRUE(cart_square_check(evaluate_at(FinAlgebra::monogenic(c, std::vector<long>{0, 0, 0}), k, 0), opt).passed());
        EXPECT_TRUE(cart_square_check(evaluate_at(FinAlgebra::monogenic(c, std::vector<long>{-4, 0}), k, 2), opt).passed());
        const auto split = cart_square_check(evaluate_at(FinAlgebra::monogenic(c, std::vector<long>{0, -1}), k, 0), opt);
        EXPECT_TRUE(split.passed());
        EXPECT_GT(split.pullback_checked + split.pushout_checked, 0u);
    }
}

TEST(CartSquare, RejectsBadMaps) {
    const Context c = PrimeContext::create(5, 32);
    const Algebra x2 = FinAlgebra::monogenic(c, std::vector<long>{0, 0});
    const Algebra split = FinAlgebra::monogenic(c, std::vector<long>{0, -1});
    EXPECT_THROW(cart_square_check(AlgebraMorphism(x2, x2, Matrix::from_ints(c, {{1, 0}, {0, 0}}))), Error);
    EXPECT_THROW(cart_square_check(AlgebraMorphism::identity(split)), NotConnected);
}
