#include <gtest/gtest.h>

#include <gmpxx.h>

#include "simpson/padic.hpp"
#include "simpson/padic_series.hpp"
#include "simpson/random.hpp"

using namespace simpson;

namespace {

constexpr std::int64_t kSlack = 4;

// Residue of num/den modulo p^n, computed with plain GMP.
mpz_class rational_mod(const mpz_class& num, const mpz_class& den, std::int64_t p, std::int64_t n) {
    mpz_class mod;
    mpz_ui_pow_ui(mod.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(n));
    mpz_class inv;
    EXPECT_NE(mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t()), 0);
    mpz_class r = num * inv;
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), mod.get_mpz_t());
    return r;
}

// Partial sums of exp(x) and log(1 + y) over Q, far past the point where the tail vanishes mod p^n.
mpq_class exp_partial(const mpq_class& x, int terms) {
    mpq_class sum = 0, term = 1;
    for (int k = 0; k < terms; ++k) {
        sum += term;
        term = term * x / (k + 1);
    }
    return sum;
}

mpq_class log_partial(const mpq_class& y, int terms) {
    mpq_class sum = 0, power = y;
    for (int k = 1; k < terms; ++k) {
        sum += (k % 2 ? 1 : -1) * power / k;
        power *= y;
    }
    return sum;
}

mpz_class oracle(const mpq_class& q, std::int64_t p, std::int64_t n) {
    mpq_class c = q;
    c.canonicalize();
    return rational_mod(c.get_num(), c.get_den(), p, n);
}

} // namespace

TEST(PrimeContext, ValidatesParameters) {
    EXPECT_THROW(PrimeContext::create(4, 16), std::invalid_argument);
    EXPECT_THROW(PrimeContext::create(1, 16), std::invalid_argument);
    EXPECT_THROW(PrimeContext::create(5, 4), std::invalid_argument);
    EXPECT_EQ(PrimeContext::create(2, 16)->exp_domain(), 2);
    EXPECT_EQ(PrimeContext::create(3, 16)->exp_domain(), 1);
    EXPECT_EQ(PrimeContext::create(5, 16)->power(3), 125);
}

TEST(PrimeContext, WidenedContextsAreShared) {
    const Context c = PrimeContext::create(7, 20);
    EXPECT_EQ(c->widened(5).get(), c->widened(5).get());
    EXPECT_EQ(c->widened(5)->precision(), 25);
}

TEST(PadicScalar, IntegerAddition) {
    const Context c = PrimeContext::create(5, 16);
    const PadicScalar s = PadicScalar::from_int(c, 3) + PadicScalar::from_int(c, 2);
    EXPECT_EQ(s.valuation(), 1);
    EXPECT_EQ(s, PadicScalar::from_int(c, 5));
    const PadicScalar x = PadicScalar::from_int(c, 17);
    EXPECT_EQ(x + PadicScalar::zero(c), x);
}

TEST(PadicScalar, CancellationGivesZeroMarker) {
    const Context c = PrimeContext::create(5, 10);
    const PadicScalar a = PadicScalar::from_parts(c, 9, 2, 10);
    const PadicScalar b = PadicScalar::from_parts(c, 9, 3, 10);
    const PadicScalar s = a + b;
    EXPECT_TRUE(s.is_zero());
    EXPECT_EQ(s.precision(), 10);
    EXPECT_FALSE(s.valuation().has_value());
}

TEST(PadicScalar, ValuationAndInverse) {
    const Context c5 = PrimeContext::create(5, 20);
    EXPECT_EQ(val(PadicScalar::from_int(c5, 50)), 2);
    EXPECT_EQ(PadicScalar::one(c5).inverse(), PadicScalar::one(c5));
    const Context c7 = PrimeContext::create(7, 20);
    const PadicScalar three = PadicScalar::from_int(c7, 3);
    EXPECT_EQ(three.inverse() * three, PadicScalar::one(c7));
    EXPECT_EQ((three.inverse() * three).precision(), 20);
    EXPECT_EQ(three.inverse().residue(), rational_mod(1, 3, 7, 20));
}

TEST(PadicScalar, PrecisionRules) {
    const Context c = PrimeContext::create(3, 20);
    const PadicScalar a = PadicScalar::from_parts(c, 2, 5, 12);  // 9*5 + O(3^12)
    const PadicScalar b = PadicScalar::from_parts(c, 1, 7, 15);  // 3*7 + O(3^15)
    EXPECT_EQ((a + b).precision(), 12);
    EXPECT_EQ((a * b).precision(), std::min(12 + 1, 15 + 2));
    EXPECT_EQ((a / b).valuation(), 1);
    EXPECT_EQ((a / b).relative_precision(), std::min(a.relative_precision(), b.relative_precision()));
    EXPECT_EQ(a.inverse().precision(), 12 - 2 * 2);
    EXPECT_THROW((void)(a / PadicScalar::zero(c)), DivisionByZeroToPrecision);
    EXPECT_THROW((void)PadicScalar::zero(c).inverse(), DivisionByZeroToPrecision);
}

TEST(PadicScalar, MixingPrimesThrows) {
    const PadicScalar a = PadicScalar::one(PrimeContext::create(3, 10));
    const PadicScalar b = PadicScalar::one(PrimeContext::create(5, 10));
    EXPECT_THROW((void)(a + b), ContextMismatch);
    EXPECT_THROW((void)(a * b), ContextMismatch);
}

TEST(PadicScalar, RationalArithmeticMatchesModularOracle) {
    Rng rng(11);
    for (std::int64_t p : {2, 3, 5, 7, 11}) {
        const std::int64_t n = 24;
        const Context c = PrimeContext::create(p, n);
        std::uniform_int_distribution<long> dist(-10000, 10000);
        for (int i = 0; i < 200; ++i) {
            long a = dist(rng), b = dist(rng), x = dist(rng), y = dist(rng);
            while (b % p == 0) ++b;
            while (y % p == 0) ++y;
            const PadicScalar u = PadicScalar::from_rational(c, a, b);
            const PadicScalar v = PadicScalar::from_rational(c, x, y);
            mpq_class qu(a, b), qv(x, y);
            qu.canonicalize();
            qv.canonicalize();
            EXPECT_EQ((u + v).residue(), oracle(qu + qv, p, n));
            EXPECT_EQ((u - v).residue(), oracle(qu - qv, p, n));
            EXPECT_EQ((u * v).residue(), oracle(qu * qv, p, n));
            if (x % p != 0) {
                EXPECT_EQ((u / v).residue(), oracle(qu / qv, p, n));
            }
        }
    }
}

TEST(PadicScalar, HigherPrecisionRefines) {
    Rng rng(3);
    const Context lo = PrimeContext::create(5, 12);
    const Context hi = PrimeContext::create(5, 30);
    for (int i = 0; i < 50; ++i) {
        const long a = random_small(rng, 1000), b = 1 + 5 * random_small(rng, 100) + 1;
        const PadicScalar x = PadicScalar::from_rational(hi, a, b).pow(3) + PadicScalar::from_int(hi, 7);
        const PadicScalar y = PadicScalar::from_rational(lo, a, b).pow(3) + PadicScalar::from_int(lo, 7);
        EXPECT_TRUE(x.in_context(lo).agrees_with(y, 12));
    }
}

TEST(ScalarText, ParsesAllForms) {
    const Context c = PrimeContext::create(5, 16);
    EXPECT_EQ(parse_scalar(c, "25"), PadicScalar::from_int(c, 25));
    EXPECT_EQ(parse_scalar(c, " -3 "), PadicScalar::from_int(c, -3));
    EXPECT_EQ(parse_scalar(c, "1/3"), PadicScalar::from_rational(c, 1, 3));
    EXPECT_EQ(parse_scalar(c, "2:3"), PadicScalar::from_int(c, 75));
    EXPECT_EQ(parse_scalar(c, "-1:2").valuation(), -1);
    EXPECT_EQ(parse_scalar(c, "7@4").precision(), 4);
    EXPECT_EQ(parse_scalar(c, "1/5").valuation(), -1);
    EXPECT_THROW(parse_scalar(c, "abc"), ParseError);
    EXPECT_THROW(parse_scalar(c, "1/0"), ParseError);
    EXPECT_THROW(parse_scalar(c, ""), ParseError);
}

TEST(ScalarText, FormatRoundTrips) {
    Rng rng(5);
    const Context c = PrimeContext::create(3, 20);
    for (int i = 0; i < 100; ++i) {
        PadicScalar x = random_scalar(c, rng);
        if (i % 3 == 0) x = x * PadicScalar::power_of_p(c, -2);
        if (i % 5 == 0) x = x.reduced_to(10);
        const PadicScalar y = parse_scalar(c, format_scalar(x));
        EXPECT_EQ(x, y);
        EXPECT_EQ(x.precision(), y.precision());
    }
    EXPECT_EQ(format_scalar(PadicScalar::from_int(c, -4)), "-4");
    EXPECT_EQ(format_scalar(PadicScalar::zero(c, 7)), "0@7");
}

TEST(ScalarSeries, ExpAndLogBasics) {
    const Context c = PrimeContext::create(5, 20);
    EXPECT_EQ(exp_scalar(PadicScalar::zero(c)), PadicScalar::one(c));
    EXPECT_EQ(log_scalar(PadicScalar::one(c)), PadicScalar::zero(c));
    const PadicScalar five = PadicScalar::from_int(c, 5);
    EXPECT_TRUE(log_scalar(exp_scalar(five)).agrees_with(five, 20 - kSlack));
    const PadicScalar u = PadicScalar::from_int(c, 26);
    EXPECT_TRUE(exp_scalar(log_scalar(u)).agrees_with(u, 20 - kSlack));
}

TEST(ScalarSeries, DomainBoundaries) {
    const Context c2 = PrimeContext::create(2, 20);
    EXPECT_THROW(exp_scalar(PadicScalar::from_int(c2, 2)), OutsideExpDomain);
    EXPECT_NO_THROW(exp_scalar(PadicScalar::from_int(c2, 4)));
    const Context c5 = PrimeContext::create(5, 20);
    EXPECT_THROW(exp_scalar(PadicScalar::from_int(c5, 1)), OutsideExpDomain);
    EXPECT_THROW(log_scalar(PadicScalar::from_int(c5, 2)), OutsideLogDomain);
    EXPECT_THROW(log_scalar(PadicScalar::from_rational(c5, 1, 5)), OutsideLogDomain);
}

TEST(ScalarSeries, ExpMatchesRationalSeriesOracle) {
    for (std::int64_t p : {2, 3, 5, 7}) {
        const std::int64_t n = 20;
        const Context c = PrimeContext::create(p, n);
        const long base = p == 2 ? 4 : p;
        for (long k : {1L, 2L, -3L, 7L}) {
            const PadicScalar x = PadicScalar::from_int(c, base * k);
            const mpz_class want = oracle(exp_partial(mpq_class(base * k), 120), p, n);
            EXPECT_EQ(exp_scalar(x).residue(), want) << "p=" << p << " k=" << k;
        }
    }
}

TEST(ScalarSeries, LogMatchesRationalSeriesOracle) {
    for (std::int64_t p : {2, 3, 5, 7}) {
        const std::int64_t n = 16;
        const Context c = PrimeContext::create(p, n);
        for (long k : {1L, -2L, 5L}) {
            const long y = p * p * k;
            const PadicScalar u = PadicScalar::from_int(c, 1 + y);
            const mpz_class want = oracle(log_partial(mpq_class(y), 90), p, n);
            EXPECT_TRUE(log_scalar(u).agrees_with(PadicScalar::from_mpz(c, want), n - kSlack)) << "p=" << p;
        }
    }
}

TEST(ScalarSeries, LogIsAHomomorphism) {
    const Context c = PrimeContext::create(3, 24);
    const PadicScalar u = PadicScalar::from_int(c, 4), w = PadicScalar::from_int(c, 10);
    EXPECT_TRUE(log_scalar(u * w).agrees_with(log_scalar(u) + log_scalar(w), 24 - kSlack));
}

TEST(ScalarSeries, RandomRoundTrips) {
    Rng rng(17);
    for (std::int64_t p : {2, 3, 5, 7}) {
        const Context c = PrimeContext::create(p, 32);
        const std::int64_t e0 = c->exp_domain();
        for (int i = 0; i < 200; ++i) {
            const PadicScalar x = random_scalar(c, rng, e0 + i % 3);
            EXPECT_TRUE(log_scalar(exp_scalar(x)).agrees_with(x, 32 - kSlack));
            const PadicScalar u = PadicScalar::one(c) + x;
            EXPECT_TRUE(exp_scalar(log_scalar(u)).agrees_with(u, 32 - kSlack));
        }
    }
}

TEST(Teichmuller, RootsOfUnity) {
    const Context c = PrimeContext::create(5, 20);
    EXPECT_EQ(teichmuller(c, 1), PadicScalar::one(c));
    EXPECT_EQ(teichmuller(c, 2).pow(4), PadicScalar::one(c));
    EXPECT_EQ(teichmuller(c, 4), -PadicScalar::one(c));
    EXPECT_THROW(teichmuller(c, 10), ZeroResidue);
    const Context c7 = PrimeContext::create(7, 20);
    for (long a = 1; a < 7; ++a) {
        const PadicScalar w = teichmuller(c7, a);
        EXPECT_EQ(w.pow(6), PadicScalar::one(c7));
        EXPECT_EQ(w.residue_mod_p(), a);
    }
}

TEST(BigExp, RestrictsToExp) {
    const Context c = PrimeContext::create(5, 20);
    EXPECT_EQ(big_exp(PadicScalar::zero(c)), PadicScalar::one(c));
    EXPECT_EQ(big_exp(PadicScalar::from_int(c, 5)), exp_scalar(PadicScalar::from_int(c, 5)));
    EXPECT_THROW(big_exp(PadicScalar::one(c)), OutsideRepresentableDomain);
}
