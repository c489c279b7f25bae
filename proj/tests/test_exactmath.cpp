#include "krel/exactmath.hpp"
#include "norm_oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace krel;
using oracle::norm_oracle;
using oracle::squarefree_long;

TEST(Factor, SmallNumbers) {
    auto f = factor(Integer(-360));
    EXPECT_EQ(f.sign, -1);
    ASSERT_EQ(f.primes.size(), 3u);
    EXPECT_EQ(f.primes[0].first, 2);
    EXPECT_EQ(f.primes[0].second, 3u);
    EXPECT_EQ(f.primes[1].first, 3);
    EXPECT_EQ(f.primes[1].second, 2u);
    EXPECT_EQ(f.primes[2].first, 5);
    EXPECT_TRUE(is_squarefree(Integer(-30)));
    EXPECT_FALSE(is_squarefree(Integer(12)));
    EXPECT_EQ(valuation(Integer(96), Integer(2)), 5u);
}

TEST(Factor, BoundExceededThrows) {
    const unsigned long old = factor_bound();
    set_factor_bound(1000);
    EXPECT_THROW(factor(Integer("1000036000099")), MathError);
    set_factor_bound(old);
    EXPECT_EQ(factor(Integer("999962000357")).primes.size(), 2u);
}

TEST(SquareClass, ReducesRationals) {
    auto s = squarefree_class(Rational(-50, 27));
    EXPECT_EQ(s.sign, -1);
    EXPECT_EQ(s.magnitude, 6);
    EXPECT_TRUE(squarefree_class(Rational(49, 4)).is_trivial());
    EXPECT_EQ((squarefree_class(6) * squarefree_class(-10)).value(), -15);
}

TEST(Kronecker, MatchesEulerCriterion) {
    for (long p : {3L, 5L, 7L, 11L, 13L, 29L}) {
        for (long a = 1; a < p; ++a) {
            long r = 1;
            for (long k = 0; k < (p - 1) / 2; ++k) r = r * a % p;
            EXPECT_EQ(kronecker_symbol(a, p), r == 1 ? 1 : -1) << a << " mod " << p;
        }
    }
}

TEST(Hilbert, KnownValues) {
    EXPECT_EQ(hilbert_symbol(-1, -1, Place::infinity()), -1);
    EXPECT_EQ(hilbert_symbol(-1, -1, Place::at(2)), -1);
    EXPECT_EQ(hilbert_symbol(-1, -1, Place::at(3)), 1);
    EXPECT_EQ(hilbert_symbol(2, 3, Place::at(3)), -1);
    EXPECT_EQ(hilbert_symbol(3, 7, Place::at(7)), -1);
    EXPECT_EQ(hilbert_symbol(2, 7, Place::at(2)), 1);
    EXPECT_EQ(hilbert_symbol(5, 5, Place::at(5)), 1);
}

TEST(Hilbert, ProductFormulaRandomPairs) {
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<long> num(-500, 500), den(1, 60);
    int checked = 0;
    while (checked < 200) {
        long an = num(rng), bn = num(rng);
        if (an == 0 || bn == 0) continue;
        Rational a(an, den(rng)), b(bn, den(rng));
        a.canonicalize();
        b.canonicalize();
        int prod = 1;
        for (auto& v : relevant_places(a, b)) prod *= hilbert_symbol(a, b, v);
        EXPECT_EQ(prod, 1) << to_string(a) << ", " << to_string(b);
        ++checked;
    }
}

TEST(NormOracle, AgreesOnSquarefreeRange) {
    int compared = 0;
    for (long D = -30; D <= 30; ++D) {
        if (D == 1 || !squarefree_long(D)) continue;
        for (long x = -30; x <= 30; ++x) {
            if (!squarefree_long(x)) continue;
            ASSERT_EQ(is_norm_from_quadratic(x, D), norm_oracle(D, x)) << "x=" << x << " D=" << D;
            // scaling by a square does not change the answer
            EXPECT_EQ(is_norm_from_quadratic(Rational(x * 9, 4), D), norm_oracle(D, x));
            ++compared;
        }
    }
    EXPECT_EQ(compared, 37 * 38);
}

TEST(NormOracle, ReferencePairs) {
    EXPECT_TRUE(is_norm_from_quadratic(7, 21));
    EXPECT_FALSE(is_norm_from_quadratic(3, 21));
    EXPECT_TRUE(is_norm_from_quadratic(-21, 21));
    EXPECT_FALSE(norm_equivalent(3, 7, 21));
}

TEST(Discriminant, Conductors) {
    EXPECT_EQ(fundamental_discriminant(21), 21);
    EXPECT_EQ(fundamental_discriminant(-1), -4);
    EXPECT_EQ(fundamental_discriminant(2), 8);
    EXPECT_EQ(fundamental_discriminant(-3), -3);
    EXPECT_EQ(quadratic_conductor(-2), 8);
}

TEST(Arithmetic, MoebiusPhiDivisors) {
    EXPECT_EQ(moebius(30), -1);
    EXPECT_EQ(moebius(12), 0);
    EXPECT_EQ(euler_phi(36), 12);
    EXPECT_EQ(divisors(12), (std::vector<long>{1, 2, 3, 4, 6, 12}));
    for (long n = 1; n <= 60; ++n) {
        long s = 0;
        for (long d : divisors(n)) s += euler_phi(d);
        EXPECT_EQ(s, n);
    }
}

TEST(Rational, ParseAndPow) {
    EXPECT_EQ(parse_rational("-3/6"), Rational(-1, 2));
    EXPECT_EQ(rational_pow(Rational(2, 3), -2), Rational(9, 4));
    EXPECT_THROW(rational_pow(Rational(0), -1), MathError);
    EXPECT_EQ(to_string(Rational(1, 189)), "1/189");
}
