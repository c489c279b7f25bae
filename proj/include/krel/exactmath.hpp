#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace krel {

using Integer = mpz_class;
using Rational = mpq_class;

// Bad input: malformed configs, violated preconditions on user data.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A mathematical obstruction: no solution, unsupported case, failed invariant.
struct MathError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Trial-division bound used by every factorization (default 10^6).
void set_factor_bound(unsigned long bound);
unsigned long factor_bound();

struct Factorization {
    int sign = 1;
    std::vector<std::pair<Integer, unsigned>> primes;  // ascending
};

Factorization factor(const Integer& n);
bool is_prime(const Integer& n);
bool is_squarefree(const Integer& n);
unsigned valuation(const Integer& n, const Integer& p);

// Nonzero rational modulo squares: sign times a squarefree positive integer.
struct SquareClass {
    int sign = 1;
    Integer magnitude = 1;

    bool is_trivial() const { return sign == 1 && magnitude == 1; }
    Integer value() const { return sign * magnitude; }
    std::string str() const;

    friend bool operator==(const SquareClass& a, const SquareClass& b) {
        return a.sign == b.sign && a.magnitude == b.magnitude;
    }
    friend SquareClass operator*(const SquareClass& a, const SquareClass& b);
};

SquareClass squarefree_class(const Rational& x);

int kronecker_symbol(const Integer& a, const Integer& n);

// A place of Q: a prime, or the real place (prime == 0).
struct Place {
    Integer prime = 0;
    bool is_infinite() const { return prime == 0; }
    static Place infinity() { return {}; }
    static Place at(const Integer& p) { return Place{p}; }
};

int hilbert_symbol(const Rational& a, const Rational& b, const Place& v);

// Places where (a, b)_v can be nontrivial: infinity, 2, and primes dividing a or b.
std::vector<Place> relevant_places(const Rational& a, const Rational& b);

bool is_norm_from_quadratic(const Rational& x, const Integer& d);

// Same class in Q^x / N(Q(sqrt d)^x).
inline bool norm_equivalent(const Rational& a, const Rational& b, const Integer& d) {
    return is_norm_from_quadratic(a / b, d);
}

Integer fundamental_discriminant(const Integer& d);

// Field discriminant d of Q(sqrt d) has conductor |disc|.
inline Integer quadratic_conductor(const Integer& d) {
    Integer disc = fundamental_discriminant(d);
    return disc < 0 ? Integer(-disc) : disc;
}

Rational rational_pow(const Rational& x, long e);
std::string to_string(const Rational& x);
Rational parse_rational(const std::string& s);

long gcd_long(long a, long b);
long mod_long(long a, long m);
std::vector<long> divisors(long n);
int moebius(long n);
long euler_phi(long n);

}  // namespace krel
