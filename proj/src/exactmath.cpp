#include "krel/exactmath.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <set>

namespace krel {

namespace {

std::atomic<unsigned long> g_factor_bound{1000000UL};

}  // namespace

void set_factor_bound(unsigned long bound) { g_factor_bound = bound; }
unsigned long factor_bound() { return g_factor_bound; }

bool is_prime(const Integer& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

Factorization factor(const Integer& n) {
    if (n == 0) throw InputError("cannot factor zero");
    Factorization f;
    Integer m = n;
    if (m < 0) {
        f.sign = -1;
        m = -m;
    }
    const unsigned long bound = factor_bound();
    auto take = [&](unsigned long p) {
        unsigned e = 0;
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
            ++e;
        }
        if (e) f.primes.emplace_back(Integer(p), e);
    };
    take(2);
    for (unsigned long p = 3; p <= bound; p += 2) {
        if (m == 1) break;
        Integer pp = p;
        if (pp * pp > m) break;
        take(p);
    }
    if (m > 1) {
        Integer b = bound;
        if (m > b * b && !is_prime(m))
            throw MathError("factorization exceeds trial-division bound: " + m.get_str());
        f.primes.emplace_back(m, 1);
    }
    return f;
}

bool is_squarefree(const Integer& n) {
    if (n == 0) return false;
    for (auto& [p, e] : factor(n).primes)
        if (e > 1) return false;
    return true;
}

unsigned valuation(const Integer& n, const Integer& p) {
    if (n == 0) throw InputError("valuation of zero");
    unsigned v = 0;
    Integer m = n;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
        ++v;
    }
    return v;
}

std::string SquareClass::str() const {
    if (sign < 0) return magnitude == 1 ? "-1" : "-" + magnitude.get_str();
    return magnitude.get_str();
}

SquareClass operator*(const SquareClass& a, const SquareClass& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.magnitude.get_mpz_t(), b.magnitude.get_mpz_t());
    SquareClass r;
    r.sign = a.sign * b.sign;
    r.magnitude = (a.magnitude / g) * (b.magnitude / g);
    return r;
}

SquareClass squarefree_class(const Rational& x) {
    if (x == 0) throw InputError("squarefree_class of zero");
    SquareClass c;
    c.sign = sgn(x) < 0 ? -1 : 1;
    Integer mag = 1;
    for (const Integer* part : {&x.get_num(), &x.get_den()}) {
        Integer a = abs(*part);
        for (auto& [p, e] : factor(a).primes)
            if (e % 2) mag *= p;
    }
    // numerator and denominator are coprime, so the product is already squarefree
    c.magnitude = mag;
    return c;
}

int kronecker_symbol(const Integer& a, const Integer& n) {
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

namespace {

// x = num*den has the same square class as num/den
Integer integral_rep(const Rational& x) { return x.get_num() * x.get_den(); }

int eps_bit(const Integer& u) {  // (u-1)/2 mod 2 for odd u
    Integer r = u % 4;
    if (r < 0) r += 4;
    return r == 3 ? 1 : 0;
}

int omega_bit(const Integer& u) {  // (u^2-1)/8 mod 2 for odd u
    Integer r = u % 8;
    if (r < 0) r += 8;
    return (r == 3 || r == 5) ? 1 : 0;
}

}  // namespace

int hilbert_symbol(const Rational& a, const Rational& b, const Place& v) {
    if (a == 0 || b == 0) throw InputError("hilbert symbol of zero");
    if (v.is_infinite()) return (sgn(a) < 0 && sgn(b) < 0) ? -1 : 1;
    const Integer& p = v.prime;
    if (!is_prime(p)) throw InputError("invalid place: " + p.get_str());
    Integer A = integral_rep(a), B = integral_rep(b);
    unsigned alpha = valuation(A, p), beta = valuation(B, p);
    Integer u = A, w = B;
    for (unsigned i = 0; i < alpha; ++i) u /= p;
    for (unsigned i = 0; i < beta; ++i) w /= p;
    if (p == 2) {
        int e = eps_bit(u) * eps_bit(w) + (alpha % 2) * omega_bit(w) + (beta % 2) * omega_bit(u);
        return e % 2 ? -1 : 1;
    }
    int s = 1;
    Integer half = (p - 1) / 2;
    if ((alpha % 2) && (beta % 2) && half % 2 != 0) s = -s;
    if (beta % 2) s *= kronecker_symbol(u, p);
    if (alpha % 2) s *= kronecker_symbol(w, p);
    return s;
}

std::vector<Place> relevant_places(const Rational& a, const Rational& b) {
    std::set<Integer> primes{Integer(2)};
    for (const Integer* part : {&a.get_num(), &a.get_den(), &b.get_num(), &b.get_den()}) {
        Integer m = abs(*part);
        if (m > 1)
            for (auto& [p, e] : factor(m).primes) primes.insert(p);
    }
    std::vector<Place> out{Place::infinity()};
    for (auto& p : primes) out.push_back(Place::at(p));
    return out;
}

bool is_norm_from_quadratic(const Rational& x, const Integer& d) {
    if (x == 0) throw InputError("norm test of zero");
    if (d == 1 || !is_squarefree(d)) throw InputError("D must be squarefree and != 1, got " + d.get_str());
    Rational dd = d;
    for (const Place& v : relevant_places(x, dd))
        if (hilbert_symbol(x, dd, v) != 1) return false;
    return true;
}

Integer fundamental_discriminant(const Integer& d) {
    Integer r = d % 4;
    if (r < 0) r += 4;
    return r == 1 ? d : Integer(4 * d);
}

Rational rational_pow(const Rational& x, long e) {
    if (e == 0) return 1;
    if (e < 0) {
        if (x == 0) throw MathError("zero to a negative power");
        return rational_pow(Rational(1) / x, -e);
    }
    Integer n, d;
    mpz_pow_ui(n.get_mpz_t(), x.get_num().get_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), x.get_den().get_mpz_t(), static_cast<unsigned long>(e));
    Rational r(n, d);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rational parse_rational(const std::string& s) {
    Rational r;
    if (s.empty() || r.set_str(s, 10) != 0) throw InputError("not a rational: '" + s + "'");
    if (r.get_den() == 0) throw InputError("zero denominator: '" + s + "'");
    r.canonicalize();
    return r;
}

long gcd_long(long a, long b) { return std::gcd(a, b); }

long mod_long(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

std::vector<long> divisors(long n) {
    std::vector<long> d;
    for (long i = 1; i <= n; ++i)
        if (n % i == 0) d.push_back(i);
    return d;
}

int moebius(long n) {
    int m = 1;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        m = -m;
    }
    if (n > 1) m = -m;
    return m;
}

long euler_phi(long n) {
    long r = n;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        r -= r / p;
    }
    if (n > 1) r -= r / n;
    return r;
}

}  // namespace krel
