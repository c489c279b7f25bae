#pragma once

#include "krel/exactmath.hpp"

#include <string>
#include <vector>

namespace krel {

// Coefficients of Phi_n, constant term first.
const std::vector<Integer>& cyclotomic_polynomial(unsigned n);

// Element of Q(zeta_n) in the power basis 1, zeta, ..., zeta^(phi(n)-1).
class CycNumber {
public:
    CycNumber() : CycNumber(Rational(0)) {}
    explicit CycNumber(const Rational& r, unsigned level = 1);
    CycNumber(unsigned level, std::vector<Rational> coeffs);

    static CycNumber zeta(unsigned n, long k = 1);
    // sum_k mult[k] * zeta_n^k, with mult.size() == n
    static CycNumber from_exponents(unsigned n, const std::vector<long>& mult);

    unsigned level() const { return level_; }
    const std::vector<Rational>& coefficients() const { return c_; }

    CycNumber at_level(unsigned m) const;
    CycNumber galois(long k) const;
    CycNumber conj() const { return galois(-1); }

    bool is_zero() const;
    bool is_rational() const;
    Rational to_rational() const;
    // Tr_{Q(zeta_n)/Q}
    Rational trace() const;

    std::string str() const;

    CycNumber& operator+=(const CycNumber& o);
    CycNumber& operator-=(const CycNumber& o);
    CycNumber& operator*=(const Rational& r);
    friend CycNumber operator+(CycNumber a, const CycNumber& b) { return a += b; }
    friend CycNumber operator-(CycNumber a, const CycNumber& b) { return a -= b; }
    friend CycNumber operator*(const CycNumber& a, const CycNumber& b);
    friend CycNumber operator*(CycNumber a, const Rational& r) { return a *= r; }
    friend CycNumber operator-(const CycNumber& a) { return a * Rational(-1); }
    friend bool operator==(const CycNumber& a, const CycNumber& b);
    friend bool operator!=(const CycNumber& a, const CycNumber& b) { return !(a == b); }
    // lexicographic on coefficients at the common level; used only for canonical ordering
    friend int compare(const CycNumber& a, const CycNumber& b);

private:
    unsigned level_ = 1;
    std::vector<Rational> c_;
};

CycNumber cyclotomic_galois_apply(const CycNumber& z, long k);

// Ramanujan sum: trace of zeta_n^k
long ramanujan_sum(long n, long k);

}  // namespace krel
