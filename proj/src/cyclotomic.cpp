#include "krel/cyclotomic.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

namespace krel {

namespace {

using Poly = std::vector<Integer>;

// exact division of a by monic b
Poly poly_div(Poly a, const Poly& b) {
    std::size_t db = b.size() - 1;
    if (a.size() < b.size()) return {Integer(0)};
    Poly q(a.size() - db, 0);
    for (std::size_t i = a.size(); i-- > db;) {
        Integer c = a[i];
        if (c == 0) continue;
        q[i - db] = c;
        for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
    }
    return q;
}

struct LevelData {
    Poly phi;
    // zeta^k reduced modulo Phi_n, k = 0..n-1
    std::vector<std::vector<Integer>> powers;
};

std::mutex g_mutex;
std::map<unsigned, std::shared_ptr<const LevelData>> g_levels;

std::shared_ptr<const LevelData> level_data(unsigned n);

Poly compute_phi(unsigned n) {
    Poly xn(n + 1, 0);
    xn[0] = -1;
    xn[n] = 1;
    for (long d : divisors(n))
        if (static_cast<unsigned>(d) != n) xn = poly_div(xn, level_data(static_cast<unsigned>(d))->phi);
    return xn;
}

std::shared_ptr<const LevelData> build_level(unsigned n) {
    auto data = std::make_shared<LevelData>();
    data->phi = compute_phi(n);
    std::size_t deg = data->phi.size() - 1;
    std::vector<Integer> cur(deg, 0);
    if (deg > 0) cur[0] = 1;
    data->powers.reserve(n);
    for (unsigned k = 0; k < n; ++k) {
        data->powers.push_back(cur);
        // multiply by x and reduce
        Integer top = deg ? cur[deg - 1] : Integer(0);
        for (std::size_t i = deg; i-- > 1;) cur[i] = cur[i - 1];
        if (deg) cur[0] = 0;
        if (top != 0)
            for (std::size_t i = 0; i < deg; ++i) cur[i] -= top * data->phi[i];
    }
    return data;
}

std::shared_ptr<const LevelData> level_data(unsigned n) {
    if (n == 0) throw InputError("cyclotomic level must be positive");
    {
        std::lock_guard<std::mutex> lock(g_mutex);
        auto it = g_levels.find(n);
        if (it != g_levels.end()) return it->second;
    }
    auto built = build_level(n);
    std::lock_guard<std::mutex> lock(g_mutex);
    return g_levels.emplace(n, built).first->second;
}

unsigned lcm_u(unsigned a, unsigned b) { return a / std::gcd(a, b) * b; }

std::vector<Rational> reduce_exponents(unsigned n, const std::vector<Rational>& byexp) {
    auto ld = level_data(n);
    std::size_t deg = ld->phi.size() - 1;
    std::vector<Rational> out(deg, 0);
    for (unsigned k = 0; k < n; ++k) {
        if (byexp[k] == 0) continue;
        const auto& p = ld->powers[k];
        for (std::size_t i = 0; i < deg; ++i)
            if (p[i] != 0) out[i] += byexp[k] * p[i];
    }
    return out;
}

}  // namespace

const std::vector<Integer>& cyclotomic_polynomial(unsigned n) { return level_data(n)->phi; }

CycNumber::CycNumber(const Rational& r, unsigned level) : level_(level) {
    c_.assign(level_data(level)->phi.size() - 1, 0);
    c_[0] = r;
}

CycNumber::CycNumber(unsigned level, std::vector<Rational> coeffs) : level_(level), c_(std::move(coeffs)) {
    if (c_.size() != level_data(level)->phi.size() - 1)
        throw InputError("coefficient vector length must equal phi(level)");
}

CycNumber CycNumber::zeta(unsigned n, long k) {
    std::vector<long> m(n, 0);
    m[mod_long(k, n)] = 1;
    return from_exponents(n, m);
}

CycNumber CycNumber::from_exponents(unsigned n, const std::vector<long>& mult) {
    std::vector<Rational> byexp(n, 0);
    for (unsigned k = 0; k < n && k < mult.size(); ++k) byexp[k] = mult[k];
    return CycNumber(n, reduce_exponents(n, byexp));
}

CycNumber CycNumber::at_level(unsigned m) const {
    if (m % level_) throw InputError("level raising needs a multiple of the level");
    if (m == level_) return *this;
    unsigned step = m / level_;
    std::vector<Rational> byexp(m, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) byexp[(i * step) % m] += c_[i];
    return CycNumber(m, reduce_exponents(m, byexp));
}

CycNumber CycNumber::galois(long k) const {
    if (std::gcd(static_cast<long>(level_), mod_long(k, level_)) != 1 && level_ > 1)
        throw InputError("Galois exponent must be coprime to the level");
    std::vector<Rational> byexp(level_, 0);
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) byexp[mod_long(static_cast<long>(i) * k, level_)] += c_[i];
    return CycNumber(level_, reduce_exponents(level_, byexp));
}

bool CycNumber::is_zero() const {
    for (auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool CycNumber::is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Rational CycNumber::to_rational() const {
    if (!is_rational()) throw MathError("cyclotomic number is not rational: " + str());
    return c_[0];
}

long ramanujan_sum(long n, long k) {
    long g = std::gcd(n, mod_long(k, n));
    if (g == 0) g = n;
    long m = n / g;
    return moebius(m) * (euler_phi(n) / euler_phi(m));
}

Rational CycNumber::trace() const {
    Rational t = 0;
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) t += c_[i] * ramanujan_sum(level_, static_cast<long>(i));
    return t;
}

std::string CycNumber::str() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0) {
            os << to_string(c_[i]);
        } else {
            if (c_[i] != 1) os << to_string(c_[i]) << "*";
            os << "z" << level_;
            if (i > 1) os << "^" << i;
        }
    }
    if (first) os << "0";
    return os.str();
}

CycNumber& CycNumber::operator+=(const CycNumber& o) {
    if (o.level_ != level_) {
        unsigned m = lcm_u(level_, o.level_);
        *this = at_level(m);
        return *this += o.at_level(m);
    }
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

CycNumber& CycNumber::operator-=(const CycNumber& o) { return *this += o * Rational(-1); }

CycNumber& CycNumber::operator*=(const Rational& r) {
    for (auto& x : c_) x *= r;
    return *this;
}

CycNumber operator*(const CycNumber& a, const CycNumber& b) {
    if (a.level_ != b.level_) {
        unsigned m = lcm_u(a.level_, b.level_);
        return a.at_level(m) * b.at_level(m);
    }
    unsigned n = a.level_;
    std::vector<Rational> byexp(n, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            if (b.c_[j] != 0) byexp[(i + j) % n] += a.c_[i] * b.c_[j];
    }
    return CycNumber(n, reduce_exponents(n, byexp));
}

bool operator==(const CycNumber& a, const CycNumber& b) {
    if (a.level_ != b.level_) {
        unsigned m = lcm_u(a.level_, b.level_);
        return a.at_level(m).c_ == b.at_level(m).c_;
    }
    return a.c_ == b.c_;
}

int compare(const CycNumber& a, const CycNumber& b) {
    unsigned m = lcm_u(a.level_, b.level_);
    CycNumber x = a.at_level(m), y = b.at_level(m);
    for (std::size_t i = 0; i < x.c_.size(); ++i) {
        int s = cmp(x.c_[i], y.c_[i]);
        if (s) return s < 0 ? -1 : 1;
    }
    return 0;
}

CycNumber cyclotomic_galois_apply(const CycNumber& z, long k) { return z.galois(k); }

}  // namespace krel
