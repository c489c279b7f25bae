#pragma once

#include <cstdlib>
#include <numeric>
#include <vector>

namespace oracle {

inline bool squarefree_long(long n) {
    n = std::labs(n);
    if (n == 0) return false;
    for (long p = 2; p * p <= n; ++p)
        if (n % (p * p) == 0) return false;
    return true;
}

inline std::vector<long> prime_divisors(long n) {
    std::vector<long> out;
    n = std::labs(n);
    for (long p = 2; p <= n; ++p)
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    return out;
}

inline long md(long a, long m) { return ((a % m) + m) % m; }

// a X^2 + b Y^2 + c Z^2 = 0 over Q_p, coefficients squarefree and pairwise coprime.
// A primitive solution has a unit coordinate with a unit coefficient; such a solution
// mod p (odd p) or mod 8 (p = 2) lifts by Hensel.
inline bool locally_solvable(long a, long b, long c, long p) {
    const long m = p == 2 ? 8 : p;
    const long coef[3] = {a, b, c};
    for (long x = 0; x < m; ++x)
        for (long y = 0; y < m; ++y)
            for (long z = 0; z < m; ++z) {
                const long v[3] = {x, y, z};
                if (md(a * x * x + b * y * y + c * z * z, m) != 0) continue;
                for (int i = 0; i < 3; ++i)
                    if (coef[i] % p != 0 && v[i] % p != 0) return true;
            }
    return false;
}

// x in N(Q(sqrt D)) iff z^2 = D y^2 + x w^2 is solvable everywhere
inline bool norm_oracle(long D, long x) {
    const long g = std::gcd(std::labs(D), std::labs(x));
    // g | z: g z'^2 - D' y^2 - x' w^2 = 0
    const long a = g, b = -D / g, c = -x / g;
    if (a > 0 && b > 0 && c > 0) return false;
    if (a < 0 && b < 0 && c < 0) return false;
    std::vector<long> ps = prime_divisors(2 * D * x);
    for (long p : ps)
        if (!locally_solvable(a, b, c, p)) return false;
    return true;
}

}  // namespace oracle
