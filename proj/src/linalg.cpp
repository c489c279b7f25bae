#include "krel/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <tuple>

namespace krel {

namespace {

std::atomic<bool> g_check{true};

Integer fdiv(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Integer round_rational(const Rational& x) {
    Rational h = x + Rational(1, 2);
    return fdiv(h.get_num(), h.get_den());
}

}  // namespace

void set_check_invariants(bool on) { g_check = on; }
bool check_invariants() { return g_check; }

Integer dot(const IntVector& a, const IntVector& b) {
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

SmithForm smith_normal_form(const IntMatrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    SmithForm f{IntMatrix::identity(m), a, IntMatrix::identity(n), 0};
    IntMatrix& S = f.D;
    std::size_t t = 0;
    for (; t < std::min(m, n); ++t) {
        bool found = true;
        for (;;) {
            // smallest nonzero entry of the trailing block becomes the pivot
            std::size_t pi = m, pj = n;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (S(i, j) != 0 && (pi == m || abs(S(i, j)) < abs(S(pi, pj)))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == m) {
                found = false;
                break;
            }
            if (pi != t) {
                S.swap_rows(t, pi);
                f.U.swap_rows(t, pi);
            }
            if (pj != t) {
                S.swap_cols(t, pj);
                f.V.swap_cols(t, pj);
            }
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (S(i, t) == 0) continue;
                Integer q = fdiv(S(i, t), S(t, t));
                S.add_row(i, t, -q);
                f.U.add_row(i, t, -q);
                if (S(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (S(t, j) == 0) continue;
                Integer q = fdiv(S(t, j), S(t, t));
                S.add_col(j, t, -q);
                f.V.add_col(j, t, -q);
                if (S(t, j) != 0) clean = false;
            }
            if (!clean) continue;
            std::size_t bad = m;
            for (std::size_t i = t + 1; i < m && bad == m; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (!mpz_divisible_p(S(i, j).get_mpz_t(), S(t, t).get_mpz_t())) {
                        bad = i;
                        break;
                    }
            if (bad == m) break;
            S.add_row(t, bad, 1);
            f.U.add_row(t, bad, 1);
        }
        if (!found) break;
        if (S(t, t) < 0) {
            for (std::size_t j = 0; j < n; ++j) S(t, j) = -S(t, j);
            for (std::size_t j = 0; j < m; ++j) f.U(t, j) = -f.U(t, j);
        }
    }
    f.rank = t;
    if (check_invariants() && !(f.U * a * f.V == f.D)) throw MathError("Smith normal form postcondition failed");
    return f;
}

SnfSolution snf_solve(const IntMatrix& a, const IntVector& t) {
    if (t.size() != a.rows()) throw InputError("snf_solve: dimension mismatch");
    SmithForm f = smith_normal_form(a);
    IntVector s = f.U * t;
    SnfSolution out;
    for (std::size_t i = f.rank; i < s.size(); ++i)
        if (s[i] != 0) throw MathError("no multiple works: target outside the rational column span");
    Integer m = 1;
    for (std::size_t i = 0; i < f.rank; ++i) {
        Integer g;
        mpz_gcd(g.get_mpz_t(), f.D(i, i).get_mpz_t(), s[i].get_mpz_t());
        Integer need = f.D(i, i) / g;
        mpz_lcm(m.get_mpz_t(), m.get_mpz_t(), need.get_mpz_t());
    }
    IntVector y(a.cols(), 0);
    for (std::size_t i = 0; i < f.rank; ++i) y[i] = m * s[i] / f.D(i, i);
    out.multiple = m;
    out.witness = f.V * y;
    for (std::size_t j = f.rank; j < a.cols(); ++j) out.kernel.push_back(f.V.col(j));
    if (check_invariants()) {
        IntVector lhs = a * out.witness;
        for (std::size_t i = 0; i < lhs.size(); ++i)
            if (lhs[i] != m * t[i]) throw MathError("snf_solve witness check failed");
    }
    return out;
}

std::vector<IntVector> lattice_basis(const std::vector<IntVector>& gens, std::size_t dim) {
    std::vector<IntVector> rows = gens;
    for (auto& r : rows)
        if (r.size() != dim) throw InputError("lattice_basis: dimension mismatch");
    std::size_t r = 0;
    for (std::size_t c = 0; c < dim && r < rows.size(); ++c) {
        for (;;) {
            std::size_t piv = rows.size();
            for (std::size_t i = r; i < rows.size(); ++i)
                if (rows[i][c] != 0 && (piv == rows.size() || abs(rows[i][c]) < abs(rows[piv][c]))) piv = i;
            if (piv == rows.size()) break;
            std::swap(rows[r], rows[piv]);
            bool done = true;
            for (std::size_t i = r + 1; i < rows.size(); ++i) {
                if (rows[i][c] == 0) continue;
                Integer q = fdiv(rows[i][c], rows[r][c]);
                for (std::size_t j = 0; j < dim; ++j) rows[i][j] -= q * rows[r][j];
                if (rows[i][c] != 0) done = false;
            }
            if (done) break;
        }
        if (rows[r][c] == 0) continue;
        if (rows[r][c] < 0)
            for (auto& x : rows[r]) x = -x;
        for (std::size_t i = 0; i < r; ++i) {
            Integer q = fdiv(rows[i][c], rows[r][c]);
            if (q != 0)
                for (std::size_t j = 0; j < dim; ++j) rows[i][j] -= q * rows[r][j];
        }
        ++r;
    }
    rows.resize(r);
    return rows;
}

namespace {

struct GramSchmidt {
    std::vector<RatVector> bstar;
    std::vector<Rational> norm2;
    std::vector<std::vector<Rational>> mu;
};

Rational rdot(const RatVector& a, const RatVector& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

GramSchmidt gram_schmidt(const std::vector<IntVector>& b) {
    GramSchmidt g;
    const std::size_t n = b.size();
    g.bstar.resize(n);
    g.norm2.resize(n);
    g.mu.assign(n, std::vector<Rational>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        RatVector v(b[i].begin(), b[i].end());
        RatVector bi = v;
        for (std::size_t j = 0; j < i; ++j) {
            if (g.norm2[j] == 0) continue;
            g.mu[i][j] = rdot(v, g.bstar[j]) / g.norm2[j];
            for (std::size_t k = 0; k < v.size(); ++k) bi[k] -= g.mu[i][j] * g.bstar[j][k];
        }
        g.norm2[i] = rdot(bi, bi);
        g.bstar[i] = std::move(bi);
    }
    return g;
}

}  // namespace

void lll_reduce(std::vector<IntVector>& b) {
    const std::size_t n = b.size();
    if (n < 2) return;
    const Rational delta(3, 4);
    GramSchmidt g = gram_schmidt(b);
    std::size_t k = 1;
    while (k < n) {
        for (std::size_t jj = k; jj-- > 0;) {
            Integer q = round_rational(g.mu[k][jj]);
            if (q == 0) continue;
            for (std::size_t t = 0; t < b[k].size(); ++t) b[k][t] -= q * b[jj][t];
            for (std::size_t l = 0; l < jj; ++l) g.mu[k][l] -= q * g.mu[jj][l];
            g.mu[k][jj] -= q;
        }
        if (g.norm2[k] >= (delta - g.mu[k][k - 1] * g.mu[k][k - 1]) * g.norm2[k - 1]) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            g = gram_schmidt(b);
            k = std::max<std::size_t>(k - 1, 1);
        }
    }
}

namespace {

auto vec_key(const IntVector& v) {
    Integer l2 = 0, l1 = 0;
    for (auto& x : v) {
        l2 += x * x;
        l1 += abs(x);
    }
    return std::make_tuple(l2, l1);
}

bool shorter(const IntVector& a, const IntVector& b) {
    auto ka = vec_key(a), kb = vec_key(b);
    if (ka != kb) return ka < kb;
    // prefer positive leading entries for a canonical tie-break
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] > b[i];
    return false;
}

}  // namespace

IntVector reduce_modulo_lattice(IntVector v, const std::vector<IntVector>& basis) {
    if (basis.empty()) return v;
    GramSchmidt g = gram_schmidt(basis);
    for (std::size_t j = basis.size(); j-- > 0;) {
        if (g.norm2[j] == 0) continue;
        RatVector cur(v.begin(), v.end());
        Integer c = round_rational(rdot(cur, g.bstar[j]) / g.norm2[j]);
        if (c != 0)
            for (std::size_t t = 0; t < v.size(); ++t) v[t] -= c * basis[j][t];
    }
    bool improved = true;
    while (improved) {
        improved = false;
        for (const auto& b : basis)
            for (int s : {1, -1}) {
                IntVector w = v;
                for (std::size_t t = 0; t < w.size(); ++t) w[t] += s * b[t];
                if (shorter(w, v)) {
                    v = std::move(w);
                    improved = true;
                }
            }
    }
    return v;
}

namespace {

// Row-reduce in place; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& m) {
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        m.swap_rows(r, p);
        Rational inv = Rational(1) / m(r, c);
        for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i)
            if (i != r && m(i, c) != 0) m.add_row(i, r, -m(i, c));
        piv.push_back(c);
        ++r;
    }
    return piv;
}

}  // namespace

std::size_t rank(RatMatrix m) { return rref(m).size(); }

Rational determinant(RatMatrix m) {
    if (m.rows() != m.cols()) throw InputError("determinant of a non-square matrix");
    Rational det = 1;
    const std::size_t n = m.rows();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            m.swap_rows(c, p);
            det = -det;
        }
        det *= m(c, c);
        for (std::size_t i = c + 1; i < n; ++i)
            if (m(i, c) != 0) m.add_row(i, c, -m(i, c) / m(c, c));
    }
    return det;
}

std::vector<RatVector> null_space(RatMatrix m) {
    auto piv = rref(m);
    std::vector<bool> is_piv(m.cols(), false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<RatVector> out;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_piv[f]) continue;
        RatVector v(m.cols(), 0);
        v[f] = 1;
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m(r, f);
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<RatVector> column_space(const RatMatrix& m) {
    RatMatrix t = m;
    auto piv = rref(t);
    std::vector<RatVector> out;
    for (auto c : piv) out.push_back(m.col(c));
    return out;
}

}  // namespace krel
