#include "krel/characters.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace krel {

// ---------------------------------------------------------------- ClassFunction

ClassFunction::ClassFunction(Group g, std::vector<CycNumber> values) : g_(std::move(g)), v_(std::move(values)) {
    if (v_.size() != g_.classes().size()) throw InputError("class function needs one value per class");
}

ClassFunction ClassFunction::rational(Group g, const std::vector<Rational>& values) {
    std::vector<CycNumber> v;
    for (auto& r : values) v.emplace_back(r);
    return ClassFunction(std::move(g), std::move(v));
}

ClassFunction ClassFunction::zero(const Group& g) {
    return ClassFunction(g, std::vector<CycNumber>(g.classes().size(), CycNumber()));
}

bool ClassFunction::is_rational() const {
    for (auto& x : v_)
        if (!x.is_rational()) return false;
    return true;
}

std::vector<Rational> ClassFunction::rational_values() const {
    std::vector<Rational> out;
    for (auto& x : v_) out.push_back(x.to_rational());
    return out;
}

ClassFunction ClassFunction::galois(long k) const {
    long e = static_cast<long>(g_.exponent());
    if (std::gcd(mod_long(k, e), e) != 1 && e > 1) throw InputError("Galois exponent must be coprime to exp(G)");
    std::vector<CycNumber> v(v_.size());
    for (std::size_t c = 0; c < v_.size(); ++c) v[c] = v_[g_.power_class(c, k)];
    return ClassFunction(g_, std::move(v));
}

ClassFunction& ClassFunction::operator+=(const ClassFunction& o) {
    if (!(g_ == o.g_)) throw InputError("class functions on different groups");
    for (std::size_t c = 0; c < v_.size(); ++c) v_[c] += o.v_[c];
    return *this;
}

ClassFunction& ClassFunction::operator-=(const ClassFunction& o) {
    if (!(g_ == o.g_)) throw InputError("class functions on different groups");
    for (std::size_t c = 0; c < v_.size(); ++c) v_[c] -= o.v_[c];
    return *this;
}

ClassFunction& ClassFunction::operator*=(const Rational& r) {
    for (auto& x : v_) x *= r;
    return *this;
}

bool operator==(const ClassFunction& a, const ClassFunction& b) {
    if (!(a.g_ == b.g_)) return false;
    for (std::size_t c = 0; c < a.v_.size(); ++c)
        if (a.v_[c] != b.v_[c]) return false;
    return true;
}

// ---------------------------------------------------------------- modular helpers

namespace {

using u64 = std::uint64_t;
using ModMat = std::vector<std::vector<u64>>;

u64 mpow(u64 b, u64 e, u64 p) {
    u64 r = 1;
    b %= p;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

u64 minv(u64 a, u64 p) { return mpow(a, p - 2, p); }

bool small_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::size_t> rref_mod(ModMat& m, u64 p) {
    std::vector<std::size_t> piv;
    if (m.empty()) return piv;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t q = r;
        while (q < rows && m[q][c] == 0) ++q;
        if (q == rows) continue;
        std::swap(m[r], m[q]);
        u64 inv = minv(m[r][c], p);
        for (auto& x : m[r]) x = x * inv % p;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            u64 f = m[i][c];
            for (std::size_t j = 0; j < cols; ++j) m[i][j] = (m[i][j] + (p - f) * m[r][j]) % p;
        }
        piv.push_back(c);
        ++r;
    }
    m.resize(r);
    return piv;
}

std::vector<std::vector<u64>> nullspace_mod(ModMat a, u64 p) {
    const std::size_t cols = a.empty() ? 0 : a[0].size();
    auto piv = rref_mod(a, p);
    std::vector<bool> is_piv(cols, false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<std::vector<u64>> out;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_piv[f]) continue;
        std::vector<u64> v(cols, 0);
        v[f] = 1;
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = (p - a[r][f]) % p;
        out.push_back(std::move(v));
    }
    return out;
}

struct Space {
    ModMat rows;  // reduced row echelon basis
    std::vector<std::size_t> piv;
};

Space make_space(ModMat rows, u64 p) {
    Space s;
    s.piv = rref_mod(rows, p);
    s.rows = std::move(rows);
    return s;
}

std::vector<Space> split_space(const Space& s, const ModMat& m, u64 p) {
    const std::size_t k = s.rows.size(), r = m.size();
    if (k <= 1) return {s};
    // matrix of m restricted to the space, in the echelon basis
    ModMat a(k, std::vector<u64>(k, 0));
    for (std::size_t j = 0; j < k; ++j) {
        std::vector<u64> mb(r, 0);
        for (std::size_t x = 0; x < r; ++x) {
            u64 acc = 0;
            for (std::size_t y = 0; y < r; ++y)
                if (m[x][y] && s.rows[j][y]) acc = (acc + m[x][y] * s.rows[j][y]) % p;
            mb[x] = acc;
        }
        for (std::size_t i = 0; i < k; ++i) a[i][j] = mb[s.piv[i]];
    }
    std::vector<Space> out;
    std::size_t remaining = k;
    for (u64 lam = 0; lam < p && remaining > 0; ++lam) {
        ModMat b = a;
        for (std::size_t i = 0; i < k; ++i) b[i][i] = (b[i][i] + p - lam) % p;
        auto ns = nullspace_mod(b, p);
        if (ns.empty()) continue;
        ModMat rows;
        for (auto& n : ns) {
            std::vector<u64> v(r, 0);
            for (std::size_t j = 0; j < k; ++j)
                if (n[j])
                    for (std::size_t y = 0; y < r; ++y) v[y] = (v[y] + n[j] * s.rows[j][y]) % p;
            rows.push_back(std::move(v));
        }
        out.push_back(make_space(std::move(rows), p));
        remaining -= ns.size();
    }
    if (remaining) throw MathError("class matrix is not diagonalizable modulo p");
    return out;
}

std::size_t field_level_of(const Group& g, const ClassFunction& chi) {
    long e = static_cast<long>(g.exponent());
    for (long m : divisors(e)) {
        bool ok = true;
        for (long k = 1; k <= e && ok; ++k) {
            if (std::gcd(k, e) != 1 || k % m != 1 % m) continue;
            if (!(chi.galois(k) == chi)) ok = false;
        }
        if (ok) return static_cast<std::size_t>(m);
    }
    return static_cast<std::size_t>(e);
}

std::shared_ptr<const CharacterTable> build_table(const Group& g) {
    auto t = std::make_shared<CharacterTable>();
    t->group = g;
    const auto& cls = g.classes();
    const std::size_t r = cls.size(), n = g.order();
    const u64 e = g.exponent();
    t->level = static_cast<unsigned>(e);

    u64 p = 0;
    for (u64 k = 1; k < 100000000ULL / e; ++k) {
        u64 c = k * e + 1;
        if (c * c > 4 * n && small_prime(c)) {
            p = c;
            break;
        }
    }
    if (!p) throw MathError("no admissible prime found for the character table");
    t->prime = static_cast<unsigned>(p);
    u64 gen = 2;
    {
        std::vector<u64> qs;
        u64 m = p - 1;
        for (u64 q = 2; q * q <= m; ++q)
            if (m % q == 0) {
                qs.push_back(q);
                while (m % q == 0) m /= q;
            }
        if (m > 1) qs.push_back(m);
        for (gen = 2; gen < p; ++gen) {
            bool prim = true;
            for (auto q : qs)
                if (mpow(gen, (p - 1) / q, p) == 1) prim = false;
            if (prim) break;
        }
    }
    const u64 z = mpow(gen, (p - 1) / e, p);
    std::vector<u64> zp(e);
    for (u64 k = 0; k < e; ++k) zp[k] = mpow(z, k, p);

    // class multiplication coefficients c[j][k][l]
    std::vector<u64> cc(r * r * r, 0);
    for (std::size_t l = 0; l < r; ++l) {
        Elem zl = cls[l].rep;
        for (std::size_t x = 0; x < n; ++x) {
            Elem y = g.mul(g.inv(static_cast<Elem>(x)), zl);
            cc[(g.class_of(static_cast<Elem>(x)) * r + g.class_of(y)) * r + l] += 1;
        }
    }
    auto class_matrix = [&](std::size_t j) {
        ModMat m(r, std::vector<u64>(r, 0));
        for (std::size_t k = 0; k < r; ++k)
            for (std::size_t l = 0; l < r; ++l) m[k][l] = cc[(j * r + k) * r + l] % p;
        return m;
    };

    ModMat ident(r, std::vector<u64>(r, 0));
    for (std::size_t i = 0; i < r; ++i) ident[i][i] = 1;
    std::vector<Space> spaces{make_space(ident, p)};
    auto all_split = [&] {
        for (auto& s : spaces)
            if (s.rows.size() > 1) return false;
        return true;
    };
    {
        ModMat comb(r, std::vector<u64>(r, 0));
        u64 seed = 12345;
        for (std::size_t j = 0; j < r; ++j) {
            seed = (seed * 1103515245ULL + 12345ULL) % 2147483648ULL;
            u64 coef = seed % p;
            auto m = class_matrix(j);
            for (std::size_t a = 0; a < r; ++a)
                for (std::size_t b = 0; b < r; ++b) comb[a][b] = (comb[a][b] + coef * m[a][b]) % p;
        }
        std::vector<Space> next;
        for (auto& s : spaces)
            for (auto& x : split_space(s, comb, p)) next.push_back(std::move(x));
        spaces = std::move(next);
    }
    for (std::size_t j = 1; j < r && !all_split(); ++j) {
        auto m = class_matrix(j);
        std::vector<Space> next;
        for (auto& s : spaces)
            for (auto& x : split_space(s, m, p)) next.push_back(std::move(x));
        spaces = std::move(next);
    }
    if (!all_split() || spaces.size() != r) throw MathError("class algebra did not split into characters");

    struct Raw {
        long degree;
        std::vector<std::vector<long>> mult;
        ClassFunction chi;
    };
    std::vector<Raw> raws;
    long sqrt_n = 1;
    while ((sqrt_n + 1) * (sqrt_n + 1) <= static_cast<long>(n)) ++sqrt_n;
    for (auto& s : spaces) {
        std::vector<u64> w = s.rows[0];
        if (w[0] == 0) throw MathError("degenerate class-algebra eigenvector");
        u64 inv0 = minv(w[0], p);
        for (auto& x : w) x = x * inv0 % p;
        u64 sum = 0;
        for (std::size_t j = 0; j < r; ++j) {
            std::size_t js = g.inverse_class(j);
            sum = (sum + w[j] * w[js] % p * minv(cls[j].elements.size() % p, p)) % p;
        }
        u64 d2 = n % p * minv(sum, p) % p;
        long deg = 0;
        for (long d = 1; d <= sqrt_n; ++d)
            if (static_cast<u64>(d * d) % p == d2) {
                deg = d;
                break;
            }
        if (!deg) throw MathError("could not recover a character degree");
        std::vector<u64> val(r);
        for (std::size_t j = 0; j < r; ++j)
            val[j] = w[j] * (static_cast<u64>(deg) % p) % p * minv(cls[j].elements.size() % p, p) % p;
        Raw raw{deg, {}, {}};
        raw.mult.assign(r, std::vector<long>(e, 0));
        u64 einv = minv(e % p, p);
        std::vector<CycNumber> vals;
        for (std::size_t c = 0; c < r; ++c) {
            long total = 0;
            for (u64 k = 0; k < e; ++k) {
                u64 acc = 0;
                for (u64 tt = 0; tt < e; ++tt) {
                    acc = (acc + val[g.power_class(c, static_cast<long>(tt))] * zp[(e - (k * tt) % e) % e]) % p;
                }
                acc = acc * einv % p;
                if (acc > static_cast<u64>(deg)) throw MathError("eigenvalue multiplicity out of range");
                raw.mult[c][k] = static_cast<long>(acc);
                total += static_cast<long>(acc);
            }
            if (total != deg) throw MathError("eigenvalue multiplicities do not sum to the degree");
            vals.push_back(CycNumber::from_exponents(static_cast<unsigned>(e), raw.mult[c]));
        }
        raw.chi = ClassFunction(g, std::move(vals));
        raws.push_back(std::move(raw));
    }

    std::vector<std::size_t> flevel(raws.size());
    for (std::size_t a = 0; a < raws.size(); ++a) flevel[a] = field_level_of(g, raws[a].chi);
    std::vector<std::size_t> ord(raws.size());
    std::iota(ord.begin(), ord.end(), 0);
    std::sort(ord.begin(), ord.end(), [&](std::size_t a, std::size_t b) {
        if (raws[a].degree != raws[b].degree) return raws[a].degree < raws[b].degree;
        if (flevel[a] != flevel[b]) return flevel[a] < flevel[b];
        for (std::size_t c = 0; c < r; ++c) {
            int s = compare(raws[a].chi[c], raws[b].chi[c]);
            if (s) return s > 0;
        }
        return false;
    });
    for (std::size_t i = 0; i < ord.size(); ++i) {
        auto& raw = raws[ord[i]];
        t->irr.push_back(raw.chi);
        t->eigen.push_back(raw.mult);
        t->field_level.push_back(flevel[ord[i]]);
        t->labels.push_back("X" + std::to_string(i + 1));
    }

    // exact orthogonality via traces of roots of unity
    const long phi = euler_phi(static_cast<long>(e));
    std::vector<long> ram(e);
    for (u64 k = 0; k < e; ++k) ram[k] = ramanujan_sum(static_cast<long>(e), static_cast<long>(k));
    auto pair_trace = [&](const std::vector<long>& x, const std::vector<long>& y) {
        long s = 0;
        for (u64 k = 0; k < e; ++k) {
            if (!x[k]) continue;
            for (u64 l = 0; l < e; ++l)
                if (y[l]) s += x[k] * y[l] * ram[(k + e - l) % e];
        }
        return s;
    };
    long degsq = 0;
    for (std::size_t a = 0; a < r; ++a) {
        degsq += raws[ord[a]].degree * raws[ord[a]].degree;
        for (std::size_t b = a; b < r; ++b) {
            long s = 0;
            for (std::size_t c = 0; c < r; ++c)
                s += static_cast<long>(cls[c].elements.size()) * pair_trace(t->eigen[a][c], t->eigen[b][c]);
            if (s != (a == b ? phi * static_cast<long>(n) : 0)) throw MathError("row orthogonality failed");
        }
    }
    if (degsq != static_cast<long>(n)) throw MathError("sum of squared degrees differs from the group order");
    for (std::size_t c = 0; c < r; ++c)
        for (std::size_t d = c; d < r; ++d) {
            long s = 0;
            for (std::size_t a = 0; a < r; ++a) s += pair_trace(t->eigen[a][c], t->eigen[a][d]);
            long expect = c == d ? phi * static_cast<long>(g.centralizer_order(c)) : 0;
            if (s != expect) throw MathError("column orthogonality failed");
        }

    // Galois orbits and rational irreducibles
    t->orbit_id.assign(r, SIZE_MAX);
    for (std::size_t a = 0; a < r; ++a) {
        if (t->orbit_id[a] != SIZE_MAX) continue;
        RationalIrreducible ri;
        ri.constituent = a;
        std::set<std::size_t> orbit;
        for (long k = 1; k <= static_cast<long>(e); ++k) {
            if (std::gcd(k, static_cast<long>(e)) != 1) continue;
            auto img = t->find(t->irr[a].galois(k));
            if (!img) throw MathError("Galois conjugate of an irreducible is missing");
            orbit.insert(*img);
        }
        ri.orbit.assign(orbit.begin(), orbit.end());
        ri.orbit_sum = ClassFunction::zero(g);
        for (auto b : ri.orbit) {
            t->orbit_id[b] = t->rational.size();
            ri.orbit_sum += t->irr[b];
        }
        if (!ri.orbit_sum.is_rational()) throw MathError("orbit sum is not rational");
        t->rational.push_back(std::move(ri));
    }
    return t;
}

}  // namespace

long CharacterTable::degree(std::size_t a) const {
    return static_cast<long>(irr[a].degree().to_rational().get_num().get_si());
}

std::size_t CharacterTable::galois_index(std::size_t a, long k) const {
    auto f = find(irr[a].galois(k));
    if (!f) throw MathError("Galois conjugate not found");
    return *f;
}

std::optional<std::size_t> CharacterTable::find(const ClassFunction& f) const {
    for (std::size_t a = 0; a < irr.size(); ++a)
        if (irr[a] == f) return a;
    return std::nullopt;
}

std::optional<std::size_t> CharacterTable::find_label(const std::string& label) const {
    for (std::size_t a = 0; a < labels.size(); ++a)
        if (labels[a] == label) return a;
    return std::nullopt;
}

std::optional<std::size_t> CharacterTable::find_degree_index(long deg, std::size_t index) const {
    std::size_t seen = 0;
    for (std::size_t a = 0; a < irr.size(); ++a)
        if (degree(a) == deg && seen++ == index) return a;
    return std::nullopt;
}

const CharacterTable& character_table(const Group& g) { return *g.cached_table(build_table); }

ClassFunction perm_character(const Group& g, const ElemSet& h) {
    const auto& cls = g.classes();
    std::vector<Rational> v(cls.size());
    const std::size_t hs = h.count();
    for (std::size_t c = 0; c < cls.size(); ++c) {
        std::size_t inter = 0;
        for (auto x : cls[c].elements)
            if (h.test(x)) ++inter;
        v[c] = Rational(static_cast<long>(g.order() * inter), static_cast<long>(hs * cls[c].elements.size()));
        v[c].canonicalize();
    }
    return ClassFunction::rational(g, v);
}

ClassFunction perm_character(const Group& g, std::size_t subgroup_class) {
    return perm_character(g, g.subgroup_classes().at(subgroup_class).rep);
}

Rational inner_product(const ClassFunction& a, const ClassFunction& b) {
    if (!(a.group() == b.group())) throw InputError("inner product of class functions on different groups");
    const Group& g = a.group();
    const auto& cls = g.classes();
    CycNumber acc;
    bool ra = a.is_rational(), rb = b.is_rational();
    for (std::size_t c = 0; c < cls.size(); ++c) {
        Rational w(static_cast<long>(cls[c].elements.size()));
        if (rb)
            acc += a[c] * (b[c].to_rational() * w);
        else if (ra)
            acc += b[c].conj() * (a[c].to_rational() * w);
        else
            acc += a[c] * b[c].conj() * w;
    }
    return acc.to_rational() / Rational(static_cast<long>(g.order()));
}

std::vector<Rational> decompose(const ClassFunction& f) {
    const auto& t = character_table(f.group());
    std::vector<Rational> out;
    for (auto& chi : t.irr) out.push_back(inner_product(f, chi));
    return out;
}

int fs_indicator(const ClassFunction& chi) {
    const Group& g = chi.group();
    const auto& cls = g.classes();
    CycNumber acc;
    for (std::size_t c = 0; c < cls.size(); ++c)
        acc += chi[g.power_class(c, 2)] * Rational(static_cast<long>(cls[c].elements.size()));
    if (!acc.is_rational()) throw InputError("fs_indicator: not a character");
    Rational v = acc.to_rational() / Rational(static_cast<long>(g.order()));
    if (v == 1) return 1;
    if (v == -1) return -1;
    if (v == 0) return 0;
    throw InputError("fs_indicator: not an irreducible character");
}

std::vector<ClassFunction> galois_orbit(const ClassFunction& chi) {
    std::vector<ClassFunction> out;
    long e = static_cast<long>(chi.group().exponent());
    for (long k = 1; k <= e; ++k) {
        if (std::gcd(k, e) != 1) continue;
        ClassFunction img = chi.galois(k);
        if (std::find(out.begin(), out.end(), img) == out.end()) out.push_back(std::move(img));
    }
    return out;
}

const std::vector<RationalIrreducible>& rational_irreducibles(const Group& g) { return character_table(g).rational; }

std::size_t rational_index_of(const Group& g, std::size_t a) { return character_table(g).orbit_id.at(a); }

ElemSet character_kernel(const ClassFunction& chi) {
    const Group& g = chi.group();
    ElemSet k(g.order());
    for (std::size_t x = 0; x < g.order(); ++x)
        if (chi.at(static_cast<Elem>(x)) == chi[0]) k.set(x);
    return k;
}

namespace {

std::vector<std::string> build_rational_names(const Group& g) {
    const auto& t = character_table(g);
    const auto& ri = rational_irreducibles(g);
    std::vector<std::string> role(ri.size());
    std::map<std::string, int> uses;
    for (std::size_t i = 0; i < ri.size(); ++i) {
        const std::size_t a = ri[i].constituent;
        const long deg = t.degree(a);
        const ElemSet ker = character_kernel(t.irr[a]);
        const std::size_t image = g.order() / ker.count();
        if (image == 1) role[i] = "1";
        else if (deg == 1 && image == 2) role[i] = "ε";
        if (deg == 2 && image >= 6) {
            const std::string lab = quotient_group(g, ker).group.subgroup_classes().back().label;
            if (lab == "D" + std::to_string(image / 2)) role[i] = "χ_" + std::to_string(image / 2);
        }
        if (!role[i].empty()) ++uses[role[i]];
    }
    std::vector<std::string> out(ri.size());
    for (std::size_t i = 0; i < ri.size(); ++i)
        out[i] = (!role[i].empty() && uses[role[i]] == 1) ? role[i] : t.labels[ri[i].constituent];
    return out;
}

}  // namespace

std::string rational_irreducible_name(const Group& g, std::size_t rational_index) {
    auto names = std::static_pointer_cast<const std::vector<std::string>>(g.cached(
        "characters.rational_names", [&] { return std::make_shared<const std::vector<std::string>>(build_rational_names(g)); }));
    if (rational_index >= names->size()) throw InputError("rational irreducible index out of range");
    return (*names)[rational_index];
}

std::optional<std::size_t> find_rational_irreducible(const Group& g, const std::string& name) {
    std::string want = name;
    if (want.rfind("chi_", 0) == 0) want = "χ_" + want.substr(4);
    if (want == "eps" || want == "epsilon") want = "ε";
    const auto& ri = rational_irreducibles(g);
    for (std::size_t i = 0; i < ri.size(); ++i)
        if (rational_irreducible_name(g, i) == want) return i;
    if (auto a = character_table(g).find_label(want)) return rational_index_of(g, *a);
    return std::nullopt;
}

// ---------------------------------------------------------------- fields

std::vector<Integer> quadratic_subfields_fixed_by(long n, const std::vector<long>& residues) {
    std::vector<long> primes;
    for (long q = 2, m = n; q <= m; ++q)
        if (m % q == 0) {
            primes.push_back(q);
            while (m % q == 0) m /= q;
        }
    std::vector<Integer> out;
    const std::size_t np = primes.size();
    for (std::size_t mask = 0; mask < (std::size_t(1) << np); ++mask) {
        for (int sign : {1, -1}) {
            Integer d = sign;
            for (std::size_t i = 0; i < np; ++i)
                if (mask >> i & 1) d *= primes[i];
            if (d == 1) continue;
            Integer f = quadratic_conductor(d);
            if (n % f.get_si() != 0) continue;
            Integer disc = fundamental_discriminant(d);
            bool trivial = true;
            for (long k : residues)
                if (kronecker_symbol(disc, Integer(k)) != 1) trivial = false;
            if (trivial) out.push_back(d);
        }
    }
    std::sort(out.begin(), out.end(), [](const Integer& a, const Integer& b) {
        if (abs(a) != abs(b)) return abs(a) < abs(b);
        return a > b;
    });
    return out;
}

std::vector<Integer> quadratic_subfields_of_cyclotomic(long n) { return quadratic_subfields_fixed_by(n, {1}); }

int CharFieldData::degree_factor(const Integer& d) const {
    for (auto& q : quadratic_subfields)
        if (q == d) return 1;
    return 2;
}

CharFieldData char_field_data(const ClassFunction& chi) {
    CharFieldData f;
    long e = static_cast<long>(chi.group().exponent());
    f.level = static_cast<unsigned>(e);
    for (long k = 1; k <= e; ++k) {
        if (std::gcd(k, e) != 1) continue;
        if (chi.galois(k) == chi) f.stabilizer.push_back(k % e == 0 ? e : k);
    }
    f.quadratic_subfields = quadratic_subfields_fixed_by(e, f.stabilizer);
    return f;
}

}  // namespace krel
