#include "krel/harness.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <sstream>

namespace krel {

std::string MetacyclicSpec::str() const {
    return "C" + std::to_string(e) + (sign < 0 ? ":-" : ":+") + "C" + std::to_string(1L << k);
}

Elem Metacyclic::element(long i, long j) const {
    const long m = 1L << spec.k;
    return by_code[static_cast<std::size_t>(mod_long(i, spec.e) + spec.e * mod_long(j, m))];
}

Metacyclic build_metacyclic(const MetacyclicSpec& spec) {
    if (spec.e < 1 || spec.k < 0 || spec.k > 6) throw InputError("metacyclic: parameters out of range");
    Metacyclic m;
    m.spec = spec;
    m.group = metacyclic_group(static_cast<std::size_t>(spec.e), static_cast<std::size_t>(spec.k), spec.sign);
    const Group& g = m.group;
    m.by_code.assign(g.order(), 0);
    // the regular action sends the base point 0 to the element's code
    for (Elem a = 0; a < g.order(); ++a) m.by_code[g.element(a)[0]] = a;
    m.x = m.element(1, 0);
    m.y = m.element(0, 1);
    m.I = g.closure({m.x});
    return m;
}

std::string to_string(AppendixCase c) {
    switch (c) {
        case AppendixCase::C2: return "2C";
        case AppendixCase::D2: return "2D";
        case AppendixCase::M2: return "2M";
    }
    return "?";
}

AppendixCase parse_appendix_case(const std::string& s) {
    if (s == "2C" || s == "2c") return AppendixCase::C2;
    if (s == "2D" || s == "2d") return AppendixCase::D2;
    if (s == "2M" || s == "2m") return AppendixCase::M2;
    throw InputError("unknown case '" + s + "' (expected 2C, 2D or 2M)");
}

namespace {

std::string class_str(const SquareClassLocal& c) {
    return std::string(c.val_parity ? "pi" : "1") + (c.unit_is_square ? "" : "*u");
}

bool is_small_prime(long n) { return n >= 2 && is_prime(Integer(n)); }

// l >= 5 with l = sign mod e, one per residue class mod 24
std::vector<long> sample_primes(long e, int sign, std::size_t count) {
    std::vector<long> out;
    std::set<long> seen;
    for (long l = 5; l < 5000 && out.size() < count; l += 2) {
        if (!is_small_prime(l) || mod_long(l - sign, e) != 0) continue;
        if (!seen.insert(l % 24).second) continue;
        out.push_back(l);
    }
    return out;
}

const std::vector<long>& deltas_for(long e) {
    static const std::map<long, std::vector<long>> table{{2, {6}}, {3, {4, 8}}, {4, {3, 9}}, {6, {2, 10}}};
    auto it = table.find(e);
    if (it == table.end()) throw InputError("e must be 2, 3, 4 or 6");
    return it->second;
}

bool delta_forces_classes(long delta) { return delta == 2 || delta == 4 || delta == 8 || delta == 10; }

std::vector<SquareClassLocal> all_classes(std::optional<int> parity) {
    std::vector<SquareClassLocal> out;
    for (int v = 0; v < 2; ++v) {
        if (parity && *parity != v) continue;
        for (bool u : {true, false}) out.push_back({v, u});
    }
    return out;
}

}  // namespace

std::string TamagawaConfig::str() const {
    std::ostringstream os;
    os << to_string(which) << " " << spec.str() << " l=" << l;
    if (which == AppendixCase::M2) os << " n=" << n << " -c6=" << class_str(minus6b_class);
    else os << " delta=" << delta << " B=" << class_str(b_class);
    os << " Delta=" << class_str(delta_class);
    return os.str();
}

std::vector<TamagawaConfig> tamagawa_configs(AppendixCase which, const std::vector<long>& e_values, long k_max) {
    std::vector<TamagawaConfig> out;
    for (long e : e_values) {
        std::vector<int> signs;
        if (which == AppendixCase::C2) signs = {1};
        if (which == AppendixCase::D2) {
            if (e <= 2) continue;
            signs = {-1};
        }
        if (which == AppendixCase::M2) {
            // L is ramified, so it lies in F only when the inertia order is even
            if (e % 2) continue;
            signs = {1, -1};
        }
        for (int sign : signs) {
            for (long k = 0; k <= k_max; ++k) {
                if (sign < 0 && k == 0 && e > 2) continue;
                if (which == AppendixCase::M2 && sign < 0 && e == 2) continue;
                for (long l : sample_primes(e, sign, 8)) {
                    const Integer q(l);
                    TamagawaConfig c;
                    c.which = which;
                    c.spec = {e, k, sign};
                    c.l = l;
                    if (which == AppendixCase::M2) {
                        for (long n = 1; n <= 3; ++n)
                            for (bool cu : {true, false}) {
                                // with trivial residue degree only one ramified quadratic lies in F
                                if (k == 0 && !cu) continue;
                                for (auto dc : all_classes(static_cast<int>(n % 2))) {
                                    c.n = n;
                                    c.minus6b_class = {1, cu};
                                    c.b_class = {1, cu == is_square_mod_q(-6, l, q)};
                                    c.delta_class = dc;
                                    out.push_back(c);
                                }
                            }
                        continue;
                    }
                    for (long delta : deltas_for(e)) {
                        c.delta = delta;
                        std::vector<SquareClassLocal> dcs, bcs;
                        if (delta_forces_classes(delta)) {
                            dcs = {{static_cast<int>(delta % 2), is_square_mod_q(-3, l, q)}};
                            bcs = all_classes(static_cast<int>((delta / 2) % 2));
                        } else {
                            dcs = all_classes(static_cast<int>(delta % 2));
                            bcs = all_classes(std::nullopt);
                        }
                        for (auto& dc : dcs)
                            for (auto& bc : bcs) {
                                c.delta_class = dc;
                                c.b_class = bc;
                                out.push_back(c);
                            }
                    }
                }
            }
        }
    }
    return out;
}

namespace {

// kernel of the quadratic character cutting out sqrt(x), through the Frobenius model
ElemSet sqrt_kernel_of(const Group& g, const PlaceDescriptor& p, const SquareClassLocal& x) {
    ElemSet k(g.order());
    for (auto a : p.D.elements())
        if (sqrt_in_fixed_field(g, p, x, g.closure({a}))) k.set(a);
    return k;
}

}  // namespace

PlaceDescriptor appendix_place(const Metacyclic& m, const TamagawaConfig& c, SquareModel model) {
    const Group& g = m.group;
    PlaceDescriptor p;
    p.name = "v";
    p.kind = PlaceKind::Finite;
    p.l = c.l;
    p.q = c.l;
    p.D = g.whole();
    p.I = m.I;
    p.frobenius = m.y;
    auto& r = p.reduction;
    r.delta_class = c.delta_class;
    r.b_class = c.b_class;
    if (c.which == AppendixCase::M2) {
        r.type = ReductionType::AddPotMult;
        r.n = c.n;
        r.minus_c6_class = c.minus6b_class;
        r.minus6b_class = c.minus6b_class;
        r.d_prime = sqrt_kernel_of(g, p, c.minus6b_class);
    } else {
        r.type = ReductionType::AddPotGood;
        r.delta = c.delta;
        if (c.which == AppendixCase::D2) r.d_prime = g.closure({g.pow(m.y, 2)});
    }
    if (model == SquareModel::IndicesOnly) p.frobenius.reset();
    return p;
}

namespace {

RatMatrix block_diag(const std::vector<RatMatrix>& blocks) {
    std::size_t n = 0;
    for (auto& b : blocks) n += b.rows();
    RatMatrix out(n, n);
    std::size_t o = 0;
    for (auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) out(o + i, o + j) = b(i, j);
        o += b.rows();
    }
    return out;
}

RatMatrix mat2(long a, long b, long c, long d) {
    RatMatrix m(2, 2);
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = d;
    return m;
}

RatMatrix mat1(long a) { return RatMatrix(1, 1, Rational(a)); }

RatMatrix mat_pow(const RatMatrix& a, long k) {
    RatMatrix r = RatMatrix::identity(a.rows());
    for (long i = 0; i < k; ++i) r = r * a;
    return r;
}

// 1 + sign character + faithful 2-dimensional of the dihedral quotient by <y^2>
MatrixRep dihedral_quotient_rep(const Metacyclic& m) {
    RatMatrix r;
    switch (m.spec.e) {
        case 3: r = mat2(0, -1, 1, -1); break;
        case 4: r = mat2(0, -1, 1, 0); break;
        case 6: r = mat2(1, -1, 1, 0); break;
        default: throw InputError("dihedral quotient model needs e in {3, 4, 6}");
    }
    RatMatrix rx = block_diag({mat1(1), mat1(1), r});
    RatMatrix ry = block_diag({mat1(1), mat1(-1), mat2(0, 1, 1, 0)});
    const Group& g = m.group;
    std::vector<RatMatrix> gens;
    for (auto a : g.generators()) {
        long code = g.element(a)[0];
        gens.push_back(mat_pow(rx, code % m.spec.e) * mat_pow(ry, code / m.spec.e));
    }
    return MatrixRep::make(g, gens);
}

struct DihedralModel {
    MatrixRep rep;
    RatMatrix pairing;
};

}  // namespace

SubgroupFunction appendix_ratio(const Metacyclic& m, const TamagawaConfig& c, SquareModel model) {
    const Group& g = m.group;
    PlaceDescriptor p = appendix_place(m, c, model);
    require_valid(g, p);
    const ElemSet dprime = p.reduction.d_prime.value_or(ElemSet(g.order()));
    std::optional<DihedralModel> dm;
    if (c.which == AppendixCase::D2) {
        auto rep = dihedral_quotient_rep(m);
        auto pairing = random_invariant_pairing(rep, 1);
        dm = DihedralModel{std::move(rep), std::move(pairing)};
    }
    SubgroupFunction out;
    for (auto& sc : g.subgroup_classes()) {
        const ElemSet& h = sc.rep;
        Rational v(tamagawa(g, p, h));
        if (dm) {
            RatMatrix s(dm->rep.dim, dm->rep.dim);
            for (auto a : h.elements()) {
                const auto& im = dm->rep(a);
                for (std::size_t i = 0; i < s.rows(); ++i)
                    for (std::size_t j = 0; j < s.cols(); ++j) s(i, j) += im(i, j);
            }
            long dim = static_cast<long>(rank(s));
            Rational a = fixed_gram_det(dm->rep, dm->pairing, h) * rational_pow(Rational(h.count()), dim);
            v /= a;
        }
        if (c.which == AppendixCase::M2 && h.subset_of(dprime)) v *= Rational(h.count());
        out.push_back(v);
    }
    return out;
}

std::vector<Integer> appendix_fields(const Group& g) {
    std::set<Integer> s;
    for (auto& d : quadratic_subfields_of_cyclotomic(static_cast<long>(g.exponent()))) s.insert(d);
    for (long d : {-1, 2, -2, 3, -3, 5, -5, 6, -6, 7, -7}) s.insert(Integer(d));
    return {s.begin(), s.end()};
}

namespace {

// groups are shared across configurations so their character tables and relation lattices are reused
const Metacyclic& shared_metacyclic(const MetacyclicSpec& spec) {
    static std::mutex mu;
    static std::map<std::tuple<long, long, int>, Metacyclic> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(spec.e, spec.k, spec.sign);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, build_metacyclic(spec)).first;
    return it->second;
}

}  // namespace

ConfigResult appendix_tamagawa_check(const TamagawaConfig& c, SquareModel model) {
    ConfigResult res;
    res.config = c;
    const Metacyclic& m = shared_metacyclic(c.spec);
    auto ratio = appendix_ratio(m, c, model);
    for (auto& d : appendix_fields(m.group)) {
        res.fields.push_back(d);
        auto t = is_trivial_on_k_relations(ratio, m.group, d);
        if (t.trivial) continue;
        res.pass = false;
        std::ostringstream os;
        os << "case " << to_string(c.which) << ": " << (c.which == AppendixCase::M2 ? "c_v/d" : "c_v/a") << " = "
           << to_string(t.value) << " on " << (t.certificate ? t.certificate->str() : "?")
           << " is not a norm from Q(sqrt " << d.get_str() << ")";
        res.diagnostic = os.str();
        break;
    }
    return res;
}

// ---- differential term on cyclic quotients

namespace {

struct PrimePower {
    long two = 0;  // exponent of 2
    long p = 1;    // odd prime, 1 if the odd part is 1
    long k = 0;
    bool single = true;  // odd part is 1 or a prime power
};

PrimePower split_two(long n) {
    PrimePower r;
    while (n % 2 == 0) {
        n /= 2;
        ++r.two;
    }
    if (n == 1) return r;
    auto f = factor(Integer(n));
    if (f.primes.size() != 1) {
        r.single = false;
        return r;
    }
    r.p = f.primes[0].first.get_si();
    r.k = f.primes[0].second;
    return r;
}

long p_star(long p) { return mod_long(p, 4) == 1 ? p : -p; }

long mult_order(long q, long n) {
    if (n == 1) return 1;
    long x = mod_long(q, n), o = 1;
    while (x != 1) {
        x = (x * mod_long(q, n)) % n;
        if (++o > n) return 0;
    }
    return o;
}

bool power_of_two(long x) { return x > 0 && (x & (x - 1)) == 0; }

Integer l_exponent(long delta, long n) {
    Integer s = 0;
    for (long d : divisors(n)) s += moebius(n / d) * ((delta * d) / 12);
    return s;
}

Rational g_value(long e, long n) {
    Rational r = 1;
    for (long d : divisors(n)) {
        int mu = moebius(n / d);
        if (mu == 0 || d % e == 0) continue;
        r *= rational_pow(Rational(d), mu);
    }
    return r;
}

std::vector<long> differential_sample(long r_max) {
    std::set<long> s;
    for (long n = 1; n <= r_max; ++n) s.insert(n);
    for (long p = 3; p <= 23; p += 2) {
        if (!is_small_prime(p)) continue;
        long pk = 1;
        for (int k = 1; k <= 3; ++k) {
            pk *= p;
            for (long c : {1, 2, 3, 4, 6, 12}) s.insert(c * pk);
        }
    }
    for (long t = 2; t <= 64; t *= 2)
        for (long c : {1, 3, 12}) s.insert(c * t);
    for (long t = 3; t <= 81; t *= 3)
        for (long c : {1, 2}) s.insert(c * t);
    return {s.begin(), s.end()};
}

}  // namespace

namespace {

// n = c * p^k with p an odd prime not dividing c, k >= 1 and pred(p)
template <class Pred>
bool times_prime_power(long n, long c, Pred pred) {
    if (n % c != 0) return false;
    long m = n / c;
    if (m < 3 || m % 2 == 0) return false;
    auto f = factor(Integer(m));
    if (f.primes.size() != 1) return false;
    long p = f.primes[0].first.get_si();
    return c % p != 0 && pred(p);
}

// n = c * base^k with k >= 1
bool times_power(long n, long c, long base) {
    if (n % c != 0) return false;
    long m = n / c;
    if (m < base) return false;
    while (m % base == 0) m /= base;
    return m == 1;
}

}  // namespace

namespace {

bool printed_h_nonsquare(long e, long n) {
    auto mod_in = [](long p, long m, std::initializer_list<long> rs) {
        return std::find(rs.begin(), rs.end(), mod_long(p, m)) != rs.end();
    };
    if (n % e != 0) {
        switch (e) {
            case 2: return times_prime_power(n, 1, [&](long p) { return mod_in(p, 4, {3}); });
            case 3:
                return times_power(n, 2, 2) || times_prime_power(n, 2, [&](long p) { return mod_in(p, 3, {2}); }) ||
                       times_prime_power(n, 1, [&](long p) { return mod_in(p, 3, {2}); });
            case 4:
                return times_prime_power(n, 1, [&](long p) { return !mod_in(p, 8, {7}); }) ||
                       times_prime_power(n, 2, [&](long p) { return mod_in(p, 8, {3, 5}); });
            case 6:
                return times_power(n, 4, 2) || times_power(n, 3, 3) ||
                       times_prime_power(n, 1, [&](long p) { return mod_in(p, 12, {11, 7}); }) ||
                       times_prime_power(n, 2, [&](long p) { return mod_in(p, 12, {5, 7}); });
        }
        return false;
    }
    switch (e) {
        case 2: return n == 4 || times_prime_power(n, 2, [&](long p) { return mod_in(p, 4, {3}); });
        case 3:
            return n == 3 || times_power(n, 3, 2) || times_prime_power(n, 3, [&](long p) { return mod_in(p, 3, {2}); });
        case 4: return n == 4 || n == 8 || times_prime_power(n, 4, [&](long p) { return mod_in(p, 4, {3}); });
        case 6:
            return times_power(n, 2, 3) || times_power(n, 3, 2) ||
                   times_prime_power(n, 6, [&](long p) { return mod_in(p, 12, {11, 5}); });
    }
    return false;
}

bool corrected_h_nonsquare(long e, long delta, long n) {
    auto mod_in = [](long p, long m, std::initializer_list<long> rs) {
        return std::find(rs.begin(), rs.end(), mod_long(p, m)) != rs.end();
    };
    bool r;
    if (e == 2 && n == 2) r = true;
    else if (e == 3 && n % 3 != 0)
        r = times_power(n, 2, 2) || times_prime_power(n, 1, [&](long p) { return mod_in(p, 3, {2}); });
    else if (e == 4 && n % 4 != 0)
        r = times_prime_power(n, 1, [&](long p) { return mod_in(p, 8, {5, 7}); }) ||
            times_prime_power(n, 2, [&](long p) { return mod_in(p, 8, {3, 5}); });
    else r = printed_h_nonsquare(e, n);
    // 12 - delta flips the parity of the exponent at n = 2 and n = e only
    if (delta > 6 && (n == 2 || n == e)) r = !r;
    return r;
}

}  // namespace

bool table_h_nonsquare(long e, long delta, long n, TableReading reading) {
    return reading == TableReading::AsPrinted ? printed_h_nonsquare(e, n) : corrected_h_nonsquare(e, delta, n);
}

std::vector<std::string> table_errata() {
    return {
        "e=2: n=2 has h non-square (missing from the e|n list)",
        "e=3: 2p^k with p = 2 mod 3 has h a square (listed as non-square)",
        "e=4: p^k has h non-square iff p = 5 or 7 mod 8 (listed as p != 7 mod 8)",
        "delta in {8,9,10}: membership of n=2 and n=e is the opposite of the listed one",
        "e=4, case 2D: n=4p^k with q = 1 mod p and p = 3 mod 4 has (h g) class pl (listed as p)",
        "e=4, case 2D: n=4 and n=8 have (h g) non-square (values 2l and l; not listed)",
        "delta in {8,9,10}, case 2D: at n=e the (h g) class loses the factor l",
    };
}

Table5Row table5_row(long e, long delta, long n, const Integer& l, const Integer& q, TableReading reading) {
    Table5Row row;
    auto qmod = [&](long m) { return mod_long(Integer(q % m).get_si(), m); };
    auto set = [&](std::vector<long> fields, std::vector<Integer> values) {
        row.covered = row.matched = true;
        for (long d : fields) row.fields.push_back(Integer(d));
        for (auto& v : values) row.values.push_back(squarefree_class(Rational(v)));
    };
    const Integer L(l);
    const bool fix = reading == TableReading::Corrected;
    auto finish = [&]() {
        if (fix && delta > 6 && n == e) {
            std::size_t k = row.values.size();
            for (std::size_t i = 0; i < k; ++i)
                row.values.push_back(squarefree_class(Rational(row.values[i].value()) * Rational(L)));
        }
        return row;
    };
    if (e == 4) {
        if (fix && n == 4) {
            set({}, {2 * L});
            return finish();
        }
        if (fix && n == 8) {
            set({qmod(8) == 3 ? -2L : 2L}, {L});
            return finish();
        }
        PrimePower f = split_two(n);
        if (f.two != 2 || !f.single || f.p == 1) return row;
        row.covered = true;
        const long p = f.p;
        const long qm = qmod(p);
        if (qm == 1 && fix && p % 4 == 3) set({p_star(p)}, {p * L});
        else if (qm == 1) set({p_star(p)}, {Integer(p)});
        else if (qm == p - 1 && p % 4 == 1) set({p}, {Integer(p)});
        else if (qm == p - 1) set({p}, {p * L});
        return finish();
    }
    if (e != 3 && e != 6) return row;
    const long q8 = qmod(8);
    if (n == 12) {
        if (q8 == 1 || q8 == 5) set({-1}, {2 * L});
        else set({3}, {2 * L});
        return finish();
    }
    if (n % 12 == 0 && power_of_two(n / 12)) {
        switch (q8) {
            case 1: set({-1, 2, -2}, {2 * L}); break;
            case 5: set({-1, 6, -6}, {2 * L}); break;
            case 7: set({2, 3, 6}, {2 * L}); break;
            default: set({-2, -6, 3}, {2 * L}); break;
        }
        return finish();
    }
    if (n % e == 0) {
        PrimePower f = split_two(n / e);
        if (f.two == 0 && f.single && f.p > 3) {
            row.covered = true;
            const long p = f.p;
            const long qm = qmod(p);
            const long p12 = p % 12;
            if (qm == 1) set({p_star(p)}, {Integer(p), p * L});
            else if (qm == p - 1 && (p12 == 1 || p12 == 5)) set({p}, {Integer(p), p * L});
            else if (qm == p - 1 && p12 == 11) set({3 * p}, {p * L});
            else if (qm == p - 1 && p12 == 7) set({3 * p}, {Integer(p)});
            return finish();
        }
    }
    if (e == 3 && (n == 3 || n == 6)) set({}, {L, 2 * L});
    if (e == 6 && n == 6) set({}, {6 * L, 3 * L});
    if (e == 6 && n != 6) {
        PrimePower f = split_two(n);
        if (f.two == 1 && f.p == 3) set({}, {3 * L});
    }
    return finish();
}

namespace {

// returns "" when the row agrees with the tables read as given
std::string table_disagreement(const DifferentialRow& row, const DifferentialResult& res, TableReading reading) {
    const long e = res.e_frak, n = row.n;
    std::string note;
    const bool h_ns = row.exponent % 2 != 0;
    if (h_ns != table_h_nonsquare(e, res.delta, n, reading))
        note += std::string("h non-square set mismatch (computed ") + (h_ns ? "non-square" : "square") + "); ";
    if (res.case_2d && n % e == 0 && !squarefree_class(row.hg_value).is_trivial()) {
        Table5Row t = table5_row(e, res.delta, n, res.q, res.q, reading);
        if (!t.covered) {
            note += "non-square (h g) value for an untabulated n; ";
        } else if (t.matched) {
            std::vector<Integer> got = row.fields, want = t.fields;
            std::sort(got.begin(), got.end());
            std::sort(want.begin(), want.end());
            if (got != want) note += "quadratic subfields differ from the table; ";
            auto cls = squarefree_class(row.hg_value);
            if (std::find(t.values.begin(), t.values.end(), cls) == t.values.end())
                note += "(h g) value " + cls.str() + " differs from the table; ";
        }
    }
    return note;
}

}  // namespace

DifferentialResult appendix_differential_check(long e, long delta, long l, const Integer& q, long r_max) {
    if (std::find(deltas_for(e).begin(), deltas_for(e).end(), delta) == deltas_for(e).end())
        throw InputError("delta " + std::to_string(delta) + " is not compatible with e = " + std::to_string(e));
    DifferentialResult res;
    res.e_frak = e;
    res.delta = delta;
    res.l = l;
    res.q = q;
    const long qm = mod_long(Integer(q % e).get_si(), e);
    if (qm == 1) res.case_2d = false;
    else if (qm == e - 1) res.case_2d = true;
    else throw InputError("q must be +-1 modulo e");
    const long qs = Integer(q % 1000003).get_si();
    for (long n : differential_sample(r_max)) {
        if (n % l == 0) continue;
        // only tame cyclic quotients with 2-power residue degree occur
        if (!power_of_two(mult_order(qs, n))) continue;
        DifferentialRow row;
        row.n = n;
        row.exponent = l_exponent(delta, n).get_si();
        row.h_value = rational_pow(Rational(q), row.exponent);
        row.hg_value = row.h_value * g_value(e, n);
        if (n > 2) row.fields = quadratic_subfields_fixed_by(n, {mod_long(qs, n)});
        const Rational& value = res.case_2d ? row.hg_value : row.h_value;
        for (auto& d : row.fields)
            if (!is_norm_from_quadratic(value, d)) {
                row.norms_ok = false;
                row.note += "not a norm from Q(sqrt " + d.get_str() + "); ";
            }
        std::string fixed = table_disagreement(row, res, TableReading::Corrected);
        row.table_ok = fixed.empty();
        row.note += fixed;
        row.printed_table_ok = table_disagreement(row, res, TableReading::AsPrinted).empty();
        if (!row.printed_table_ok) ++res.printed_mismatches;
        res.pass = res.pass && row.norms_ok && row.table_ok;
        res.rows.push_back(std::move(row));
    }
    return res;
}

const std::vector<long>& admissible_deltas(long e) { return deltas_for(e); }

std::vector<DifferentialRun> differential_runs(const std::vector<long>& e_values, long l_max) {
    std::vector<DifferentialRun> out;
    for (long e : e_values)
        for (long delta : deltas_for(e))
            for (long l = 5; l <= l_max; l += 2) {
                if (!is_small_prime(l)) continue;
                const long r = mod_long(l, e);
                if (r != 1 && r != e - 1) continue;
                out.push_back({e, delta, l, Integer(l)});
                out.push_back({e, delta, l, Integer(l) * l});
            }
    return out;
}

LemmaB3Result lemma_b3_check(const Integer& d, long l_max) {
    LemmaB3Result r;
    r.field = d;
    for (long l = 3; l <= l_max; l += 2) {
        if (!is_small_prime(l) || d % l == 0) continue;
        if (kronecker_symbol(d, Integer(l)) != 1) continue;
        r.primes.push_back(l);
        if (!is_norm_from_quadratic(Rational(l), d)) r.pass = false;
    }
    return r;
}

std::vector<CHatProbe> chat_probes(const Metacyclic& m) {
    std::vector<CHatProbe> out;
    const Group& g = m.group;
    const auto& t = character_table(g);
    const auto& ri = rational_irreducibles(g);
    for (std::size_t i = 0; i < ri.size(); ++i) {
        CHatProbe pr;
        pr.rational_index = i;
        pr.degree = t.degree(ri[i].constituent);
        pr.k = minimal_perm_multiple(ri[i].orbit_sum).k;
        auto quo = quotient_group(g, character_kernel(t.irr[ri[i].constituent]));
        pr.quotient = quo.group.subgroup_classes().back().label;
        const bool abelian = m.spec.sign > 0 || m.spec.e == 2;
        if (abelian || pr.degree == 1) pr.expected = 1;
        else if (m.spec.e == 4) pr.expected = (pr.quotient == "Q8" && ri[i].orbit.size() == 1) ? 2 : 1;
        else if (m.spec.e == 6) pr.expected = (pr.quotient == "D3" || pr.quotient == "D6") ? 1 : 2;
        out.push_back(pr);
    }
    return out;
}

// ---- random models

namespace {

struct TamePair {
    Elem tau;
    Elem sigma;
    long action;  // sigma tau sigma^-1 = tau^action
};

std::vector<TamePair> tame_pairs(const Group& g) {
    std::vector<ElemSet> cyc;
    for (Elem a = 0; a < g.order(); ++a) cyc.push_back(g.closure({a}));
    std::vector<TamePair> out;
    for (Elem t = 0; t < g.order(); ++t)
        for (Elem s = 0; s < g.order(); ++s) {
            if ((cyc[t] & cyc[s]).count() != 1) continue;
            const Elem c = g.conj(t, s);
            if (!cyc[t].test(c)) continue;
            long j = 0;
            for (Elem u = g.identity(); u != c; u = g.mul(u, t)) ++j;
            out.push_back({t, s, j});
        }
    return out;
}

std::vector<long> primes_with(long modulus, long residue, long avoid) {
    std::vector<long> out;
    for (long l = 5; l < 20000 && out.size() < 6; l += 2)
        if (is_small_prime(l) && avoid % l != 0 && mod_long(l - residue, modulus) == 0) out.push_back(l);
    return out;
}

template <class T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& v) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

bool coin(std::mt19937_64& rng) { return std::uniform_int_distribution<int>(0, 1)(rng) == 1; }

std::optional<PlaceDescriptor> random_place(const Group& g, const TamePair& tp, std::mt19937_64& rng,
                                            bool allow_additive, const std::string& name) {
    PlaceDescriptor p;
    p.name = name;
    p.kind = PlaceKind::Finite;
    p.I = g.closure({tp.tau});
    p.D = g.closure({tp.tau, tp.sigma});
    const long o = static_cast<long>(g.elem_order(tp.tau));
    static const std::vector<ReductionType> semistable{ReductionType::Good, ReductionType::SplitMult,
                                                       ReductionType::NonsplitMult};
    static const std::vector<ReductionType> all{ReductionType::Good, ReductionType::SplitMult,
                                                ReductionType::NonsplitMult, ReductionType::AddPotGood,
                                                ReductionType::AddPotMult};
    auto& r = p.reduction;
    r.type = pick(rng, allow_additive ? all : semistable);
    if (r.type == ReductionType::Good || r.type == ReductionType::SplitMult ||
        r.type == ReductionType::NonsplitMult) {
        static const std::vector<long> ls{2, 3, 2, 3, 5, 7, 11, 13};
        p.l = pick(rng, ls);
        p.q = p.l;
        if (coin(rng)) p.q *= p.l;
        r.n = std::uniform_int_distribution<long>(1, 6)(rng);
        return p;
    }
    auto ls = primes_with(o, tp.action, static_cast<long>(g.order()));
    if (ls.empty()) return std::nullopt;
    p.l = pick(rng, ls);
    p.q = p.l;
    p.frobenius = tp.sigma;
    const Integer& q = p.q;
    if (r.type == ReductionType::AddPotGood) {
        std::vector<long> ok;
        for (long d : {2, 3, 4, 6, 8, 9, 10}) {
            if ((d * o) % 12) continue;
            const long ef = 12 / gcd_long(12, d);
            const long qm = mod_long(p.l, ef);
            if (qm == 1 || (qm == ef - 1 && ef > 2)) ok.push_back(d);
        }
        if (ok.empty()) return std::nullopt;
        r.delta = pick(rng, ok);
        if (delta_forces_classes(r.delta)) {
            r.delta_class = {static_cast<int>(r.delta % 2), is_square_mod_q(-3, p.l, q)};
            r.b_class = {static_cast<int>((r.delta / 2) % 2), coin(rng)};
        } else {
            r.delta_class = {static_cast<int>(r.delta % 2), coin(rng)};
            r.b_class = {static_cast<int>(coin(rng)), coin(rng)};
        }
        const long ef = r.e_frak();
        if (ef > 2 && mod_long(p.l, ef) == ef - 1)
            r.d_prime = g.closure({g.pow(tp.tau, ef), g.pow(tp.sigma, 2)});
        return p;
    }
    r.n = std::uniform_int_distribution<long>(1, 4)(rng);
    r.minus_c6_class = {1, coin(rng)};
    r.minus6b_class = r.minus_c6_class;
    r.b_class = {1, r.minus6b_class.unit_is_square == is_square_mod_q(-6, p.l, q)};
    r.delta_class = {static_cast<int>(r.n % 2), coin(rng)};
    return p;
}

}  // namespace

CurveLocalModel random_curve_model(const Group& g, std::uint64_t seed, const RandomModelOptions& opt) {
    std::mt19937_64 rng(seed);
    auto pairs = g.cached("harness.tame_pairs", [&] {
        return std::static_pointer_cast<const void>(std::make_shared<std::vector<TamePair>>(tame_pairs(g)));
    });
    const auto& tp = *std::static_pointer_cast<const std::vector<TamePair>>(pairs);
    CurveLocalModel model;
    model.group = g;
    model.label = g.name() + "#" + std::to_string(seed);
    const std::size_t count = std::uniform_int_distribution<std::size_t>(1, std::max<std::size_t>(1, opt.max_finite_places))(rng);
    for (std::size_t i = 0; i < count; ++i) {
        for (int attempt = 0; attempt < 50; ++attempt) {
            auto p = random_place(g, pick(rng, tp), rng, opt.allow_additive, "v" + std::to_string(i));
            if (p && validate_place(g, *p).empty()) {
                model.places.push_back(std::move(*p));
                break;
            }
        }
    }
    PlaceDescriptor inf;
    inf.name = "inf";
    inf.kind = PlaceKind::Real;
    std::vector<Elem> invol{g.identity()};
    for (Elem a = 0; a < g.order(); ++a)
        if (g.elem_order(a) == 2) invol.push_back(a);
    inf.D = g.closure({pick(rng, invol)});
    model.places.push_back(inf);
    return model;
}

std::vector<Group> sweep_groups() {
    return {dihedral_group(3),        dihedral_group(4),           dihedral_group(5),
            dihedral_group(6),        dihedral_group(7),           quaternion_group(),
            alternating_group(4),     metacyclic_group(3, 2, -1), metacyclic_group(4, 2, -1),
            metacyclic_group(6, 2, -1), symmetric_group(4),        dihedral_group(21)};
}

}  // namespace krel
