#include "krel/relations.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace krel {

// ---------------------------------------------------------------- BurnsideElt

BurnsideElt::BurnsideElt(Group g) : group(std::move(g)), coeff(group.subgroup_classes().size(), 0) {}

BurnsideElt BurnsideElt::of_class(const Group& g, std::size_t cls, long n) {
    BurnsideElt b(g);
    b.coeff.at(cls) = n;
    return b;
}

BurnsideElt BurnsideElt::from_vector(const Group& g, const IntVector& v) {
    BurnsideElt b(g);
    if (v.size() != b.coeff.size()) throw InputError("Burnside vector has wrong length");
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].fits_slong_p()) throw MathError("Burnside coefficient overflow");
        b.coeff[i] = v[i].get_si();
    }
    return b;
}

bool BurnsideElt::is_zero() const {
    return std::all_of(coeff.begin(), coeff.end(), [](long c) { return c == 0; });
}

IntVector BurnsideElt::to_vector() const {
    IntVector v;
    for (long c : coeff) v.emplace_back(c);
    return v;
}

std::vector<std::pair<std::string, long>> BurnsideElt::terms() const {
    std::vector<std::pair<std::string, long>> out;
    const auto& cl = group.subgroup_classes();
    for (std::size_t i = 0; i < coeff.size(); ++i)
        if (coeff[i] != 0) out.emplace_back(cl[i].label, coeff[i]);
    return out;
}

std::pair<std::vector<std::pair<std::string, long>>, std::vector<std::pair<std::string, long>>>
BurnsideElt::split() const {
    std::pair<std::vector<std::pair<std::string, long>>, std::vector<std::pair<std::string, long>>> out;
    for (auto& [l, c] : terms()) {
        if (c > 0) out.first.emplace_back(l, c);
        else out.second.emplace_back(l, -c);
    }
    return out;
}

std::string BurnsideElt::str() const {
    auto t = terms();
    if (t.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [label, c] : t) {
        long a = c < 0 ? -c : c;
        if (first) os << (c < 0 ? "-" : "");
        else os << (c < 0 ? " - " : " + ");
        if (a != 1) os << a << "*";
        os << label;
        first = false;
    }
    return os.str();
}

BurnsideElt& BurnsideElt::operator+=(const BurnsideElt& o) {
    if (!(group == o.group)) throw InputError("Burnside elements over different groups");
    for (std::size_t i = 0; i < coeff.size(); ++i) coeff[i] += o.coeff[i];
    return *this;
}

BurnsideElt& BurnsideElt::operator-=(const BurnsideElt& o) {
    if (!(group == o.group)) throw InputError("Burnside elements over different groups");
    for (std::size_t i = 0; i < coeff.size(); ++i) coeff[i] -= o.coeff[i];
    return *this;
}

BurnsideElt& BurnsideElt::operator*=(long k) {
    for (auto& c : coeff) c *= k;
    return *this;
}

bool operator==(const BurnsideElt& a, const BurnsideElt& b) { return a.group == b.group && a.coeff == b.coeff; }

BurnsideElt parse_burnside(const Group& g, const std::string& text) {
    BurnsideElt out(g);
    std::size_t i = 0;
    const std::size_t n = text.size();
    auto skip = [&] {
        while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip();
    if (i < n && text.compare(i, std::string::npos, "0") == 0) return out;
    bool any = false;
    while (true) {
        skip();
        if (i >= n) break;
        long sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
            skip();
        } else if (any) {
            throw InputError("expected '+' or '-' in Burnside element near position " + std::to_string(i));
        }
        long c = 1;
        if (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
            std::size_t j = i;
            while (j < n && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            std::size_t k = j;
            while (k < n && std::isspace(static_cast<unsigned char>(text[k]))) ++k;
            if (k < n && text[k] == '*') {
                c = std::stol(text.substr(i, j - i));
                i = k + 1;
                skip();
            } else if (k < n && std::isalpha(static_cast<unsigned char>(text[k]))) {
                c = std::stol(text.substr(i, j - i));
                i = k;
            }
        }
        std::size_t j = i;
        while (j < n && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '#' || text[j] == '_')) ++j;
        if (j == i) throw InputError("expected subgroup label in Burnside element near position " + std::to_string(i));
        std::string label = text.substr(i, j - i);
        auto cls = g.find_subgroup_label(label);
        if (!cls) throw InputError("unknown subgroup label '" + label + "'");
        out.coeff[*cls] += sign * c;
        i = j;
        any = true;
    }
    if (!any) throw InputError("empty Burnside element");
    return out;
}

// ---------------------------------------------------------------- permutation characters

const IntMatrix& perm_character_matrix(const Group& g) {
    auto p = g.cached("perm_matrix", [&]() -> std::shared_ptr<const void> {
        const auto& cls = g.classes();
        const auto& sub = g.subgroup_classes();
        auto m = std::make_shared<IntMatrix>(cls.size(), sub.size());
        for (std::size_t j = 0; j < sub.size(); ++j) {
            for (std::size_t c = 0; c < cls.size(); ++c) {
                std::size_t hits = 0;
                for (auto x : cls[c].elements)
                    if (sub[j].rep.test(x)) ++hits;
                (*m)(c, j) = Integer(static_cast<unsigned long>(g.centralizer_order(c) * hits / sub[j].order));
            }
        }
        return m;
    });
    return *static_cast<const IntMatrix*>(p.get());
}

ClassFunction perm_character(const BurnsideElt& theta) {
    const auto& m = perm_character_matrix(theta.group);
    std::vector<Rational> v(m.rows(), Rational(0));
    for (std::size_t c = 0; c < m.rows(); ++c)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (theta.coeff[j] != 0) v[c] += Rational(m(c, j) * theta.coeff[j]);
    return ClassFunction::rational(theta.group, v);
}

Rational multiplicity(const BurnsideElt& theta, const ClassFunction& chi) {
    return inner_product(perm_character(theta), chi);
}

namespace {

// multiplicity of irr[a] in the permutation character of subgroup class j
const std::vector<std::vector<long>>& perm_multiplicities(const Group& g) {
    auto p = g.cached("perm_mult", [&]() -> std::shared_ptr<const void> {
        const auto& t = character_table(g);
        const auto& sub = g.subgroup_classes();
        auto out = std::make_shared<std::vector<std::vector<long>>>(t.size(), std::vector<long>(sub.size()));
        for (std::size_t j = 0; j < sub.size(); ++j) {
            auto pc = perm_character(g, j);
            for (std::size_t a = 0; a < t.size(); ++a) {
                Rational r = inner_product(pc, t.irr[a]);
                if (r.get_den() != 1) throw MathError("non-integral permutation multiplicity");
                (*out)[a][j] = r.get_num().get_si();
            }
        }
        return out;
    });
    return *static_cast<const std::vector<std::vector<long>>*>(p.get());
}

std::vector<Elem> parent_to_sub(const Group& g, const Embedded& h) {
    std::vector<Elem> m(g.order(), static_cast<Elem>(-1));
    for (std::size_t i = 0; i < h.to_parent.size(); ++i) m[h.to_parent[i]] = static_cast<Elem>(i);
    return m;
}

}  // namespace

// ---------------------------------------------------------------- Burnside maps

BurnsideElt restrict_to(const BurnsideElt& theta, const Embedded& h) {
    const Group& g = theta.group;
    auto back = parent_to_sub(g, h);
    ElemSet hs(g.order());
    for (auto x : h.to_parent) hs.set(x);
    BurnsideElt out(h.group);
    const auto& sub = g.subgroup_classes();
    for (std::size_t j = 0; j < theta.coeff.size(); ++j) {
        if (theta.coeff[j] == 0) continue;
        for (auto& dc : double_cosets(g, hs, sub[j].rep)) {
            ElemSet inter = hs & g.conjugate(sub[j].rep, dc.rep);
            ElemSet local(h.group.order());
            for (auto x : inter.elements()) local.set(back[x]);
            out.coeff[h.group.subgroup_class_of(local)] += theta.coeff[j];
        }
    }
    return out;
}

BurnsideElt induce_from(const BurnsideElt& theta, const Group& g, const Embedded& h) {
    BurnsideElt out(g);
    const auto& sub = h.group.subgroup_classes();
    for (std::size_t j = 0; j < theta.coeff.size(); ++j) {
        if (theta.coeff[j] == 0) continue;
        ElemSet s(g.order());
        for (auto x : sub[j].rep.elements()) s.set(h.to_parent[x]);
        out.coeff[g.subgroup_class_of(s)] += theta.coeff[j];
    }
    return out;
}

BurnsideElt project_to(const BurnsideElt& theta, const Quotient& q) {
    BurnsideElt out(q.group);
    const auto& sub = theta.group.subgroup_classes();
    for (std::size_t j = 0; j < theta.coeff.size(); ++j) {
        if (theta.coeff[j] == 0) continue;
        ElemSet s(q.group.order());
        for (auto x : sub[j].rep.elements()) s.set(q.proj[x]);
        out.coeff[q.group.subgroup_class_of(s)] += theta.coeff[j];
    }
    return out;
}

BurnsideElt inflate_from(const BurnsideElt& theta, const Group& g, const Quotient& q) {
    BurnsideElt out(g);
    const auto& sub = q.group.subgroup_classes();
    for (std::size_t j = 0; j < theta.coeff.size(); ++j) {
        if (theta.coeff[j] == 0) continue;
        ElemSet s(g.order());
        for (std::size_t x = 0; x < g.order(); ++x)
            if (sub[j].rep.test(q.proj[x])) s.set(x);
        out.coeff[g.subgroup_class_of(s)] += theta.coeff[j];
    }
    return out;
}

// ---------------------------------------------------------------- cyclic relations

BurnsideElt psi_d(const Group& cyclic, long d) {
    const long n = static_cast<long>(cyclic.order());
    if (d <= 0 || n % d != 0) throw InputError("psi_d: d must divide n");
    if (cyclic.exponent() != cyclic.order()) throw InputError("psi_d: group is not cyclic");
    BurnsideElt out(cyclic);
    const auto& sub = cyclic.subgroup_classes();
    for (long dp : divisors(d)) {
        int mu = moebius(d / dp);
        if (mu == 0) continue;
        auto want = static_cast<std::size_t>(n / dp);
        for (auto& c : sub)
            if (c.order == want) out.coeff[c.id] += mu;
    }
    return out;
}

BurnsideElt psi_d(long n, long d) {
    if (n <= 0) throw InputError("psi_d: n must be positive");
    if (d <= 0 || n % d != 0) throw InputError("psi_d: d must divide n");
    return psi_d(cyclic_group(static_cast<std::size_t>(n)), d);
}

bool is_brauer_relation(const BurnsideElt& theta) {
    const auto& m = perm_character_matrix(theta.group);
    for (std::size_t c = 0; c < m.rows(); ++c) {
        Integer s = 0;
        for (std::size_t j = 0; j < m.cols(); ++j) s += m(c, j) * theta.coeff[j];
        if (s != 0) return false;
    }
    return true;
}

// ---------------------------------------------------------------- lattices

namespace {

std::vector<IntVector> kernel_basis(const IntMatrix& a) {
    auto snf = smith_normal_form(a);
    std::vector<IntVector> out;
    for (std::size_t j = snf.rank; j < a.cols(); ++j) out.push_back(snf.V.col(j));
    return out;
}

std::vector<BurnsideElt> to_elements(const Group& g, std::vector<IntVector> rows) {
    lll_reduce(rows);
    std::vector<BurnsideElt> out;
    for (auto& r : rows) {
        // first nonzero coefficient positive
        for (auto& x : r)
            if (x != 0) {
                if (x < 0)
                    for (auto& y : r) y = -y;
                break;
            }
        out.push_back(BurnsideElt::from_vector(g, r));
    }
    return out;
}

}  // namespace

KRelationLattice brauer_basis(const Group& g) {
    auto p = g.cached("brauer_basis", [&]() -> std::shared_ptr<const void> {
        const auto& m = perm_character_matrix(g);
        auto ker = kernel_basis(m);
        auto rows = lattice_basis(ker, m.cols());
        auto lat = std::make_shared<KRelationLattice>();
        lat->group = g;
        lat->basis = to_elements(g, rows);
        return lat;
    });
    return *static_cast<const KRelationLattice*>(p.get());
}

std::vector<int> degree_factors(const Group& g, const Integer& d) {
    if (d == 1 || !is_squarefree(d)) throw InputError("quadratic field parameter must be squarefree and not 1");
    auto p = g.cached("degfac:" + d.get_str(), [&]() -> std::shared_ptr<const void> {
        const auto& t = character_table(g);
        auto out = std::make_shared<std::vector<int>>(t.size(), 2);
        for (std::size_t a = 0; a < t.size(); ++a) {
            std::size_t rep = t.rational[t.orbit_id[a]].constituent;
            if (rep == a) (*out)[a] = char_field_data(t.irr[a]).degree_factor(d);
        }
        for (std::size_t a = 0; a < t.size(); ++a) (*out)[a] = (*out)[t.rational[t.orbit_id[a]].constituent];
        return out;
    });
    return *static_cast<const std::vector<int>*>(p.get());
}

bool is_k_relation(const BurnsideElt& theta, const Integer& d) {
    const Group& g = theta.group;
    auto fac = degree_factors(g, d);
    const auto& mult = perm_multiplicities(g);
    for (std::size_t a = 0; a < fac.size(); ++a) {
        if (fac[a] == 1) continue;
        long s = 0;
        for (std::size_t j = 0; j < theta.coeff.size(); ++j) s += mult[a][j] * theta.coeff[j];
        if (s % fac[a] != 0) return false;
    }
    return true;
}

KRelationLattice k_relation_basis(const Group& g, const Integer& d) {
    auto fac = degree_factors(g, d);
    auto p = g.cached("krel_basis:" + d.get_str(), [&]() -> std::shared_ptr<const void> {
        const auto& t = character_table(g);
        const auto& mult = perm_multiplicities(g);
        const std::size_t s = g.subgroup_classes().size();
        std::vector<std::size_t> rows;
        for (auto& ri : t.rational)
            if (fac[ri.constituent] == 2) rows.push_back(ri.constituent);
        std::vector<IntVector> gens;
        if (rows.empty()) {
            for (std::size_t j = 0; j < s; ++j) {
                IntVector v(s, 0);
                v[j] = 1;
                gens.push_back(v);
            }
        } else {
            const std::size_t r = rows.size();
            IntMatrix a(r, s + r);
            for (std::size_t i = 0; i < r; ++i) {
                for (std::size_t j = 0; j < s; ++j) a(i, j) = mult[rows[i]][j];
                a(i, s + i) = 2;
            }
            for (auto& k : kernel_basis(a)) gens.emplace_back(k.begin(), k.begin() + static_cast<long>(s));
        }
        auto basis = lattice_basis(gens, s);
        if (basis.size() != s) throw MathError("K-relation lattice is not of full rank");
        auto lat = std::make_shared<KRelationLattice>();
        lat->group = g;
        lat->field = d;
        lat->basis = to_elements(g, basis);
        return lat;
    });
    return *static_cast<const KRelationLattice*>(p.get());
}

// ---------------------------------------------------------------- norm relations

NormRelation find_perm_expansion(const Group& g, const std::vector<Rational>& values) {
    const auto& m = perm_character_matrix(g);
    if (values.size() != m.rows()) throw InputError("character has wrong number of values");
    IntVector t;
    for (auto& v : values) {
        if (v.get_den() != 1) throw InputError("character values must be rational integers");
        t.push_back(v.get_num());
    }
    auto sol = snf_solve(m, t);
    auto lat = brauer_basis(g);
    std::vector<IntVector> b;
    for (auto& x : lat.basis) b.push_back(x.to_vector());
    IntVector w = b.empty() ? sol.witness : reduce_modulo_lattice(sol.witness, b);
    if (!sol.multiple.fits_slong_p()) throw MathError("norm relation multiple overflow");
    return NormRelation{sol.multiple.get_si(), BurnsideElt::from_vector(g, w)};
}

NormRelation find_norm_relation(const Group& g, std::size_t chi) {
    const auto& t = character_table(g);
    if (chi >= t.size()) throw InputError("character index out of range");
    const auto& orbit = t.rational[t.orbit_id[chi]].orbit_sum;
    return find_perm_expansion(g, orbit.rational_values());
}

// ---------------------------------------------------------------- local functions

LocalPsi LocalPsi::constant(const Rational& a) {
    if (a == 0) throw InputError("local function constant must be nonzero");
    LocalPsi p;
    p.kind_ = Kind::Const;
    p.a_ = a;
    return p;
}

LocalPsi LocalPsi::e() {
    LocalPsi p;
    p.kind_ = Kind::E;
    return p;
}

LocalPsi LocalPsi::f() {
    LocalPsi p;
    p.kind_ = Kind::F;
    return p;
}

LocalPsi LocalPsi::ef() {
    LocalPsi p;
    p.kind_ = Kind::EF;
    return p;
}

LocalPsi LocalPsi::pow_floor(const Integer& base, long delta) {
    if (base == 0) throw InputError("local function base must be nonzero");
    LocalPsi p;
    p.kind_ = Kind::PowFloor;
    p.base_ = base;
    p.n_ = delta;
    return p;
}

LocalPsi LocalPsi::pow_half(const Integer& base) {
    if (base == 0) throw InputError("local function base must be nonzero");
    LocalPsi p;
    p.kind_ = Kind::PowHalf;
    p.base_ = base;
    return p;
}

LocalPsi LocalPsi::cond_divides(long k, const Rational& alpha, const Rational& beta) {
    if (k <= 0) throw InputError("divisibility modulus must be positive");
    if (alpha == 0 || beta == 0) throw InputError("local function values must be nonzero");
    LocalPsi p;
    p.kind_ = Kind::CondDivides;
    p.n_ = k;
    p.a_ = alpha;
    p.b_ = beta;
    return p;
}

LocalPsi LocalPsi::product(std::vector<LocalPsi> factors) {
    LocalPsi p;
    p.kind_ = Kind::Product;
    p.parts_ = std::move(factors);
    return p;
}

LocalPsi LocalPsi::custom(std::function<Rational(long, long)> fn, std::string name) {
    LocalPsi p;
    p.kind_ = Kind::Custom;
    p.fn_ = std::make_shared<std::function<Rational(long, long)>>(std::move(fn));
    p.name_ = std::move(name);
    return p;
}

Rational LocalPsi::operator()(long e, long f) const {
    switch (kind_) {
        case Kind::Const: return a_;
        case Kind::E: return Rational(e);
        case Kind::F: return Rational(f);
        case Kind::EF: return Rational(e * f);
        case Kind::PowFloor: return rational_pow(Rational(base_), (n_ * e / 12) * f);
        case Kind::PowHalf: return rational_pow(Rational(base_), (e / 2) * f);
        case Kind::CondDivides: return f % n_ == 0 ? a_ : b_;
        case Kind::Product: {
            Rational r = 1;
            for (auto& p : parts_) r *= p(e, f);
            return r;
        }
        case Kind::Custom: return (*fn_)(e, f);
    }
    return 1;
}

std::string LocalPsi::str() const {
    switch (kind_) {
        case Kind::Const: return to_string(a_);
        case Kind::E: return "e";
        case Kind::F: return "f";
        case Kind::EF: return "ef";
        case Kind::PowFloor: return base_.get_str() + "^(floor(" + std::to_string(n_) + "e/12)f)";
        case Kind::PowHalf: return base_.get_str() + "^(floor(e/2)f)";
        case Kind::CondDivides:
            return "(" + to_string(a_) + " if " + std::to_string(n_) + "|f else " + to_string(b_) + ")";
        case Kind::Product: {
            std::string s;
            for (std::size_t i = 0; i < parts_.size(); ++i) s += (i ? "*" : "") + parts_[i].str();
            return s.empty() ? "1" : s;
        }
        case Kind::Custom: return name_;
    }
    return "?";
}

void validate_localfn(const Group& g, const LocalFn& fn) {
    if (!g.is_subgroup(fn.D)) throw InputError("local function: D is not a subgroup");
    if (!g.is_subgroup(fn.I) || !fn.I.subset_of(fn.D)) throw InputError("local function: I is not a subgroup of D");
    for (auto d : fn.D.elements())
        if (!(g.conjugate(fn.I, d) == fn.I)) throw InputError("local function: I is not normal in D");
    auto igens = g.generating_set(fn.I);
    const std::size_t need = fn.D.count();
    bool cyclic = false;
    for (auto d : fn.D.elements()) {
        auto gens = igens;
        gens.push_back(d);
        if (g.closure(gens).count() == need) {
            cyclic = true;
            break;
        }
    }
    if (!cyclic) throw InputError("local function: D/I is not cyclic");
}

Rational eval_localfn(const Group& g, const LocalFn& fn, const ElemSet& h) {
    Rational r = 1;
    const long di = static_cast<long>(fn.D.count());
    const long ii = static_cast<long>(fn.I.count());
    for (auto& dc : double_cosets(g, h, fn.D)) {
        ElemSet u = restrict_conjugate(g, h, fn.D, dc.rep);
        long ui = static_cast<long>((u & fn.I).count());
        long uo = static_cast<long>(u.count());
        long e = ii / ui;
        long f = di * ui / (uo * ii);
        r *= fn.psi(e, f);
    }
    return r;
}

Rational eval_localfn(const Group& g, const LocalFn& fn, std::size_t subgroup_class) {
    return eval_localfn(g, fn, g.subgroup_classes().at(subgroup_class).rep);
}

SubgroupFunction tabulate(const Group& g, const LocalFn& fn) {
    SubgroupFunction out;
    for (auto& c : g.subgroup_classes()) out.push_back(eval_localfn(g, fn, c.rep));
    return out;
}

Rational evaluate(const SubgroupFunction& fn, const BurnsideElt& theta) {
    if (fn.size() != theta.coeff.size()) throw InputError("function and Burnside element disagree in length");
    Rational r = 1;
    for (std::size_t j = 0; j < fn.size(); ++j)
        if (theta.coeff[j] != 0) r *= rational_pow(fn[j], theta.coeff[j]);
    return r;
}

Rational eval_localfn(const LocalFn& fn, const BurnsideElt& theta) {
    Rational r = 1;
    const auto& sub = theta.group.subgroup_classes();
    for (std::size_t j = 0; j < theta.coeff.size(); ++j)
        if (theta.coeff[j] != 0) r *= rational_pow(eval_localfn(theta.group, fn, sub[j].rep), theta.coeff[j]);
    return r;
}

TrivialityResult is_trivial_on_k_relations(const SubgroupFunction& fn, const Group& g, const Integer& d) {
    TrivialityResult res;
    for (auto& b : k_relation_basis(g, d).basis) {
        Rational v = evaluate(fn, b);
        if (!is_norm_from_quadratic(v, d)) {
            res.trivial = false;
            res.certificate = b;
            res.value = v;
            return res;
        }
    }
    return res;
}

TrivialityResult is_trivial_on_k_relations(const LocalFn& fn, const Group& g, const Integer& d) {
    validate_localfn(g, fn);
    return is_trivial_on_k_relations(tabulate(g, fn), g, d);
}

}  // namespace krel
