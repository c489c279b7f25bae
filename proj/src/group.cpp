#include "krel/group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace krel {

// ---------------------------------------------------------------- ElemSet

std::size_t ElemSet::count() const {
    std::size_t c = 0;
    for (auto w : w_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
}

bool ElemSet::subset_of(const ElemSet& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
        if (w_[i] & ~o.w_[i]) return false;
    return true;
}

std::vector<Elem> ElemSet::elements() const {
    std::vector<Elem> out;
    for (std::size_t i = 0; i < w_.size(); ++i) {
        std::uint64_t w = w_[i];
        while (w) {
            int b = __builtin_ctzll(w);
            out.push_back(static_cast<Elem>(i * 64 + b));
            w &= w - 1;
        }
    }
    return out;
}

ElemSet operator&(const ElemSet& a, const ElemSet& b) {
    ElemSet r(a.n_);
    for (std::size_t i = 0; i < r.w_.size(); ++i) r.w_[i] = a.w_[i] & b.w_[i];
    return r;
}

bool lex_less(const ElemSet& a, const ElemSet& b) {
    auto x = a.elements(), y = b.elements();
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

std::size_t ElemSet::hash() const {
    std::size_t h = 1469598103934665603ULL;
    for (auto w : w_) {
        h ^= static_cast<std::size_t>(w);
        h *= 1099511628211ULL;
        h ^= h >> 29;
    }
    return h;
}

// ---------------------------------------------------------------- cycles

Perm parse_cycles(const std::string& text, std::size_t degree) {
    std::vector<std::vector<std::uint32_t>> cycles;
    std::size_t maxpt = 0;
    std::size_t i = 0;
    auto fail = [&](const std::string& why) { throw InputError("bad cycle notation '" + text + "': " + why); };
    while (i < text.size()) {
        char ch = text[i];
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++i;
            continue;
        }
        if (ch != '(') fail("expected '('");
        ++i;
        std::vector<std::uint32_t> cyc;
        std::string num;
        for (;; ++i) {
            if (i >= text.size()) fail("unterminated cycle");
            char c = text[i];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                num += c;
            } else if (c == ',' || c == ')' || std::isspace(static_cast<unsigned char>(c))) {
                if (!num.empty()) {
                    long v = std::stol(num);
                    if (v < 1) fail("points are numbered from 1");
                    cyc.push_back(static_cast<std::uint32_t>(v - 1));
                    maxpt = std::max<std::size_t>(maxpt, static_cast<std::size_t>(v));
                    num.clear();
                }
                if (c == ')') {
                    ++i;
                    break;
                }
            } else {
                fail(std::string("unexpected character '") + c + "'");
            }
        }
        cycles.push_back(cyc);
    }
    std::size_t n = std::max(degree, maxpt);
    Perm p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<bool> seen(n, false);
    for (auto& cyc : cycles) {
        for (auto x : cyc) {
            if (seen[x]) fail("point repeated");
            seen[x] = true;
        }
        for (std::size_t k = 0; k < cyc.size(); ++k) p[cyc[k]] = cyc[(k + 1) % cyc.size()];
    }
    return p;
}

std::string format_cycles(const Perm& p) {
    std::ostringstream os;
    std::vector<bool> seen(p.size(), false);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i] || p[i] == i) continue;
        os << "(";
        std::size_t j = i;
        bool first = true;
        while (!seen[j]) {
            seen[j] = true;
            if (!first) os << ",";
            first = false;
            os << j + 1;
            j = p[j];
        }
        os << ")";
    }
    std::string s = os.str();
    return s.empty() ? "()" : s;
}

// ---------------------------------------------------------------- GroupData

namespace {

struct PermHash {
    std::size_t operator()(const Perm& p) const {
        std::size_t h = 1469598103934665603ULL;
        for (auto x : p) {
            h ^= x;
            h *= 1099511628211ULL;
        }
        return h;
    }
};

Perm compose(const Perm& a, const Perm& b) {  // a(b(x))
    Perm r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
    return r;
}

}  // namespace

namespace detail {

struct SubgroupLattice {
    std::vector<SubgroupClass> classes;
    std::unordered_map<ElemSet, std::size_t, ElemSetHash> class_of;
    std::vector<std::vector<char>> contained;
};

struct GroupData {
    std::string name;
    std::size_t degree = 0;
    std::vector<Perm> elems;
    std::unordered_map<Perm, Elem, PermHash> index;
    std::vector<Elem> gens;
    std::vector<Elem> table;
    std::vector<Elem> inverse;
    std::vector<std::size_t> order;
    std::size_t exponent = 1;
    std::vector<ConjClass> classes;
    std::vector<std::size_t> class_of;
    std::vector<std::vector<std::size_t>> power;  // power[c][k mod exponent]

    std::once_flag lattice_once;
    std::unique_ptr<SubgroupLattice> lattice;
    std::once_flag table_once;
    std::shared_ptr<const CharacterTable> char_table;
    std::mutex cache_mutex;
    std::map<std::string, std::shared_ptr<const void>> cache;
};

}  // namespace detail

Group Group::from_generators(std::vector<Perm> gens, std::string name, std::size_t order_bound) {
    auto d = std::make_shared<detail::GroupData>();
    d->name = std::move(name);
    std::size_t deg = 0;
    for (auto& g : gens) deg = std::max(deg, g.size());
    if (deg == 0) deg = 1;
    for (auto& g : gens) {
        std::size_t old = g.size();
        g.resize(deg);
        for (std::size_t i = old; i < deg; ++i) g[i] = static_cast<std::uint32_t>(i);
        std::vector<bool> hit(deg, false);
        for (auto x : g) {
            if (x >= deg || hit[x]) throw InputError("generator is not a permutation");
            hit[x] = true;
        }
    }
    d->degree = deg;
    Perm id(deg);
    std::iota(id.begin(), id.end(), 0);
    d->elems.push_back(id);
    d->index.emplace(id, 0);
    for (auto& g : gens) {
        auto it = d->index.find(g);
        if (it == d->index.end()) {
            if (d->elems.size() >= order_bound) throw InputError("group order exceeds bound");
            it = d->index.emplace(g, static_cast<Elem>(d->elems.size())).first;
            d->elems.push_back(g);
        }
        if (it->second != 0 && std::find(d->gens.begin(), d->gens.end(), it->second) == d->gens.end())
            d->gens.push_back(it->second);
    }
    // breadth-first enumeration
    for (std::size_t i = 0; i < d->elems.size(); ++i) {
        for (auto gi : d->gens) {
            Perm p = compose(d->elems[gi], d->elems[i]);
            if (d->index.count(p)) continue;
            if (d->elems.size() >= order_bound)
                throw InputError("group order exceeds bound " + std::to_string(order_bound));
            d->index.emplace(p, static_cast<Elem>(d->elems.size()));
            d->elems.push_back(std::move(p));
        }
    }
    const std::size_t n = d->elems.size();
    d->table.assign(n * n, 0);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) d->table[a * n + b] = d->index.at(compose(d->elems[a], d->elems[b]));
    d->inverse.assign(n, 0);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (d->table[a * n + b] == 0) {
                d->inverse[a] = static_cast<Elem>(b);
                break;
            }
    d->order.assign(n, 1);
    for (std::size_t a = 0; a < n; ++a) {
        Elem x = static_cast<Elem>(a);
        std::size_t k = 1;
        while (x != 0) {
            x = d->table[x * n + a];
            ++k;
        }
        d->order[a] = k;
    }
    d->exponent = 1;
    for (auto o : d->order) d->exponent = std::lcm(d->exponent, o);
    // element classes
    d->class_of.assign(n, SIZE_MAX);
    for (std::size_t a = 0; a < n; ++a) {
        if (d->class_of[a] != SIZE_MAX) continue;
        ConjClass c{static_cast<Elem>(a), {}, d->order[a]};
        std::size_t id = d->classes.size();
        for (std::size_t x = 0; x < n; ++x) {
            Elem y = d->table[d->table[x * n + a] * n + d->inverse[x]];
            if (d->class_of[y] == SIZE_MAX) {
                d->class_of[y] = id;
                c.elements.push_back(y);
            }
        }
        std::sort(c.elements.begin(), c.elements.end());
        d->classes.push_back(std::move(c));
    }
    d->power.assign(d->classes.size(), std::vector<std::size_t>(d->exponent));
    for (std::size_t c = 0; c < d->classes.size(); ++c) {
        Elem x = 0, g = d->classes[c].rep;
        for (std::size_t k = 0; k < d->exponent; ++k) {
            d->power[c][k] = d->class_of[x];
            x = d->table[x * n + g];
        }
    }
    Group G;
    G.d_ = d;
    return G;
}

const std::string& Group::name() const { return d_->name; }
std::size_t Group::order() const { return d_->elems.size(); }
std::size_t Group::degree() const { return d_->degree; }
std::size_t Group::exponent() const { return d_->exponent; }
const std::vector<Perm>& Group::elements() const { return d_->elems; }
const std::vector<Elem>& Group::generators() const { return d_->gens; }

std::optional<Elem> Group::find(const Perm& p) const {
    Perm q = p;
    if (q.size() < d_->degree) {
        std::size_t old = q.size();
        q.resize(d_->degree);
        for (std::size_t i = old; i < q.size(); ++i) q[i] = static_cast<std::uint32_t>(i);
    }
    auto it = d_->index.find(q);
    if (it == d_->index.end()) return std::nullopt;
    return it->second;
}

Elem Group::mul(Elem a, Elem b) const { return d_->table[a * d_->elems.size() + b]; }
Elem Group::inv(Elem a) const { return d_->inverse[a]; }

Elem Group::pow(Elem a, long k) const {
    long o = static_cast<long>(d_->order[a]);
    k = mod_long(k, o);
    Elem r = 0;
    for (long i = 0; i < k; ++i) r = mul(r, a);
    return r;
}

std::size_t Group::elem_order(Elem a) const { return d_->order[a]; }
const std::vector<ConjClass>& Group::classes() const { return d_->classes; }
std::size_t Group::class_of(Elem g) const { return d_->class_of[g]; }

std::size_t Group::power_class(std::size_t c, long k) const {
    return d_->power[c][mod_long(k, static_cast<long>(d_->exponent))];
}

ElemSet Group::whole() const {
    ElemSet s(order());
    for (std::size_t i = 0; i < order(); ++i) s.set(i);
    return s;
}

ElemSet Group::trivial() const {
    ElemSet s(order());
    s.set(0);
    return s;
}

ElemSet Group::closure(const std::vector<Elem>& gens) const {
    ElemSet s(order());
    std::vector<Elem> list{0};
    s.set(0);
    for (std::size_t i = 0; i < list.size(); ++i)
        for (auto g : gens) {
            Elem y = mul(list[i], g);
            if (!s.test(y)) {
                s.set(y);
                list.push_back(y);
            }
        }
    return s;
}

bool Group::is_subgroup(const ElemSet& s) const {
    if (s.universe() != order() || !s.test(0)) return false;
    auto el = s.elements();
    for (auto a : el)
        for (auto b : el)
            if (!s.test(mul(a, b))) return false;
    return true;
}

ElemSet Group::conjugate(const ElemSet& s, Elem x) const {
    ElemSet r(order());
    Elem xi = inv(x);
    for (auto h : s.elements()) r.set(mul(mul(x, h), xi));
    return r;
}

bool Group::is_normal(const ElemSet& s) const {
    for (auto g : generators())
        if (!(conjugate(s, g) == s)) return false;
    return true;
}

std::vector<Elem> Group::generating_set(const ElemSet& s) const {
    std::vector<Elem> gens;
    ElemSet cur = trivial();
    for (auto x : s.elements()) {
        if (cur.test(x)) continue;
        gens.push_back(x);
        cur = closure(gens);
    }
    return gens;
}

ElemSet Group::product(const ElemSet& a, const ElemSet& b) const {
    ElemSet r(order());
    auto ea = a.elements(), eb = b.elements();
    for (auto x : ea)
        for (auto y : eb) r.set(mul(x, y));
    return r;
}

// ---------------------------------------------------------------- subgroups

namespace {

std::string structure_label(const Group& G, const ElemSet& s) {
    auto el = s.elements();
    const std::size_t n = el.size();
    if (n == 1) return "C1";
    std::size_t involutions = 0, maxord = 1;
    for (auto x : el) {
        maxord = std::max(maxord, G.elem_order(x));
        if (G.elem_order(x) == 2) ++involutions;
    }
    if (maxord == n) return "C" + std::to_string(n);
    bool abelian = true;
    for (auto x : el)
        for (auto y : el)
            if (G.mul(x, y) != G.mul(y, x)) abelian = false;
    if (n == 4 && abelian) return "V4";
    if (n % 2 == 0 && maxord == n / 2) {
        // cyclic subgroup of index 2
        Elem r = 0;
        for (auto x : el)
            if (G.elem_order(x) == n / 2) {
                r = x;
                break;
            }
        ElemSet rot = G.closure({r});
        bool dihedral = true;
        for (auto x : el)
            if (!rot.test(x) && G.elem_order(x) != 2) dihedral = false;
        if (dihedral) return "D" + std::to_string(n / 2);
        if (involutions == 1 && !abelian) return n == 8 ? "Q8" : "Dic" + std::to_string(n / 4);
    }
    if (n == 12 && involutions == 3 && maxord == 3) return "A4";
    if (n == 24 && maxord == 4 && !abelian && involutions == 9) return "S4";
    return "H" + std::to_string(n);
}

}  // namespace

const std::vector<SubgroupClass>& Group::subgroup_classes() const {
    std::call_once(d_->lattice_once, [this] {
        auto lat = std::make_unique<detail::SubgroupLattice>();
        const std::size_t n = order();
        struct Found {
            ElemSet set;
            std::vector<Elem> gens;
        };
        std::vector<Found> all;
        std::unordered_map<ElemSet, std::size_t, ElemSetHash> seen;
        std::vector<Elem> cyclic_gens;
        for (std::size_t g = 0; g < n; ++g) {
            std::vector<Elem> gens;
            if (g) gens.push_back(static_cast<Elem>(g));
            ElemSet s = closure(gens);
            if (seen.emplace(s, all.size()).second) {
                all.push_back({s, gens});
                if (g) cyclic_gens.push_back(static_cast<Elem>(g));
            }
        }
        for (std::size_t i = 0; i < all.size(); ++i) {
            for (auto c : cyclic_gens) {
                if (all[i].set.test(c)) continue;
                std::vector<Elem> gens = all[i].gens;
                gens.push_back(c);
                ElemSet s = closure(gens);
                if (seen.emplace(s, all.size()).second) all.push_back({s, gens});
            }
        }
        // conjugacy orbits
        std::vector<std::size_t> cls(all.size(), SIZE_MAX);
        std::vector<std::vector<ElemSet>> orbits;
        for (std::size_t i = 0; i < all.size(); ++i) {
            if (cls[i] != SIZE_MAX) continue;
            std::vector<ElemSet> orbit;
            for (std::size_t x = 0; x < n; ++x) {
                ElemSet c = conjugate(all[i].set, static_cast<Elem>(x));
                std::size_t j = seen.at(c);
                if (cls[j] == SIZE_MAX) {
                    cls[j] = orbits.size();
                    orbit.push_back(c);
                }
            }
            std::sort(orbit.begin(), orbit.end(), lex_less);
            orbits.push_back(std::move(orbit));
        }
        std::vector<std::size_t> perm(orbits.size());
        std::iota(perm.begin(), perm.end(), 0);
        std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
            std::size_t oa = orbits[a][0].count(), ob = orbits[b][0].count();
            if (oa != ob) return oa < ob;
            return lex_less(orbits[a][0], orbits[b][0]);
        });
        std::map<std::string, std::vector<std::size_t>> by_label;
        for (std::size_t id = 0; id < perm.size(); ++id) {
            auto& orb = orbits[perm[id]];
            SubgroupClass sc;
            sc.id = id;
            sc.rep = orb[0];
            sc.order = orb[0].count();
            sc.is_normal = orb.size() == 1;
            sc.is_cyclic = false;
            for (auto x : sc.rep.elements())
                if (elem_order(x) == sc.order) sc.is_cyclic = true;
            sc.conjugates = orb;
            sc.label = structure_label(*this, sc.rep);
            by_label[sc.label].push_back(id);
            for (auto& c : orb) lat->class_of.emplace(c, id);
            lat->classes.push_back(std::move(sc));
        }
        for (auto& [lab, ids] : by_label)
            if (ids.size() > 1)
                for (std::size_t k = 0; k < ids.size(); ++k) {
                    std::string suffix;
                    std::size_t v = k;
                    do {
                        suffix.insert(suffix.begin(), static_cast<char>('a' + v % 26));
                        v /= 26;
                    } while (v);
                    lat->classes[ids[k]].label += suffix;
                }
        const std::size_t m = lat->classes.size();
        lat->contained.assign(m, std::vector<char>(m, 0));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                if (lat->classes[i].order > lat->classes[j].order ||
                    lat->classes[j].order % lat->classes[i].order)
                    continue;
                for (auto& c : lat->classes[i].conjugates)
                    if (c.subset_of(lat->classes[j].rep)) {
                        lat->contained[i][j] = 1;
                        break;
                    }
            }
        d_->lattice = std::move(lat);
    });
    return d_->lattice->classes;
}

std::size_t Group::subgroup_class_of(const ElemSet& s) const {
    subgroup_classes();
    auto it = d_->lattice->class_of.find(s);
    if (it == d_->lattice->class_of.end()) throw InputError("element set is not a subgroup");
    return it->second;
}

bool Group::class_contained(std::size_t i, std::size_t j) const {
    subgroup_classes();
    return d_->lattice->contained[i][j];
}

std::optional<std::size_t> Group::find_subgroup_label(const std::string& label) const {
    const auto& cl = subgroup_classes();
    if (label == "G") return cl.size() - 1;
    if (label == "1") return 0;
    if (!label.empty() && label[0] == '#') {
        std::size_t id = std::stoul(label.substr(1));
        if (id < cl.size()) return id;
        return std::nullopt;
    }
    for (auto& c : cl)
        if (c.label == label) return c.id;
    static const std::map<std::string, std::string> alias{{"S3", "D3"}, {"D2", "V4"}, {"C2xC2", "V4"}};
    auto it = alias.find(label);
    if (it != alias.end()) return find_subgroup_label(it->second);
    return std::nullopt;
}

std::shared_ptr<const CharacterTable> Group::cached_table(
    const std::function<std::shared_ptr<const CharacterTable>(const Group&)>& build) const {
    std::call_once(d_->table_once, [&] { d_->char_table = build(*this); });
    return d_->char_table;
}

std::shared_ptr<const void> Group::cached(const std::string& key,
                                          const std::function<std::shared_ptr<const void>()>& build) const {
    {
        std::lock_guard lock(d_->cache_mutex);
        auto it = d_->cache.find(key);
        if (it != d_->cache.end()) return it->second;
    }
    auto value = build();
    std::lock_guard lock(d_->cache_mutex);
    return d_->cache.emplace(key, std::move(value)).first->second;
}

// ---------------------------------------------------------------- derived groups

Embedded embed_subgroup(const Group& g, const ElemSet& s) {
    if (!g.is_subgroup(s)) throw InputError("embed_subgroup: not a subgroup");
    std::vector<Perm> gens;
    for (auto x : g.generating_set(s)) gens.push_back(g.element(x));
    Embedded e{Group::from_generators(gens, {}, g.order()), {}};
    if (gens.empty()) e.group = Group::from_generators({Perm(g.degree())}, {}, g.order());
    e.to_parent.resize(e.group.order());
    for (std::size_t i = 0; i < e.group.order(); ++i) e.to_parent[i] = *g.find(e.group.element(static_cast<Elem>(i)));
    return e;
}

Quotient quotient_group(const Group& g, const ElemSet& n) {
    if (!g.is_subgroup(n) || !g.is_normal(n)) throw InputError("quotient_group: subgroup is not normal");
    const std::size_t ord = g.order();
    std::vector<std::size_t> coset(ord, SIZE_MAX);
    std::vector<Elem> reps;
    auto nel = n.elements();
    for (std::size_t x = 0; x < ord; ++x) {
        if (coset[x] != SIZE_MAX) continue;
        for (auto h : nel) coset[g.mul(static_cast<Elem>(x), h)] = reps.size();
        reps.push_back(static_cast<Elem>(x));
    }
    auto action = [&](Elem x) {
        Perm p(reps.size());
        for (std::size_t c = 0; c < reps.size(); ++c) p[c] = static_cast<std::uint32_t>(coset[g.mul(x, reps[c])]);
        return p;
    };
    std::vector<Perm> gens;
    for (auto s : g.generators()) gens.push_back(action(s));
    if (gens.empty()) gens.push_back(action(0));
    Quotient q{Group::from_generators(gens, {}, ord), {}};
    q.proj.resize(ord);
    for (std::size_t x = 0; x < ord; ++x) q.proj[x] = *q.group.find(action(static_cast<Elem>(x)));
    return q;
}

std::vector<DoubleCoset> double_cosets(const Group& g, const ElemSet& h, const ElemSet& d) {
    const std::size_t ord = g.order();
    std::vector<std::size_t> coset(ord, SIZE_MAX);
    std::vector<Elem> reps;
    auto del = d.elements();
    for (std::size_t x = 0; x < ord; ++x) {
        if (coset[x] != SIZE_MAX) continue;
        for (auto y : del) coset[g.mul(static_cast<Elem>(x), y)] = reps.size();
        reps.push_back(static_cast<Elem>(x));
    }
    auto hel = h.elements();
    std::vector<bool> done(reps.size(), false);
    std::vector<DoubleCoset> out;
    for (std::size_t c = 0; c < reps.size(); ++c) {
        if (done[c]) continue;
        std::size_t orbit = 0;
        for (auto y : hel) {
            std::size_t t = coset[g.mul(y, reps[c])];
            if (!done[t]) {
                done[t] = true;
                ++orbit;
            }
        }
        out.push_back({reps[c], hel.size() / orbit, orbit * del.size()});
    }
    return out;
}

ElemSet restrict_conjugate(const Group& g, const ElemSet& h, const ElemSet& d, Elem x) {
    ElemSet r(g.order());
    Elem xi = g.inv(x);
    for (auto y : d.elements())
        if (h.test(g.mul(g.mul(x, y), xi))) r.set(y);
    return r;
}

namespace {

Group regular_group(std::size_t n, const std::function<std::size_t(std::size_t, std::size_t)>& mul,
                    const std::vector<std::size_t>& gens, std::string name) {
    std::vector<Perm> perms;
    for (auto s : gens) {
        Perm p(n);
        for (std::size_t x = 0; x < n; ++x) p[x] = static_cast<std::uint32_t>(mul(s, x));
        perms.push_back(p);
    }
    return Group::from_generators(perms, std::move(name), std::max(n, kDefaultOrderBound));
}

}  // namespace

Group cyclic_group(std::size_t n) {
    if (n == 0) throw InputError("cyclic group order must be positive");
    Perm p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<std::uint32_t>((i + 1) % n);
    return Group::from_generators({p}, "C" + std::to_string(n), std::max(n, kDefaultOrderBound));
}

Group dihedral_group(std::size_t n) {
    if (n == 0) throw InputError("dihedral group parameter must be positive");
    std::string name = "D" + std::to_string(n);
    if (n <= 2) {
        // elements r^i s^j encoded as i + n*j
        auto mul = [n](std::size_t a, std::size_t b) {
            std::size_t i = a % n, j = a / n, k = b % n, l = b / n;
            std::size_t ii = j ? (i + n - k) % n : (i + k) % n;
            return ii + n * ((j + l) % 2);
        };
        return regular_group(2 * n, mul, {1 % n, n}, name);
    }
    Perm r(n), s(n);
    for (std::size_t i = 0; i < n; ++i) {
        r[i] = static_cast<std::uint32_t>((i + 1) % n);
        s[i] = static_cast<std::uint32_t>((n - i) % n);
    }
    return Group::from_generators({r, s}, name, std::max(2 * n, kDefaultOrderBound));
}

Group quaternion_group() {
    // x^a y^b with x^4 = 1, y^2 = x^2, y x y^-1 = x^-1; encoded a + 4b
    auto mul = [](std::size_t u, std::size_t v) {
        long a = static_cast<long>(u % 4), b = static_cast<long>(u / 4);
        long c = static_cast<long>(v % 4), d = static_cast<long>(v / 4);
        long e = a + (b ? -c : c);
        long f = b + d;
        if (f == 2) {
            e += 2;
            f = 0;
        }
        return static_cast<std::size_t>(mod_long(e, 4) + 4 * f);
    };
    return regular_group(8, mul, {1, 4}, "Q8");
}

Group symmetric_group(std::size_t n) {
    if (n == 0) throw InputError("symmetric group degree must be positive");
    if (n == 1) return Group::from_generators({Perm{0}}, "S1");
    Perm c(n), t(n);
    for (std::size_t i = 0; i < n; ++i) {
        c[i] = static_cast<std::uint32_t>((i + 1) % n);
        t[i] = static_cast<std::uint32_t>(i);
    }
    std::swap(t[0], t[1]);
    return Group::from_generators({c, t}, "S" + std::to_string(n));
}

Group alternating_group(std::size_t n) {
    if (n == 0) throw InputError("alternating group degree must be positive");
    std::vector<Perm> gens;
    for (std::size_t i = 2; i < n; ++i) {
        Perm p(n);
        std::iota(p.begin(), p.end(), 0);
        p[0] = 1;
        p[1] = static_cast<std::uint32_t>(i);
        p[i] = 0;
        gens.push_back(p);
    }
    if (gens.empty()) {
        Perm id(n);
        std::iota(id.begin(), id.end(), 0);
        gens.push_back(id);
    }
    return Group::from_generators(gens, "A" + std::to_string(n));
}

Group metacyclic_group(std::size_t e, std::size_t k, int sign) {
    if (e == 0) throw InputError("metacyclic: e must be positive");
    if (sign != 1 && sign != -1) throw InputError("metacyclic: sign must be +1 or -1");
    const std::size_t m = std::size_t(1) << k;
    if (m == 1 && sign == -1 && e > 2) throw InputError("metacyclic: inverting action needs k >= 1");
    // x^a y^b encoded a + e*b
    auto mul = [e, m, sign](std::size_t u, std::size_t v) {
        long a = static_cast<long>(u % e), b = static_cast<long>(u / e);
        long c = static_cast<long>(v % e), d = static_cast<long>(v / e);
        long s = (sign == -1 && (b % 2)) ? -1 : 1;
        return static_cast<std::size_t>(mod_long(a + s * c, static_cast<long>(e)) +
                                        e * static_cast<std::size_t>(mod_long(b + d, static_cast<long>(m))));
    };
    std::vector<std::size_t> gens{1 % e};
    if (m > 1) gens.push_back(e);
    std::string name = "C" + std::to_string(e) + (sign < 0 ? ":-" : ":+") + "C" + std::to_string(m);
    return regular_group(e * m, mul, gens, name);
}

}  // namespace krel
