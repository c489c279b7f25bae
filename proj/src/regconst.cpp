#include "krel/regconst.hpp"

#include <deque>
#include <random>

namespace krel {

RegConstValue RegConstValue::make(const Rational& raw, const Integer& d) {
    if (raw == 0) throw MathError("regulator constant vanished");
    RegConstValue v;
    v.raw = raw;
    v.square_class = squarefree_class(raw);
    v.norm_context = d;
    return v;
}

bool RegConstValue::equivalent(const RegConstValue& o) const {
    if (norm_context != o.norm_context) throw InputError("regulator constants over different fields");
    if (norm_context == 0) return square_class == o.square_class;
    return norm_equivalent(raw, o.raw, norm_context);
}

Rational perm_fixed_det(const Group& g, const ElemSet& h, const ElemSet& d) {
    Rational r = 1;
    for (auto& dc : double_cosets(g, h, d)) r /= Rational(static_cast<long>(dc.intersection_order));
    return r;
}

Rational perm_fixed_det(const Group& g, std::size_t h_class, std::size_t d_class) {
    const auto& sub = g.subgroup_classes();
    return perm_fixed_det(g, sub.at(h_class).rep, sub.at(d_class).rep);
}

namespace {

void require_k_relation(const BurnsideElt& theta, const Integer& d) {
    if (!is_k_relation(theta, d))
        throw InputError("relation " + theta.str() + " is not a K-relation for Q(sqrt " + d.get_str() + ")");
}

}  // namespace

RegConstValue reg_const_perm(const BurnsideElt& theta, const PermVirtualRep& tau, const Integer& d) {
    require_k_relation(theta, d);
    if (!(theta.group == tau.group)) throw InputError("relation and representation over different groups");
    const Group& g = theta.group;
    Rational r = 1;
    for (std::size_t i = 0; i < theta.coeff.size(); ++i) {
        if (theta.coeff[i] == 0) continue;
        for (std::size_t j = 0; j < tau.coeff.size(); ++j) {
            if (tau.coeff[j] == 0) continue;
            r *= rational_pow(perm_fixed_det(g, i, j), theta.coeff[i] * tau.coeff[j]);
        }
    }
    return RegConstValue::make(r, d);
}

PermMultiple minimal_perm_multiple(const ClassFunction& tau) {
    if (!tau.is_rational()) throw InputError("minimal_perm_multiple needs a rational-valued character");
    auto nr = find_perm_expansion(tau.group(), tau.rational_values());
    return PermMultiple{nr.multiple, nr.theta};
}

RegConstValue reg_const_rational_irr(const BurnsideElt& theta, std::size_t rational_index, const Integer& d) {
    require_k_relation(theta, d);
    const Group& g = theta.group;
    const auto& ri = rational_irreducibles(g).at(rational_index);
    auto pm = minimal_perm_multiple(ri.orbit_sum);
    if (pm.k % 2 == 1) return reg_const_perm(theta, pm.expansion, d);
    if (fs_indicator(character_table(g).irr[ri.constituent]) <= 0) return RegConstValue::make(1, d);
    throw NeedsMatrixModel("rational irreducible " + std::to_string(rational_index) +
                           " has even order in C-hat(G) and orthogonal constituents; supply a matrix model");
}

// ---------------------------------------------------------------- matrix models

MatrixRep MatrixRep::make(const Group& g, std::vector<RatMatrix> generator_images) {
    const auto& gens = g.generators();
    if (generator_images.size() != gens.size())
        throw InputError("matrix model needs one image per group generator (" + std::to_string(gens.size()) + ")");
    MatrixRep rep;
    rep.group = g;
    rep.dim = generator_images.empty() ? 0 : generator_images[0].rows();
    for (auto& m : generator_images)
        if (m.rows() != rep.dim || m.cols() != rep.dim) throw InputError("matrix model images must be square of equal size");
    rep.gens = std::move(generator_images);
    if (gens.empty()) {
        rep.images.assign(g.order(), RatMatrix::identity(rep.dim));
        return rep;
    }
    std::vector<bool> seen(g.order(), false);
    rep.images.assign(g.order(), RatMatrix());
    rep.images[0] = RatMatrix::identity(rep.dim);
    seen[0] = true;
    std::deque<Elem> queue{0};
    while (!queue.empty()) {
        Elem x = queue.front();
        queue.pop_front();
        for (std::size_t s = 0; s < gens.size(); ++s) {
            Elem y = g.mul(gens[s], x);
            RatMatrix m = rep.gens[s] * rep.images[x];
            if (!seen[y]) {
                seen[y] = true;
                rep.images[y] = std::move(m);
                queue.push_back(y);
            } else if (!(rep.images[y] == m)) {
                throw InputError("matrix model does not satisfy the group relations");
            }
        }
    }
    return rep;
}

ClassFunction MatrixRep::character() const {
    std::vector<Rational> v;
    for (auto& c : group.classes()) {
        Rational t = 0;
        for (std::size_t i = 0; i < dim; ++i) t += images[c.rep](i, i);
        v.push_back(t);
    }
    return ClassFunction::rational(group, v);
}

namespace {

// cosets of D as element lists, with a lookup from elements to coset index
struct Cosets {
    std::vector<std::size_t> of;
    std::size_t count = 0;
};

Cosets left_cosets(const Group& g, const ElemSet& d) {
    Cosets c;
    c.of.assign(g.order(), SIZE_MAX);
    auto del = d.elements();
    for (Elem x = 0; x < g.order(); ++x) {
        if (c.of[x] != SIZE_MAX) continue;
        for (auto y : del) c.of[g.mul(x, y)] = c.count;
        ++c.count;
    }
    return c;
}

}  // namespace

MatrixRep permutation_rep(const Group& g, const ElemSet& d) {
    auto c = left_cosets(g, d);
    std::vector<Elem> rep_of(c.count);
    for (Elem x = static_cast<Elem>(g.order()); x-- > 0;) rep_of[c.of[x]] = x;
    std::vector<RatMatrix> gens;
    for (auto s : g.generators()) {
        RatMatrix m(c.count, c.count);
        for (std::size_t i = 0; i < c.count; ++i) m(c.of[g.mul(s, rep_of[i])], i) = 1;
        gens.push_back(std::move(m));
    }
    return MatrixRep::make(g, std::move(gens));
}

MatrixRep augmentation_kernel_rep(const Group& g, const ElemSet& d) {
    auto p = permutation_rep(g, d);
    const std::size_t n = p.dim;
    if (n < 2) throw InputError("augmentation kernel of a one-point set is zero");
    std::vector<RatMatrix> gens;
    for (auto& m : p.gens) {
        // image of e_i - e_last is e_a - e_b with v_last = 0
        std::size_t last_img = 0;
        for (std::size_t r = 0; r < n; ++r)
            if (m(r, n - 1) != 0) last_img = r;
        RatMatrix k(n - 1, n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            std::size_t a = 0;
            for (std::size_t r = 0; r < n; ++r)
                if (m(r, i) != 0) a = r;
            if (a != n - 1) k(a, i) += 1;
            if (last_img != n - 1) k(last_img, i) -= 1;
        }
        gens.push_back(std::move(k));
    }
    return MatrixRep::make(g, std::move(gens));
}

void validate_pairing(const MatrixRep& rep, const RatMatrix& s) {
    if (s.rows() != rep.dim || s.cols() != rep.dim) throw InputError("pairing has wrong size");
    if (!(s == s.transpose())) throw InputError("pairing is not symmetric");
    for (auto& m : rep.gens)
        if (!(m.transpose() * s * m == s)) throw InputError("pairing is not G-invariant");
    if (determinant(s) == 0) throw InputError("pairing is degenerate");
}

RatMatrix random_invariant_pairing(const MatrixRep& rep, std::uint64_t seed, int attempts) {
    std::mt19937_64 rng(seed);
    const std::size_t n = rep.dim;
    for (int t = 0; t < attempts; ++t) {
        RatMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                long v = static_cast<long>(rng() % 7) - 3;
                m(i, j) = v;
                m(j, i) = v;
            }
        RatMatrix s(n, n);
        for (auto& a : rep.images) {
            RatMatrix term = a.transpose() * m * a;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) s(i, j) += term(i, j);
        }
        if (determinant(s) != 0) return s;
    }
    throw MathError("no non-degenerate invariant pairing found after " + std::to_string(attempts) + " seeds");
}

namespace {

Rational fixed_gram_det_impl(const MatrixRep& rep, const RatMatrix& pairing, const ElemSet& h,
                             const RatMatrix* projector) {
    const std::size_t n = rep.dim;
    RatMatrix proj(n, n);
    auto el = h.elements();
    for (auto x : el)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) proj(i, j) += rep.images[x](i, j);
    if (projector) proj = *projector * proj;
    auto basis = column_space(proj);
    const std::size_t k = basis.size();
    if (k == 0) return 1;
    RatMatrix b(n, k);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < n; ++i) b(i, j) = basis[j][i];
    RatMatrix gram = b.transpose() * pairing * b;
    Rational scale = rational_pow(Rational(static_cast<long>(el.size())), -static_cast<long>(k));
    Rational det = determinant(gram) * scale;
    if (det == 0) throw MathError("pairing degenerate on a fixed subspace");
    return det;
}

}  // namespace

Rational fixed_gram_det(const MatrixRep& rep, const RatMatrix& pairing, const ElemSet& h) {
    return fixed_gram_det_impl(rep, pairing, h, nullptr);
}

Rational fixed_gram_det(const MatrixRep& rep, const RatMatrix& pairing, const ElemSet& h, const RatMatrix& projector) {
    return fixed_gram_det_impl(rep, pairing, h, &projector);
}

RegConstValue reg_const_matrix(const BurnsideElt& theta, const MatrixRep& rep, const RatMatrix& pairing,
                               const Integer& d) {
    require_k_relation(theta, d);
    if (!(theta.group == rep.group)) throw InputError("relation and matrix model over different groups");
    validate_pairing(rep, pairing);
    Rational r = 1;
    const auto& sub = theta.group.subgroup_classes();
    for (std::size_t i = 0; i < theta.coeff.size(); ++i)
        if (theta.coeff[i] != 0) r *= rational_pow(fixed_gram_det(rep, pairing, sub[i].rep), theta.coeff[i]);
    return RegConstValue::make(r, d);
}

RegConstValue reg_const_matrix(const BurnsideElt& theta, const MatrixRep& rep, std::uint64_t seed,
                               const Integer& d) {
    return reg_const_matrix(theta, rep, random_invariant_pairing(rep, seed), d);
}

RegConstValue reg_const_isotypic(const BurnsideElt& theta, std::size_t rational_index, const Integer& d) {
    require_k_relation(theta, d);
    const Group& g = theta.group;
    const auto& ri = rational_irreducibles(g).at(rational_index);
    const auto& chi = character_table(g).irr[ri.constituent];
    const auto& sub = g.subgroup_classes();
    std::optional<std::size_t> host;
    for (std::size_t j = 0; j < sub.size() && !host; ++j) {
        Rational m = inner_product(perm_character(g, j), chi);
        if (m.get_den() == 1 && m.get_num() % 2 != 0) host = j;
    }
    if (!host)
        throw NeedsMatrixModel("rational irreducible " + std::to_string(rational_index) +
                               " has even multiplicity in every permutation representation; supply a matrix model");
    auto rep = permutation_rep(g, sub[*host].rep);
    auto orbit = ri.orbit_sum.rational_values();
    Rational scale = Rational(character_table(g).degree(ri.constituent)) / Rational(static_cast<long>(g.order()));
    RatMatrix proj(rep.dim, rep.dim);
    for (Elem x = 0; x < g.order(); ++x) {
        Rational c = scale * orbit[g.class_of(g.inv(x))];
        if (c == 0) continue;
        for (std::size_t i = 0; i < rep.dim; ++i)
            for (std::size_t j = 0; j < rep.dim; ++j)
                if (rep.images[x](i, j) != 0) proj(i, j) += c * rep.images[x](i, j);
    }
    RatMatrix pairing = RatMatrix::identity(rep.dim);
    Rational r = 1;
    for (std::size_t i = 0; i < theta.coeff.size(); ++i)
        if (theta.coeff[i] != 0) r *= rational_pow(fixed_gram_det(rep, pairing, sub[i].rep, proj), theta.coeff[i]);
    return RegConstValue::make(r, d);
}

RegConstValue reg_const_any(const BurnsideElt& theta, std::size_t rational_index, const Integer& d) {
    try {
        return reg_const_rational_irr(theta, rational_index, d);
    } catch (const NeedsMatrixModel&) {
        return reg_const_isotypic(theta, rational_index, d);
    }
}

}  // namespace krel
