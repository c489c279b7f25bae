#include "krel/parity.hpp"

#include <sstream>

namespace krel {

std::size_t CurveLocalModel::archimedean_count() const {
    std::size_t s = 0;
    for (auto& p : places) s += p.archimedean() ? 1 : 0;
    return s;
}

std::size_t CurveLocalModel::split_count() const {
    std::size_t m = 0;
    for (auto& p : places) m += (!p.archimedean() && p.reduction.type == ReductionType::SplitMult) ? 1 : 0;
    return m;
}

void validate_model(const CurveLocalModel& model) {
    if (!model.group.valid()) throw InputError("model has no group");
    std::ostringstream os;
    bool bad = false;
    for (auto& p : model.places) {
        for (auto& d : validate_place(model.group, p)) {
            os << " place '" << p.name << "' [" << d.rule << "] " << d.field << ": " << d.message << ";";
            bad = true;
        }
    }
    if (bad) throw InputError("invalid model:" + os.str());
}

Rational global_C_product(const CurveLocalModel& model, const BurnsideElt& theta) {
    if (!(theta.group == model.group)) throw InputError("relation and model over different groups");
    const Group& g = model.group;
    const auto& sub = g.subgroup_classes();
    Rational r = 1;
    for (auto& p : model.places) {
        if (p.archimedean() || p.reduction.type == ReductionType::Good) continue;
        for (std::size_t j = 0; j < theta.coeff.size(); ++j) {
            if (theta.coeff[j] == 0) continue;
            Rational local = 1;
            for (auto& dc : double_cosets(g, sub[j].rep, p.D))
                local *= fudge_C(g, p, restrict_conjugate(g, sub[j].rep, p.D, dc.rep));
            r *= rational_pow(local, theta.coeff[j]);
        }
    }
    return r;
}

namespace {

RootSign root_sign_with(const CurveLocalModel& model, const std::vector<RootDatum>& data, const ClassFunction& chi) {
    RootSign rs;
    if (fs_indicator(chi) != 1) return rs;
    int u = 0;
    for (std::size_t i = 0; i < model.places.size(); ++i)
        u ^= local_u_contribution(model.group, model.places[i], data[i], chi);
    rs.u = u;
    rs.sign = u ? -1 : 1;
    return rs;
}

std::vector<RootDatum> all_root_data(const CurveLocalModel& model) {
    std::vector<RootDatum> out;
    for (auto& p : model.places) out.push_back(root_datum(model.group, p));
    return out;
}

std::string constituent_label(const Group& g, std::size_t rational_index) {
    return rational_irreducible_name(g, rational_index);
}

}  // namespace

RootSign global_root_sign(const CurveLocalModel& model, const ClassFunction& chi) {
    return root_sign_with(model, all_root_data(model), chi);
}

TheoremMainReport theorem_main_check(const CurveLocalModel& model, const BurnsideElt& theta, const Integer& d) {
    if (!is_k_relation(theta, d))
        throw InputError("relation " + theta.str() + " is not a K-relation for Q(sqrt " + d.get_str() + ")");
    const Group& g = model.group;
    TheoremMainReport rep;
    rep.field = d;
    rep.lhs = global_C_product(model, theta);
    auto data = all_root_data(model);
    const auto& t = character_table(g);
    const auto& ri = rational_irreducibles(g);
    for (std::size_t i = 0; i < ri.size(); ++i) {
        TauTerm term;
        term.rational_index = i;
        term.label = rational_irreducible_name(g, i);
        term.u = root_sign_with(model, data, t.irr[ri[i].constituent]).u;
        if (term.u == 1 && !theta.is_zero()) {
            term.value = reg_const_any(theta, i, d);
            rep.rhs *= term.value->raw;
        }
        rep.terms.push_back(std::move(term));
    }
    rep.congruent = is_norm_from_quadratic(rep.lhs / rep.rhs, d);
    return rep;
}

std::string ParityConstraint::str() const {
    std::string s;
    for (std::size_t i = 0; i < characters.size(); ++i) s += (i ? " + " : "") + std::string("u(") + characters[i] + ")";
    if (s.empty()) s = "0";
    return s + (parity ? " odd" : " even");
}

namespace {

ParityConstraint constraint_for(const CurveLocalModel& model, const BurnsideElt& theta, const Integer& d) {
    ParityConstraint c;
    c.field = d;
    const Group& g = model.group;
    for (std::size_t i = 0; i < rational_irreducibles(g).size(); ++i) {
        auto v = reg_const_any(theta, i, d);
        if (!v.is_norm()) c.characters.push_back(constituent_label(g, i));
    }
    c.parity = 1;
    return c;
}

// a quadratic field in which x is not a norm
Integer witness_field(const Rational& x) {
    if (!is_norm_from_quadratic(x, Integer(-1))) return Integer(-1);
    for (long k = 2; k < 10000; ++k) {
        if (!is_squarefree(Integer(k))) continue;
        for (long dd : {k, -k})
            if (!is_norm_from_quadratic(x, Integer(dd))) return Integer(dd);
    }
    throw MathError("no quadratic field found in which " + to_string(x) + " fails to be a norm");
}

}  // namespace

NrtReport nrt_run(const CurveLocalModel& model, std::size_t rho) {
    const Group& g = model.group;
    const auto& t = character_table(g);
    if (rho >= t.size()) throw InputError("character index out of range");
    NrtReport rep;
    rep.rho_label = rational_irreducible_name(g, rational_index_of(g, rho));
    auto nr = find_norm_relation(g, rho);
    rep.m = nr.multiple;
    rep.theta = nr.theta;
    rep.product = global_C_product(model, nr.theta);
    for (auto& d : char_field_data(t.irr[rho]).quadratic_subfields) {
        NormVerdict v{d, is_norm_from_quadratic(rep.product, d)};
        if (!v.is_norm) {
            if (!rep.prediction) rep.prediction_via = "norm";
            rep.prediction = true;
            rep.constraints.push_back(constraint_for(model, nr.theta, d));
        }
        rep.verdicts.push_back(v);
    }
    if (rep.m % 2 == 0) {
        bool square = squarefree_class(rep.product).is_trivial();
        rep.square_verdict = square;
        if (!square) {
            if (!rep.prediction) rep.prediction_via = "square";
            rep.prediction = true;
            rep.constraints.push_back(constraint_for(model, nr.theta, witness_field(rep.product)));
        }
    }
    for (auto& o : nrt_obstructions(model)) rep.warnings.push_back(o.code + ": " + o.message);
    return rep;
}

std::vector<Obstruction> nrt_obstructions(const CurveLocalModel& model) {
    std::vector<Obstruction> out;
    const Group& g = model.group;
    if (g.order() % 2 == 1) out.push_back({"odd_order", "G has odd order"});
    bool cyclic = false;
    for (Elem x = 0; x < g.order(); ++x)
        if (g.elem_order(x) == g.order()) cyclic = true;
    if (cyclic) out.push_back({"cyclic", "G is cyclic"});
    bool good_at_ramified = true;
    bool small_decomposition = true;
    for (auto& p : model.places) {
        if (p.archimedean() || p.reduction.type == ReductionType::Good) continue;
        if (p.I.count() > 1) good_at_ramified = false;
        bool dcyc = false;
        for (auto x : p.D.elements())
            if (g.elem_order(x) == p.D.count()) dcyc = true;
        if (!dcyc && p.D.count() % 2 == 0) small_decomposition = false;
    }
    if (good_at_ramified) out.push_back({"good_at_ramified", "good reduction at every ramified place"});
    if (small_decomposition)
        out.push_back({"cyclic_or_odd_decomposition", "every bad place has cyclic or odd-order decomposition group"});
    return out;
}

}  // namespace krel
