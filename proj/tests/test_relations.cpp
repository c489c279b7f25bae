#include "krel/relations.hpp"

#include <gtest/gtest.h>

using namespace krel;

namespace {

std::vector<Group> brauer_sample() {
    std::vector<Group> gs;
    for (std::size_t n = 1; n <= 30; ++n) gs.push_back(cyclic_group(n));
    for (auto g : {symmetric_group(3), dihedral_group(4), dihedral_group(6), dihedral_group(7), dihedral_group(21),
                   quaternion_group(), alternating_group(4)})
        gs.push_back(g);
    for (std::size_t e : {2u, 3u, 4u, 6u})
        for (std::size_t k = 1; k <= 3; ++k)
            for (int sign : {1, -1}) gs.push_back(metacyclic_group(e, k, sign));
    return gs;
}

std::size_t rational_index_of_faithful(const Group& g, long degree) {
    const auto& t = character_table(g);
    for (std::size_t a = 0; a < t.size(); ++a)
        if (t.degree(a) == degree && character_kernel(t.irr[a]).count() == 1) return a;
    ADD_FAILURE() << "no faithful irreducible";
    return 0;
}

// product over H\G/D of psi(e, f), computed from the double cosets directly
Rational localfn_oracle(const Group& g, const LocalFn& fn, const ElemSet& h) {
    Rational out = 1;
    for (auto& dc : double_cosets(g, h, fn.D)) {
        ElemSet u = restrict_conjugate(g, h, fn.D, dc.rep);
        const long ui = static_cast<long>((u & fn.I).count());
        const long e = static_cast<long>(fn.I.count()) / ui;
        const long ui_order = static_cast<long>(u.count()) * static_cast<long>(fn.I.count()) / ui;
        const long f = static_cast<long>(fn.D.count()) / ui_order;
        out *= fn.psi(e, f);
    }
    return out;
}

}  // namespace

TEST(Burnside, ParseAndPrint) {
    Group g = dihedral_group(21);
    BurnsideElt t = parse_burnside(g, "C2 - D3 - D7 + D21");
    EXPECT_EQ(t.str(), "C2 - D3 - D7 + D21");
    EXPECT_EQ(parse_burnside(g, "C2 - S3 - D7 + D21"), t);
    EXPECT_EQ(parse_burnside(g, "2*C1 - C1").str(), "C1");
    EXPECT_TRUE((t - t).is_zero());
    EXPECT_THROW(parse_burnside(g, "C5"), InputError);
}

TEST(Burnside, ClassicalS3Relation) {
    Group g = symmetric_group(3);
    BurnsideElt t = parse_burnside(g, "C1 - 2*C2 - C3 + 2*D3");
    EXPECT_TRUE(is_brauer_relation(t));
    EXPECT_FALSE(is_brauer_relation(parse_burnside(g, "C1 - C2")));
}

TEST(BrauerBasis, RankIsNonCyclicClassCount) {
    for (const Group& g : brauer_sample()) {
        std::size_t noncyclic = 0;
        for (auto& sc : g.subgroup_classes()) noncyclic += !sc.is_cyclic;
        KRelationLattice b = brauer_basis(g);
        EXPECT_EQ(b.rank(), noncyclic) << g.name();
        for (auto& t : b.basis) EXPECT_TRUE(is_brauer_relation(t)) << g.name() << ": " << t.str();
    }
}

TEST(KRelations, BasisElementsAreKRelations) {
    for (auto [g, d] : std::vector<std::pair<Group, long>>{
             {dihedral_group(21), 21}, {dihedral_group(21), -7}, {cyclic_group(8), 2}, {quaternion_group(), -1},
             {metacyclic_group(3, 2, -1), -3}, {cyclic_group(12), 3}}) {
        KRelationLattice k = k_relation_basis(g, d);
        KRelationLattice b = brauer_basis(g);
        EXPECT_GE(k.rank(), b.rank());
        for (auto& t : k.basis) EXPECT_TRUE(is_k_relation(t, d)) << g.name() << " d=" << d << ": " << t.str();
        for (auto& t : b.basis) EXPECT_TRUE(is_k_relation(t, d));
    }
}

TEST(NormRelation, DihedralOf42) {
    Group g = dihedral_group(21);
    NormRelation nr = find_norm_relation(g, rational_index_of_faithful(g, 2));
    EXPECT_EQ(nr.multiple, 1);
    EXPECT_EQ(nr.theta, parse_burnside(g, "C2 - D3 - D7 + D21"));
    EXPECT_TRUE(is_k_relation(nr.theta, 21));
    EXPECT_FALSE(is_brauer_relation(nr.theta));
}

TEST(NormRelation, FaithfulCyclicIsPsi) {
    for (std::size_t n : {5u, 6u, 8u, 12u}) {
        Group g = cyclic_group(n);
        NormRelation nr = find_norm_relation(g, rational_index_of_faithful(g, 1));
        EXPECT_EQ(nr.multiple, 1);
        EXPECT_EQ(nr.theta, psi_d(g, static_cast<long>(n))) << nr.theta.str();
    }
    Group c6 = cyclic_group(6);
    EXPECT_EQ(psi_d(c6, 6).str(), "C1 - C2 - C3 + C6");
}

TEST(NormRelation, ExpansionMultiplicities) {
    Group g = quaternion_group();
    const auto& t = character_table(g);
    for (std::size_t a = 0; a < t.size(); ++a) {
        NormRelation nr = find_norm_relation(g, a);
        ClassFunction orbit = ClassFunction::zero(g);
        for (auto& c : galois_orbit(t.irr[a])) orbit += c;
        EXPECT_EQ(perm_character(nr.theta), orbit * Rational(nr.multiple));
    }
    // the symplectic character needs the multiple 2
    EXPECT_EQ(find_norm_relation(g, rational_index_of_faithful(g, 2)).multiple, 2);
}

TEST(BurnsideMaps, RestrictionOfRelationIsRelation) {
    Group g = dihedral_group(6);
    auto d3 = g.subgroup_classes()[*g.find_subgroup_label("D3a")].rep;
    Embedded h = embed_subgroup(g, d3);
    for (auto& t : brauer_basis(g).basis) EXPECT_TRUE(is_brauer_relation(restrict_to(t, h)));
    for (auto& t : brauer_basis(h.group).basis) EXPECT_TRUE(is_brauer_relation(induce_from(t, g, h)));
    auto c3 = g.subgroup_classes()[*g.find_subgroup_label("C3")].rep;
    Quotient q = quotient_group(g, c3);
    for (auto& t : brauer_basis(q.group).basis) EXPECT_TRUE(is_brauer_relation(inflate_from(t, g, q)));
}

TEST(LocalFunctions, MatchDoubleCosetOracle) {
    Group g = metacyclic_group(3, 2, -1);
    ElemSet D = g.whole();
    ElemSet I;
    for (auto& sc : g.subgroup_classes())
        if (sc.order == 3) I = sc.rep;
    ASSERT_EQ(I.count(), 3u);
    std::vector<LocalPsi> psis = {LocalPsi::e(), LocalPsi::f(), LocalPsi::ef(), LocalPsi::pow_floor(5, 4),
                                  LocalPsi::cond_divides(2, 3, Rational(1, 2)),
                                  LocalPsi::product({LocalPsi::e(), LocalPsi::constant(7)})};
    for (auto& psi : psis) {
        LocalFn fn{D, I, psi};
        validate_localfn(g, fn);
        auto tab = tabulate(g, fn);
        for (auto& sc : g.subgroup_classes()) {
            EXPECT_EQ(eval_localfn(g, fn, sc.rep), localfn_oracle(g, fn, sc.rep)) << psi.str() << " " << sc.label;
            EXPECT_EQ(tab[sc.id], eval_localfn(g, fn, sc.id));
        }
    }
}

TEST(LocalFunctions, TrivialityCertificate) {
    Group g = dihedral_group(21);
    auto d3 = g.subgroup_classes()[*g.find_subgroup_label("D3")].rep;
    auto c3 = g.subgroup_classes()[*g.find_subgroup_label("C3")].rep;
    LocalFn fn{d3, c3, LocalPsi::e()};
    auto res = is_trivial_on_k_relations(fn, g, 21);
    EXPECT_EQ(res.trivial, !res.certificate.has_value());
    if (res.certificate) EXPECT_EQ(res.value, eval_localfn(fn, *res.certificate));
    LocalFn one{d3, c3, LocalPsi::constant(1)};
    EXPECT_TRUE(is_trivial_on_k_relations(one, g, 21).trivial);
}
