#include "krel/curvelocal.hpp"
#include "krel/harness.hpp"

#include <gtest/gtest.h>

using namespace krel;

namespace {

ElemSet subgroup(const Group& g, const std::string& label) {
    auto c = g.find_subgroup_label(label);
    EXPECT_TRUE(c) << label;
    return g.subgroup_classes()[c.value_or(0)].rep;
}

// every subgroup of g contained in d
std::vector<ElemSet> subgroups_inside(const Group& g, const ElemSet& d) {
    std::vector<ElemSet> out;
    for (auto& sc : g.subgroup_classes())
        for (auto& c : sc.conjugates)
            if (c.subset_of(d)) out.push_back(c);
    return out;
}

PlaceDescriptor d21_split_place() {
    Group g = dihedral_group(21);
    PlaceDescriptor p;
    p.name = "p5";
    p.l = 5;
    p.q = 5;
    p.D = subgroup(g, "D3");
    p.I = subgroup(g, "C3");
    p.reduction.type = ReductionType::SplitMult;
    p.reduction.n = 1;
    return p;
}

}  // namespace

TEST(Reduction, TypeNamesRoundTrip) {
    for (auto t : {ReductionType::Good, ReductionType::SplitMult, ReductionType::NonsplitMult, ReductionType::AddPotGood,
                   ReductionType::AddPotMult})
        EXPECT_EQ(parse_reduction_type(to_string(t)), t);
    EXPECT_THROW(parse_reduction_type("cuspidal"), InputError);
}

TEST(SquareTests, ResidueAndRamification) {
    SquareClassLocal unit_ns{0, false}, unif{1, true}, one{0, true};
    for (long e : {1L, 2L, 3L})
        for (long f : {1L, 2L, 3L}) {
            EXPECT_TRUE(is_square_in_ext(one, e, f));
            EXPECT_EQ(is_square_in_ext(unit_ns, e, f), f % 2 == 0);
            if (e % 2 == 1) EXPECT_FALSE(is_square_in_ext(unif, e, f));
        }
    EXPECT_TRUE(is_square_mod_q(2, 7, 7));
    EXPECT_FALSE(is_square_mod_q(3, 7, 7));
    EXPECT_TRUE(is_square_mod_q(3, 7, 49));
}

TEST(SquareTests, RootNumberSign) {
    // -1 for e = 2, 6; -3 for e = 3; -2 for e = 4
    EXPECT_EQ(epsilon_sign(2, 5, 5), 1);
    EXPECT_EQ(epsilon_sign(2, 7, 7), -1);
    EXPECT_EQ(epsilon_sign(2, 7, 49), 1);
    EXPECT_EQ(epsilon_sign(6, 7, 7), -1);
    EXPECT_EQ(epsilon_sign(3, 7, 7), 1);
    EXPECT_EQ(epsilon_sign(3, 5, 5), -1);
    EXPECT_EQ(epsilon_sign(4, 5, 5), -1);
    EXPECT_EQ(epsilon_sign(4, 11, 11), 1);
}

TEST(Validation, AcceptsExamplePlace) {
    Group g = dihedral_group(21);
    PlaceDescriptor p = d21_split_place();
    EXPECT_TRUE(validate_place(g, p).empty());
    EXPECT_EQ(local_case(p), LocalCase::S1);
}

TEST(Validation, RejectsInertiaOutsideDecomposition) {
    Group g = dihedral_group(21);
    PlaceDescriptor p = d21_split_place();
    p.I = subgroup(g, "C7");
    auto diags = validate_place(g, p);
    ASSERT_FALSE(diags.empty());
    EXPECT_THROW(require_valid(g, p), InputError);
}

TEST(Validation, RejectsNonCyclicQuotient) {
    Group g = dihedral_group(21);
    PlaceDescriptor p = d21_split_place();
    p.I = g.trivial();
    EXPECT_FALSE(validate_place(g, p).empty());
}

TEST(Validation, PotentiallyGoodNeedsEnoughInertia) {
    Metacyclic m = build_metacyclic({4, 1, 1});
    PlaceDescriptor p;
    p.l = 5;
    p.q = 5;
    p.D = m.group.whole();
    p.I = m.I;
    p.reduction.type = ReductionType::AddPotGood;
    p.reduction.delta = 3;
    p.reduction.delta_class = {1, true};
    EXPECT_TRUE(validate_place(m.group, p).empty());
    p.reduction.delta = 1;  // 1 * 4 is not a multiple of 12
    EXPECT_FALSE(validate_place(m.group, p).empty());
    p.reduction.delta = 3;
    p.l = 3;
    p.q = 3;
    EXPECT_FALSE(validate_place(m.group, p).empty());
}

TEST(Tamagawa, SplitMultiplicativeScalesWithRamification) {
    Group g = dihedral_group(21);
    PlaceDescriptor p = d21_split_place();
    for (auto& h : subgroups_inside(g, p.D)) {
        auto li = local_indices(g, p, h);
        EXPECT_EQ(li.e * li.f * static_cast<long>(h.count()), static_cast<long>(p.D.count()));
        EXPECT_EQ(tamagawa(g, p, h), li.e);
        EXPECT_EQ(fudge_C(g, p, h), Rational(li.e));
    }
    EXPECT_EQ(tamagawa(g, p, g.trivial()), 3);
    EXPECT_THROW(tamagawa(g, p, subgroup(g, "C7")), InputError);
}

TEST(Tamagawa, NonsplitBecomesSplitInEvenResidueDegree) {
    Group g = dihedral_group(21);
    PlaceDescriptor p = d21_split_place();
    p.reduction.type = ReductionType::NonsplitMult;
    for (long n : {1L, 2L, 5L}) {
        p.reduction.n = n;
        for (auto& h : subgroups_inside(g, p.D)) {
            auto li = local_indices(g, p, h);
            const long en = li.e * n;
            EXPECT_EQ(tamagawa(g, p, h), li.f % 2 == 0 ? en : (en % 2 == 0 ? 2 : 1));
        }
    }
}

TEST(Tamagawa, PotentiallyGoodKodairaTypes) {
    Metacyclic m = build_metacyclic({4, 1, 1});
    const Group& g = m.group;
    PlaceDescriptor p;
    p.l = 5;
    p.q = 5;
    p.D = g.whole();
    p.I = m.I;
    p.reduction.type = ReductionType::AddPotGood;
    p.reduction.delta = 3;
    p.reduction.delta_class = {1, true};
    ASSERT_TRUE(validate_place(g, p).empty());
    for (auto& h : subgroups_inside(g, p.D)) {
        auto li = local_indices(g, p, h);
        const long v = 3 * li.e;  // discriminant valuation over the fixed field
        long c = tamagawa(g, p, h);
        if (v % 12 == 0) EXPECT_EQ(c, 1);           // good
        if (v % 12 == 3 || v % 12 == 9) EXPECT_EQ(c, 2);  // III, III*
        if (v % 12 == 6) EXPECT_TRUE(c == 1 || c == 2 || c == 4);
        EXPECT_EQ(fudge_C(g, p, h), Rational(c) * rational_pow(Rational(5), (v / 12) * li.f));
    }
    EXPECT_EQ(fudge_C(g, p, g.trivial()), Rational(25));
    EXPECT_EQ(local_case(p), LocalCase::C2);
}

TEST(Tamagawa, LocalFunctionMatchesDirectValues) {
    Group g = dihedral_group(21);
    PlaceDescriptor p = d21_split_place();
    LocalFn fn = fudge_localfn(p);
    for (auto& sc : g.subgroup_classes()) {
        Rational direct = 1;
        for (auto& dc : double_cosets(g, sc.rep, p.D))
            direct *= fudge_C(g, p, restrict_conjugate(g, sc.rep, p.D, dc.rep));
        EXPECT_EQ(eval_localfn(g, fn, sc.rep), direct) << sc.label;
    }
}

TEST(RootData, SplitMultiplicativeContribution) {
    Group g = dihedral_group(21);
    PlaceDescriptor p = d21_split_place();
    RootDatum rd = root_datum(g, p);
    EXPECT_EQ(rd.lambda, 1);
    const auto& t = character_table(g);
    // V is the trivial character of D_v: u = <Res chi, 1> mod 2
    for (std::size_t a = 0; a < t.size(); ++a) {
        CycNumber sum;
        for (auto x : p.D.elements()) sum += t.irr[a].at(x);
        Rational s = sum.to_rational() / Rational(static_cast<long>(p.D.count()));
        EXPECT_EQ(local_u_contribution(g, p, t.irr[a]), static_cast<int>(s.get_num().get_si() & 1)) << t.labels[a];
    }
}
