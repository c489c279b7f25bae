#include "krel/cli.hpp"
#include "krel/regconst.hpp"

#include <gtest/gtest.h>

using namespace krel;

namespace {

std::size_t rational_by_name(const Group& g, const std::string& name) {
    auto i = find_rational_irreducible(g, name);
    EXPECT_TRUE(i) << name;
    return i.value_or(0);
}

Rational ipow(long b, long e) { return rational_pow(Rational(b), e); }

}  // namespace

TEST(RegConst, DihedralOf42ModNorms) {
    Group g = dihedral_group(21);
    BurnsideElt theta = parse_burnside(g, "C2 - D3 - D7 + D21");
    const std::vector<std::pair<std::string, long>> want = {
        {"1", 1}, {"eps", 1}, {"chi_3", 1}, {"chi_7", 3}, {"chi_21", 3}};
    for (auto& [name, v] : want) {
        RegConstValue c = reg_const_rational_irr(theta, rational_by_name(g, name), 21);
        EXPECT_TRUE(norm_equivalent(c.raw, v, 21)) << name << ": " << to_string(c.raw);
        EXPECT_TRUE(c.equivalent(RegConstValue::make(v, 21))) << name;
    }
    EXPECT_FALSE(reg_const_rational_irr(theta, rational_by_name(g, "chi_7"), 21).is_norm());
}

TEST(RegConst, DihedralClosedForms) {
    for (auto [p, q] : std::vector<std::pair<long, long>>{{3, 7}, {3, 11}, {7, 11}}) {
        Group g = dihedral_group(static_cast<std::size_t>(p * q));
        BurnsideElt theta = parse_burnside(g, "C2 - D" + std::to_string(p) + " - D" + std::to_string(q) + " + D" +
                                                  std::to_string(p * q));
        const Integer d = squarefree_class(Rational((p % 4 == 1 ? p : -p) * (q % 4 == 1 ? q : -q))).value();
        ASSERT_TRUE(is_k_relation(theta, d)) << p << "," << q;
        auto closed = [&](const std::string& name, const Rational& expect) {
            const auto& ri = rational_irreducibles(g)[rational_by_name(g, name)];
            PermMultiple pm = minimal_perm_multiple(ri.orbit_sum);
            ASSERT_EQ(pm.k, 1) << name;
            RegConstValue c = reg_const_perm(theta, pm.expansion, d);
            EXPECT_EQ(c.square_class, squarefree_class(expect)) << "D" << p * q << " " << name << ": " << to_string(c.raw);
        };
        closed("chi_" + std::to_string(p), ipow(q, (p - 1) / 2));
        closed("chi_" + std::to_string(q), ipow(p, (q - 1) / 2));
        closed("chi_" + std::to_string(p * q), ipow(p, (q - 1) / 2) * ipow(q, (p - 1) / 2));
    }
}

TEST(RegConst, SymmetricGroupTrivialRep) {
    Group g = symmetric_group(3);
    BurnsideElt theta = parse_burnside(g, "C1 - 2*C2 - C3 + 2*D3");
    // a Brauer relation is a K-relation for every field; the square class does not depend on it
    for (long d : {5L, -1L}) {
        EXPECT_EQ(reg_const_rational_irr(theta, rational_by_name(g, "1"), d).square_class.value(), 3);
        EXPECT_EQ(reg_const_rational_irr(theta, rational_by_name(g, "eps"), d).square_class.value(), 3);
        EXPECT_EQ(reg_const_rational_irr(theta, rational_by_name(g, "chi_3"), d).square_class.value(), 3);
    }
}

TEST(RegConst, PermFixedDet) {
    Group g = dihedral_group(21);
    auto c2 = *g.find_subgroup_label("C2");
    auto d21 = g.whole_class();
    // Q[G/G] restricted to C2 is the trivial line: det 1/|C2|
    EXPECT_EQ(perm_fixed_det(g, c2, d21), Rational(1, 2));
    EXPECT_EQ(perm_fixed_det(g, g.trivial_class(), g.trivial_class()), Rational(1));
}

TEST(RegConst, IsotypicAgreesWithPermutationRoute) {
    for (const Group& g : {dihedral_group(21), dihedral_group(15)}) {
        const auto& top = rational_irreducibles(g).back();
        const Integer d = char_field_data(character_table(g).irr[top.constituent]).quadratic_subfields.at(0);
        NormRelation nr = find_norm_relation(g, top.constituent);
        for (std::size_t i = 0; i < rational_irreducibles(g).size(); ++i) {
            RegConstValue a = reg_const_rational_irr(nr.theta, i, d);
            RegConstValue b = reg_const_isotypic(nr.theta, i, d);
            EXPECT_TRUE(a.equivalent(b)) << g.name() << " " << rational_irreducible_name(g, i) << ": "
                                         << to_string(a.raw) << " vs " << to_string(b.raw);
        }
    }
}

TEST(RegConst, RejectsNonKRelation) {
    Group g = dihedral_group(21);
    EXPECT_THROW(reg_const_rational_irr(parse_burnside(g, "C1 - C2"), 0, 21), InputError);
}

TEST(Pairings, RandomPairingIsInvariant) {
    Group g = dihedral_group(21);
    auto d3 = g.subgroup_classes()[*g.find_subgroup_label("D3")].rep;
    MatrixRep rep = augmentation_kernel_rep(g, d3);
    EXPECT_EQ(rep.dim, 6u);
    for (std::uint64_t seed : {1u, 2u, 99u}) EXPECT_NO_THROW(validate_pairing(rep, random_invariant_pairing(rep, seed)));
    EXPECT_THROW(validate_pairing(rep, RatMatrix::identity(7)), InputError);
}

TEST(Pairings, IndependenceOnSigma7) {
    Group g = dihedral_group(21);
    BurnsideElt theta = parse_burnside(g, "C2 - D3 - D7 + D21");
    auto d3 = g.subgroup_classes()[*g.find_subgroup_label("D3")].rep;
    MatrixRep rep = augmentation_kernel_rep(g, d3);
    EXPECT_FALSE(random_invariant_pairing(rep, 1) == random_invariant_pairing(rep, 2));
    RegConstValue a = reg_const_matrix(theta, rep, 1, 21);
    RegConstValue b = reg_const_matrix(theta, rep, 2, 21);
    EXPECT_TRUE(a.equivalent(b)) << to_string(a.raw) << " vs " << to_string(b.raw);
    RegConstValue perm = reg_const_rational_irr(theta, rational_by_name(g, "chi_7"), 21);
    EXPECT_TRUE(a.equivalent(perm));
}

TEST(Pairings, IndependenceOnQuaternionModel) {
    auto cfg = cli::load_config(std::string(KREL_CONFIG_DIR_DEFAULT) + "/q8_matrix_model.json");
    const Group& g = cfg.model.group;
    ASSERT_EQ(cfg.targets.size(), 2u);
    for (auto& t : cfg.targets) {
        ASSERT_TRUE(t.matrix_model && t.theta && t.field);
        MatrixRep rep = MatrixRep::make(g, t.matrix_model->generator_images);
        BurnsideElt theta = parse_burnside(g, *t.theta);
        ASSERT_TRUE(is_k_relation(theta, *t.field));
        RegConstValue a = reg_const_matrix(theta, rep, 7, *t.field);
        RegConstValue b = reg_const_matrix(theta, rep, 8, *t.field);
        EXPECT_TRUE(a.equivalent(b)) << to_string(a.raw) << " vs " << to_string(b.raw);
    }
}
