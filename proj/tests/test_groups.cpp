#include "krel/group.hpp"
#include "krel/harness.hpp"

#include <gtest/gtest.h>

using namespace krel;

namespace {

std::size_t tau(std::size_t n) {
    std::size_t c = 0;
    for (std::size_t d = 1; d <= n; ++d) c += n % d == 0;
    return c;
}

}  // namespace

TEST(Cycles, RoundTrip) {
    Perm p = parse_cycles("(1,3,5)(2,4)", 6);
    EXPECT_EQ(p.size(), 6u);
    EXPECT_EQ(p[0], 2u);
    EXPECT_EQ(p[1], 3u);
    EXPECT_EQ(p[5], 5u);
    EXPECT_EQ(format_cycles(p), "(1,3,5)(2,4)");
    EXPECT_EQ(format_cycles(parse_cycles("()", 3)), "()");
    EXPECT_THROW(parse_cycles("(1,2,1)", 3), InputError);
    EXPECT_THROW(parse_cycles("1,2", 3), InputError);
}

TEST(Groups, OrdersAndClassCounts) {
    struct Case {
        Group g;
        std::size_t order, classes, subgroup_classes;
    };
    std::vector<Case> cases = {
        {symmetric_group(3), 6, 3, 4},   {dihedral_group(4), 8, 5, 8},  {quaternion_group(), 8, 5, 6},
        {alternating_group(4), 12, 4, 5}, {symmetric_group(4), 24, 5, 11}, {dihedral_group(7), 14, 5, 4},
        {dihedral_group(21), 42, 12, 8}, {alternating_group(5), 60, 5, 9},
    };
    for (auto& c : cases) {
        EXPECT_EQ(c.g.order(), c.order) << c.g.name();
        EXPECT_EQ(c.g.classes().size(), c.classes) << c.g.name();
        EXPECT_EQ(c.g.subgroup_classes().size(), c.subgroup_classes) << c.g.name();
    }
    for (std::size_t n = 1; n <= 30; ++n) {
        Group g = cyclic_group(n);
        EXPECT_EQ(g.order(), n);
        EXPECT_EQ(g.classes().size(), n);
        EXPECT_EQ(g.subgroup_classes().size(), tau(n));
        EXPECT_EQ(g.exponent(), n);
    }
}

TEST(Groups, ClassEquationAndPowerMaps) {
    for (const Group& g : {dihedral_group(6), quaternion_group(), alternating_group(4), metacyclic_group(3, 2, -1)}) {
        std::size_t total = 0;
        for (std::size_t c = 0; c < g.classes().size(); ++c) {
            total += g.classes()[c].elements.size();
            EXPECT_EQ(g.order() % g.centralizer_order(c), 0u);
            EXPECT_EQ(g.power_class(c, 1), c);
            EXPECT_EQ(g.power_class(c, static_cast<long>(g.exponent())), 0u);
        }
        EXPECT_EQ(total, g.order());
        EXPECT_EQ(g.classes()[0].elements.size(), 1u);
    }
}

TEST(Groups, SubgroupLabelsOfD21) {
    Group g = dihedral_group(21);
    for (const char* lab : {"C1", "C2", "C3", "C7", "C21", "D3", "D7", "D21"})
        EXPECT_TRUE(g.find_subgroup_label(lab).has_value()) << lab;
    EXPECT_EQ(g.find_subgroup_label("S3"), g.find_subgroup_label("D3"));
    EXPECT_EQ(*g.find_subgroup_label("G"), g.whole_class());
    EXPECT_EQ(*g.find_subgroup_label("1"), g.trivial_class());
    auto c7 = *g.find_subgroup_label("C7");
    auto d7 = *g.find_subgroup_label("D7");
    auto c2 = *g.find_subgroup_label("C2");
    EXPECT_TRUE(g.class_contained(c7, d7));
    EXPECT_TRUE(g.class_contained(c2, d7));
    EXPECT_FALSE(g.class_contained(d7, c7));
    EXPECT_TRUE(g.subgroup_classes()[c7].is_normal);
    EXPECT_FALSE(g.subgroup_classes()[c2].is_normal);
    EXPECT_EQ(g.subgroup_classes()[c2].conjugates.size(), 21u);
}

TEST(Groups, DoubleCosetSizes) {
    Group g = symmetric_group(4);
    const auto& sc = g.subgroup_classes();
    for (std::size_t i = 0; i < sc.size(); ++i)
        for (std::size_t j = 0; j < sc.size(); ++j) {
            const ElemSet& h = sc[i].rep;
            const ElemSet& d = sc[j].rep;
            std::size_t total = 0;
            for (auto& dc : double_cosets(g, h, d)) {
                EXPECT_EQ(dc.size * dc.intersection_order, h.count() * d.count());
                EXPECT_EQ(restrict_conjugate(g, h, d, dc.rep).count(), dc.intersection_order);
                total += dc.size;
            }
            EXPECT_EQ(total, g.order());
        }
}

TEST(Groups, QuotientsAndEmbeddings) {
    Group g = dihedral_group(21);
    auto c7 = g.subgroup_classes()[*g.find_subgroup_label("C7")].rep;
    Quotient q = quotient_group(g, c7);
    EXPECT_EQ(q.group.order(), 6u);
    EXPECT_EQ(q.group.classes().size(), 3u);
    auto d7 = g.subgroup_classes()[*g.find_subgroup_label("D7")].rep;
    Embedded e = embed_subgroup(g, d7);
    EXPECT_EQ(e.group.order(), 14u);
    for (Elem a = 0; a < e.group.order(); ++a) EXPECT_TRUE(d7.test(e.to_parent[a]));
}

TEST(Groups, OrderBound) {
    EXPECT_THROW(Group::from_generators({parse_cycles("(1,2)", 6), parse_cycles("(1,2,3,4,5,6)", 6)}, "S6", 100),
                 InputError);
}

TEST(Metacyclic, Presentations) {
    for (long e : {2L, 3L, 4L, 6L})
        for (long k = 0; k <= 3; ++k)
            for (int sign : {1, -1}) {
                if (k == 0 && sign == -1) continue;
                Metacyclic m = build_metacyclic({e, k, sign});
                const Group& g = m.group;
                EXPECT_EQ(g.order(), static_cast<std::size_t>(e << k));
                EXPECT_EQ(g.elem_order(m.x), static_cast<std::size_t>(e));
                EXPECT_EQ(g.elem_order(m.y), static_cast<std::size_t>(1L << k));
                EXPECT_EQ(g.conj(m.x, m.y), g.pow(m.x, sign));
                EXPECT_TRUE(g.is_normal(m.I));
                EXPECT_EQ(m.element(1, 1), g.mul(m.x, m.y));
            }
}
