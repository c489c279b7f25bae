#pragma once

#include "krel/exactmath.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace krel {

using Perm = std::vector<std::uint32_t>;  // image of each point, 0-based
using Elem = std::uint32_t;                // index into Group::elements()

inline constexpr std::size_t kDefaultOrderBound = 512;

Perm parse_cycles(const std::string& text, std::size_t degree);
std::string format_cycles(const Perm& p);

// Subset of a group's element indices.
class ElemSet {
public:
    ElemSet() = default;
    explicit ElemSet(std::size_t universe) : n_(universe), w_((universe + 63) / 64, 0) {}

    std::size_t universe() const { return n_; }
    void set(std::size_t i) { w_[i >> 6] |= std::uint64_t(1) << (i & 63); }
    bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    std::size_t count() const;
    bool subset_of(const ElemSet& o) const;
    std::vector<Elem> elements() const;

    friend ElemSet operator&(const ElemSet& a, const ElemSet& b);
    friend bool operator==(const ElemSet& a, const ElemSet& b) { return a.n_ == b.n_ && a.w_ == b.w_; }
    // lexicographic comparison of the sorted element lists
    friend bool lex_less(const ElemSet& a, const ElemSet& b);

    std::size_t hash() const;

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

struct ElemSetHash {
    std::size_t operator()(const ElemSet& s) const { return s.hash(); }
};

struct ConjClass {
    Elem rep;
    std::vector<Elem> elements;
    std::size_t order;  // element order
};

struct SubgroupClass {
    std::size_t id;
    ElemSet rep;
    std::size_t order;
    bool is_cyclic;
    bool is_normal;
    std::vector<ElemSet> conjugates;
    std::string label;
};

class CharacterTable;

namespace detail {
struct GroupData;
}

class Group {
public:
    Group() = default;
    static Group from_generators(std::vector<Perm> gens, std::string name = {},
                                 std::size_t order_bound = kDefaultOrderBound);

    const std::string& name() const;
    std::size_t order() const;
    std::size_t degree() const;
    std::size_t exponent() const;
    const std::vector<Perm>& elements() const;
    const Perm& element(Elem g) const { return elements()[g]; }
    const std::vector<Elem>& generators() const;
    std::optional<Elem> find(const Perm& p) const;

    Elem identity() const { return 0; }
    Elem mul(Elem a, Elem b) const;  // a then... see group.cpp: (a*b)(x) = a(b(x))
    Elem inv(Elem a) const;
    Elem pow(Elem a, long k) const;
    Elem conj(Elem g, Elem x) const { return mul(mul(x, g), inv(x)); }  // x g x^-1
    std::size_t elem_order(Elem a) const;

    // element conjugacy classes, identity class first
    const std::vector<ConjClass>& classes() const;
    std::size_t class_of(Elem g) const;
    // class of g^k for g in class c
    std::size_t power_class(std::size_t c, long k) const;
    std::size_t inverse_class(std::size_t c) const { return power_class(c, -1); }
    std::size_t centralizer_order(std::size_t c) const { return order() / classes()[c].elements.size(); }

    ElemSet whole() const;
    ElemSet trivial() const;
    ElemSet closure(const std::vector<Elem>& gens) const;
    bool is_subgroup(const ElemSet& s) const;
    ElemSet conjugate(const ElemSet& s, Elem x) const;  // x S x^-1
    bool is_normal(const ElemSet& s) const;
    std::vector<Elem> generating_set(const ElemSet& s) const;
    ElemSet product(const ElemSet& a, const ElemSet& b) const;  // {ab}, for a subgroup product

    const std::vector<SubgroupClass>& subgroup_classes() const;
    std::size_t subgroup_class_of(const ElemSet& s) const;
    // some conjugate of class i lies in class j
    bool class_contained(std::size_t i, std::size_t j) const;
    std::size_t whole_class() const { return subgroup_classes().size() - 1; }
    std::size_t trivial_class() const { return 0; }
    std::optional<std::size_t> find_subgroup_label(const std::string& label) const;

    // cache slot for the characters module
    std::shared_ptr<const CharacterTable> cached_table(
        const std::function<std::shared_ptr<const CharacterTable>(const Group&)>& build) const;
    // keyed cache for derived data; build runs without the lock held
    std::shared_ptr<const void> cached(const std::string& key,
                                       const std::function<std::shared_ptr<const void>()>& build) const;

    bool valid() const { return d_ != nullptr; }
    friend bool operator==(const Group& a, const Group& b) { return a.d_ == b.d_; }

private:
    std::shared_ptr<detail::GroupData> d_;
};

struct Embedded {
    Group group;
    std::vector<Elem> to_parent;  // sub element index -> parent element index
};

Embedded embed_subgroup(const Group& g, const ElemSet& s);

struct Quotient {
    Group group;
    std::vector<Elem> proj;  // G element -> G/N element
};

Quotient quotient_group(const Group& g, const ElemSet& n);

struct DoubleCoset {
    Elem rep;
    std::size_t intersection_order;  // |H ∩ x D x^-1|
    std::size_t size;
};

std::vector<DoubleCoset> double_cosets(const Group& g, const ElemSet& h, const ElemSet& d);

// {d in D : x d x^-1 in H}, i.e. D ∩ x^-1 H x
ElemSet restrict_conjugate(const Group& g, const ElemSet& h, const ElemSet& d, Elem x);

// Named constructors.
Group cyclic_group(std::size_t n);
Group dihedral_group(std::size_t n);  // order 2n
Group quaternion_group();
Group symmetric_group(std::size_t n);
Group alternating_group(std::size_t n);
// C_e ⋊ C_{2^k}, generator y acting by x -> x^sign
Group metacyclic_group(std::size_t e, std::size_t k, int sign);

}  // namespace krel
