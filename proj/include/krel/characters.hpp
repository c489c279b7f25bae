#pragma once

#include "krel/cyclotomic.hpp"
#include "krel/group.hpp"

#include <string>
#include <vector>

namespace krel {

class ClassFunction {
public:
    ClassFunction() = default;
    ClassFunction(Group g, std::vector<CycNumber> values);
    static ClassFunction rational(Group g, const std::vector<Rational>& values);
    static ClassFunction zero(const Group& g);

    const Group& group() const { return g_; }
    const std::vector<CycNumber>& values() const { return v_; }
    const CycNumber& operator[](std::size_t c) const { return v_[c]; }
    const CycNumber& at(Elem x) const { return v_[g_.class_of(x)]; }
    CycNumber degree() const { return v_[0]; }

    bool is_rational() const;
    std::vector<Rational> rational_values() const;

    // value at class c becomes the value at the class of g^k
    ClassFunction galois(long k) const;
    ClassFunction conj() const { return galois(-1); }

    ClassFunction& operator+=(const ClassFunction& o);
    ClassFunction& operator-=(const ClassFunction& o);
    ClassFunction& operator*=(const Rational& r);
    friend ClassFunction operator+(ClassFunction a, const ClassFunction& b) { return a += b; }
    friend ClassFunction operator-(ClassFunction a, const ClassFunction& b) { return a -= b; }
    friend ClassFunction operator*(ClassFunction a, const Rational& r) { return a *= r; }
    friend bool operator==(const ClassFunction& a, const ClassFunction& b);

private:
    Group g_;
    std::vector<CycNumber> v_;
};

struct RationalIrreducible {
    ClassFunction orbit_sum;
    std::size_t constituent;         // index into CharacterTable::irr
    std::vector<std::size_t> orbit;  // ascending
};

class CharacterTable {
public:
    Group group;
    unsigned level = 1;  // exponent of the group; all values live in Q(zeta_level)
    unsigned prime = 0;  // modulus used for the computation
    std::vector<ClassFunction> irr;
    std::vector<std::string> labels;
    // eigen[a][c][k]: multiplicity of zeta^k as an eigenvalue of irr[a] at class c
    std::vector<std::vector<std::vector<long>>> eigen;
    std::vector<std::size_t> field_level;
    std::vector<std::size_t> orbit_id;
    std::vector<RationalIrreducible> rational;

    std::size_t size() const { return irr.size(); }
    long degree(std::size_t a) const;
    // index of irr[a]^(k)
    std::size_t galois_index(std::size_t a, long k) const;
    std::optional<std::size_t> find(const ClassFunction& f) const;
    std::optional<std::size_t> find_label(const std::string& label) const;
    // by degree and position among characters of that degree
    std::optional<std::size_t> find_degree_index(long degree, std::size_t index) const;
};

const CharacterTable& character_table(const Group& g);

ClassFunction perm_character(const Group& g, const ElemSet& h);
ClassFunction perm_character(const Group& g, std::size_t subgroup_class);

Rational inner_product(const ClassFunction& a, const ClassFunction& b);
// multiplicity of each irreducible
std::vector<Rational> decompose(const ClassFunction& f);

int fs_indicator(const ClassFunction& chi);
std::vector<ClassFunction> galois_orbit(const ClassFunction& chi);
const std::vector<RationalIrreducible>& rational_irreducibles(const Group& g);
// index into rational_irreducibles containing irr[a]
std::size_t rational_index_of(const Group& g, std::size_t a);

ElemSet character_kernel(const ClassFunction& chi);

// Role-based name of a rational irreducible: "1", "ε" for a unique quadratic character,
// "χ_m" for the unique degree-2 family with image D_m; otherwise the label of its first constituent.
std::string rational_irreducible_name(const Group& g, std::size_t rational_index);
// rational index for a name, a constituent label or "chi_m" spelled in ASCII
std::optional<std::size_t> find_rational_irreducible(const Group& g, const std::string& name);

struct CharFieldData {
    unsigned level = 1;
    std::vector<long> stabilizer;  // residues mod level fixing the character
    std::vector<Integer> quadratic_subfields;
    // [Q(sqrt d) : Q(sqrt d) ∩ Q(chi)]
    int degree_factor(const Integer& d) const;
};

CharFieldData char_field_data(const ClassFunction& chi);

// All quadratic fields Q(sqrt d) inside Q(zeta_n), sorted by |d| then sign.
std::vector<Integer> quadratic_subfields_of_cyclotomic(long n);
// Quadratic subfields of the fixed field of the given residues in Q(zeta_n).
std::vector<Integer> quadratic_subfields_fixed_by(long n, const std::vector<long>& residues);

}  // namespace krel
