#pragma once

#include "krel/characters.hpp"
#include "krel/group.hpp"
#include "krel/linalg.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace krel {

// Element of the Burnside ring: integer combination of subgroup classes.
struct BurnsideElt {
    Group group;
    std::vector<long> coeff;  // indexed by subgroup class id

    BurnsideElt() = default;
    explicit BurnsideElt(Group g);
    static BurnsideElt of_class(const Group& g, std::size_t cls, long n = 1);
    static BurnsideElt from_vector(const Group& g, const IntVector& v);

    bool is_zero() const;
    IntVector to_vector() const;
    // "C2 - D3 - D7 + D21"
    std::string str() const;
    // nonzero terms as (label, coefficient), class order
    std::vector<std::pair<std::string, long>> terms() const;
    // positive and negative parts, as (label, multiplicity)
    std::pair<std::vector<std::pair<std::string, long>>, std::vector<std::pair<std::string, long>>> split() const;

    BurnsideElt& operator+=(const BurnsideElt& o);
    BurnsideElt& operator-=(const BurnsideElt& o);
    BurnsideElt& operator*=(long k);
    friend BurnsideElt operator+(BurnsideElt a, const BurnsideElt& b) { return a += b; }
    friend BurnsideElt operator-(BurnsideElt a, const BurnsideElt& b) { return a -= b; }
    friend BurnsideElt operator*(BurnsideElt a, long k) { return a *= k; }
    friend bool operator==(const BurnsideElt& a, const BurnsideElt& b);
};

// Parse "C2 - D3 + 2*D21" style text against the group's subgroup labels.
BurnsideElt parse_burnside(const Group& g, const std::string& text);

// Integer matrix of permutation characters: rows are element classes, columns subgroup classes.
const IntMatrix& perm_character_matrix(const Group& g);
ClassFunction perm_character(const BurnsideElt& theta);
// <perm character of theta, chi>
Rational multiplicity(const BurnsideElt& theta, const ClassFunction& chi);

// Burnside ring maps.
BurnsideElt restrict_to(const BurnsideElt& theta, const Embedded& h);
BurnsideElt induce_from(const BurnsideElt& theta, const Group& g, const Embedded& h);
// H -> HN/N
BurnsideElt project_to(const BurnsideElt& theta, const Quotient& q);
// H' -> preimage of H'
BurnsideElt inflate_from(const BurnsideElt& theta, const Group& g, const Quotient& q);

// sum_{d' | d} mu(d/d') C_{n/d'} over the cyclic group of order n
BurnsideElt psi_d(long n, long d);
BurnsideElt psi_d(const Group& cyclic, long d);

bool is_brauer_relation(const BurnsideElt& theta);

struct KRelationLattice {
    Group group;
    std::optional<Integer> field;  // squarefree D of Q(sqrt D); empty for Brauer relations
    std::vector<BurnsideElt> basis;

    std::size_t rank() const { return basis.size(); }
    bool is_brauer() const { return !field.has_value(); }
};

KRelationLattice brauer_basis(const Group& g);

// [Q(sqrt d) : Q(sqrt d) ∩ Q(chi)] for every irreducible of g
std::vector<int> degree_factors(const Group& g, const Integer& d);
bool is_k_relation(const BurnsideElt& theta, const Integer& d);
KRelationLattice k_relation_basis(const Group& g, const Integer& d);

struct NormRelation {
    long multiple = 1;
    BurnsideElt theta;
};

// Least m with m times the Galois orbit sum of irr[chi] a virtual permutation character.
NormRelation find_norm_relation(const Group& g, std::size_t chi);
// Same for an arbitrary rational-valued character.
NormRelation find_perm_expansion(const Group& g, const std::vector<Rational>& values);

// Function of (e, f) attached to a local function.
class LocalPsi {
public:
    enum class Kind { Const, E, F, EF, PowFloor, PowHalf, CondDivides, Product, Custom };

    static LocalPsi constant(const Rational& a);
    static LocalPsi e();
    static LocalPsi f();
    static LocalPsi ef();
    // base^(floor(delta*e/12)*f)
    static LocalPsi pow_floor(const Integer& base, long delta);
    // base^(floor(e/2)*f)
    static LocalPsi pow_half(const Integer& base);
    // alpha if k | f, beta otherwise
    static LocalPsi cond_divides(long k, const Rational& alpha, const Rational& beta);
    static LocalPsi product(std::vector<LocalPsi> factors);
    static LocalPsi custom(std::function<Rational(long, long)> fn, std::string name);

    Kind kind() const { return kind_; }
    Rational operator()(long e, long f) const;
    std::string str() const;

private:
    Kind kind_ = Kind::Const;
    Rational a_ = 1, b_ = 1;
    Integer base_ = 1;
    long n_ = 0;
    std::vector<LocalPsi> parts_;
    std::shared_ptr<std::function<Rational(long, long)>> fn_;
    std::string name_;
};

// (D, I, psi): H -> prod over x in H\G/D of psi(e, f), U = D ∩ x^-1 H x,
// e = |I| / |U ∩ I|, f = |D| / |U I|.
struct LocalFn {
    ElemSet D;
    ElemSet I;
    LocalPsi psi;
};

// Checks I normal in D with cyclic quotient and nonzero constants.
void validate_localfn(const Group& g, const LocalFn& fn);

Rational eval_localfn(const Group& g, const LocalFn& fn, const ElemSet& h);
Rational eval_localfn(const Group& g, const LocalFn& fn, std::size_t subgroup_class);
Rational eval_localfn(const LocalFn& fn, const BurnsideElt& theta);

// A function on subgroup classes, values indexed by class id.
using SubgroupFunction = std::vector<Rational>;

SubgroupFunction tabulate(const Group& g, const LocalFn& fn);
Rational evaluate(const SubgroupFunction& fn, const BurnsideElt& theta);

struct TrivialityResult {
    bool trivial = true;
    std::optional<BurnsideElt> certificate;  // failing basis element
    Rational value = 1;                       // value at the certificate
};

TrivialityResult is_trivial_on_k_relations(const SubgroupFunction& fn, const Group& g, const Integer& d);
TrivialityResult is_trivial_on_k_relations(const LocalFn& fn, const Group& g, const Integer& d);

}  // namespace krel
