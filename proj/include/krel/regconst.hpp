#pragma once

#include "krel/relations.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace krel {

// Raised when a rational irreducible has even order in the quotient of rational
// characters by permutation characters and an orthogonal constituent.
struct NeedsMatrixModel : MathError {
    using MathError::MathError;
};

// tau = sum_j m_j Q[G/D_j], coefficients indexed by subgroup class
using PermVirtualRep = BurnsideElt;

struct RegConstValue {
    Rational raw = 1;
    SquareClass square_class;
    Integer norm_context = 0;  // D of Q(sqrt D); 0 when no field is attached

    static RegConstValue make(const Rational& raw, const Integer& d);
    bool is_norm() const { return norm_context == 0 || is_norm_from_quadratic(raw, norm_context); }
    // equal modulo norms from Q(sqrt D)
    bool equivalent(const RegConstValue& o) const;
};

// prod_{w in H\G/D} 1/|H ∩ w D w^-1|
Rational perm_fixed_det(const Group& g, const ElemSet& h, const ElemSet& d);
Rational perm_fixed_det(const Group& g, std::size_t h_class, std::size_t d_class);

RegConstValue reg_const_perm(const BurnsideElt& theta, const PermVirtualRep& tau, const Integer& d);

struct PermMultiple {
    long k = 1;
    PermVirtualRep expansion;
};

PermMultiple minimal_perm_multiple(const ClassFunction& tau);

// tau given as an index into rational_irreducibles(G)
RegConstValue reg_const_rational_irr(const BurnsideElt& theta, std::size_t rational_index, const Integer& d);

struct MatrixRep {
    Group group;
    std::size_t dim = 0;
    std::vector<RatMatrix> gens;    // images of group.generators()
    std::vector<RatMatrix> images;  // image of every element, filled by make()

    // Builds all element images and checks the homomorphism property.
    static MatrixRep make(const Group& g, std::vector<RatMatrix> generator_images);
    const RatMatrix& operator()(Elem x) const { return images[x]; }
    ClassFunction character() const;
};

MatrixRep permutation_rep(const Group& g, const ElemSet& d);
// the kernel of the augmentation map on Q[G/D], in the basis e_i - e_last
MatrixRep augmentation_kernel_rep(const Group& g, const ElemSet& d);

// Checks symmetry, G-invariance and non-degeneracy; throws InputError on failure.
void validate_pairing(const MatrixRep& rep, const RatMatrix& pairing);
// Average of a random symmetric seed over the group, reseeding on degeneracy.
RatMatrix random_invariant_pairing(const MatrixRep& rep, std::uint64_t seed, int attempts = 32);

RegConstValue reg_const_matrix(const BurnsideElt& theta, const MatrixRep& rep, const RatMatrix& pairing,
                               const Integer& d);
RegConstValue reg_const_matrix(const BurnsideElt& theta, const MatrixRep& rep, std::uint64_t seed,
                               const Integer& d);

// det((1/|H|) <,> | rep^H) in a rational basis of the fixed space
Rational fixed_gram_det(const MatrixRep& rep, const RatMatrix& pairing, const ElemSet& h);
// Same on the image of a G-equivariant projector.
Rational fixed_gram_det(const MatrixRep& rep, const RatMatrix& pairing, const ElemSet& h, const RatMatrix& projector);

// Regulator constant of the rational irreducible on its isotypic part of some Q[G/H]
// containing it with odd multiplicity; throws NeedsMatrixModel if no such H exists.
RegConstValue reg_const_isotypic(const BurnsideElt& theta, std::size_t rational_index, const Integer& d);

// reg_const_rational_irr, falling back to reg_const_isotypic.
RegConstValue reg_const_any(const BurnsideElt& theta, std::size_t rational_index, const Integer& d);

}  // namespace krel
