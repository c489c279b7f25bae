#pragma once

#include "krel/relations.hpp"

#include <optional>
#include <string>
#include <vector>

namespace krel {

// Square class of a nonzero element of a local field with odd residue characteristic.
struct SquareClassLocal {
    int val_parity = 0;
    bool unit_is_square = true;

    bool is_square() const { return val_parity == 0 && unit_is_square; }
    friend bool operator==(const SquareClassLocal& a, const SquareClassLocal& b) {
        return a.val_parity == b.val_parity && a.unit_is_square == b.unit_is_square;
    }
};

enum class ReductionType { Good, SplitMult, NonsplitMult, AddPotGood, AddPotMult };

std::string to_string(ReductionType t);
ReductionType parse_reduction_type(const std::string& s);

struct ReductionData {
    ReductionType type = ReductionType::Good;
    long n = 0;      // multiplicative and potentially multiplicative
    long delta = 0;  // potentially good: valuation of the minimal discriminant
    SquareClassLocal delta_class;
    SquareClassLocal b_class;
    SquareClassLocal minus_c6_class;
    SquareClassLocal minus6b_class;
    std::optional<int> lambda;        // override for the root-number sign
    std::optional<ElemSet> d_prime;   // Gal(F_w / L) inside D_v

    // 12 / gcd(12, delta)
    long e_frak() const;
};

enum class PlaceKind { Real, Complex, Finite };

struct PlaceDescriptor {
    std::string name;
    PlaceKind kind = PlaceKind::Finite;
    long l = 0;  // residue characteristic
    Integer q = 0;
    ElemSet D;  // decomposition group in G
    ElemSet I;  // inertia group
    ReductionData reduction;
    // Optional Frobenius lift fixing the chosen uniformizer's roots; makes square tests exact.
    std::optional<Elem> frobenius;

    bool archimedean() const { return kind != PlaceKind::Finite; }
};

enum class LocalCase { G1, S1, NS1, C2, D2, M2, Archimedean };
std::string to_string(LocalCase c);
LocalCase local_case(const PlaceDescriptor& p);

struct Diagnostic {
    std::string field;
    std::string rule;
    std::string message;
};

std::vector<Diagnostic> validate_place(const Group& g, const PlaceDescriptor& p);
// throws InputError listing every diagnostic
void require_valid(const Group& g, const PlaceDescriptor& p);

// sqrt(x) in an extension with ramification e and residue degree f over the base
bool is_square_in_ext(const SquareClassLocal& x, long e, long f);

struct LocalIndices {
    long e = 1;
    long f = 1;
};

// e = |I| / |H ∩ I|, f = |D| / |H I| for H inside D
LocalIndices local_indices(const Group& g, const PlaceDescriptor& p, const ElemSet& h);

// sqrt(x) lies in the fixed field of H
bool sqrt_in_fixed_field(const Group& g, const PlaceDescriptor& p, const SquareClassLocal& x, const ElemSet& h);

long tamagawa(const Group& g, const PlaceDescriptor& p, const ElemSet& h);
Rational fudge_C(const Group& g, const PlaceDescriptor& p, const ElemSet& h);

// The same fudge factor as a local function (D, I, psi(e, f)); square tests use the (e, f) model.
LocalFn fudge_localfn(const PlaceDescriptor& p);

// Rohrlich-style sign for potentially good reduction: +1 iff the relevant
// element (-1, -3 or -2) is a square in the residue field.
int epsilon_sign(long e_frak, long l, const Integer& q);

struct RootDatum {
    int lambda = 1;
    std::vector<Rational> V;  // class function on D_v, indexed by element of G (zero off D_v)
    bool has_V = false;
};

RootDatum root_datum(const Group& g, const PlaceDescriptor& p);

// (<Res chi, V> + dim chi [lambda = -1]) mod 2
int local_u_contribution(const Group& g, const PlaceDescriptor& p, const ClassFunction& chi);
int local_u_contribution(const Group& g, const PlaceDescriptor& p, const RootDatum& rd, const ClassFunction& chi);

// Legendre-type test: a (coprime to l) is a square in F_q, q = l^k
bool is_square_mod_q(long a, long l, const Integer& q);

}  // namespace krel
