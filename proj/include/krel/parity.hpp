#pragma once

#include "krel/curvelocal.hpp"
#include "krel/regconst.hpp"

#include <optional>
#include <string>
#include <vector>

namespace krel {

struct CurveLocalModel {
    Group group;
    std::vector<PlaceDescriptor> places;  // bad finite places and every archimedean place
    std::string label;

    std::size_t archimedean_count() const;
    std::size_t split_count() const;
};

// Throws InputError naming every invalid place.
void validate_model(const CurveLocalModel& model);

// prod over places v and x in H\G/D_v of fudge_C(v, D_v ∩ x^-1 H x)^(n_H)
Rational global_C_product(const CurveLocalModel& model, const BurnsideElt& theta);

struct RootSign {
    int sign = 1;
    int u = 0;
};

// (-1)^u with u summed over places; +1 for characters that are not orthogonal.
RootSign global_root_sign(const CurveLocalModel& model, const ClassFunction& chi);

struct TauTerm {
    std::size_t rational_index = 0;
    std::string label;  // name of the rational irreducible
    int u = 0;
    std::optional<RegConstValue> value;  // computed only when u = 1
};

struct TheoremMainReport {
    Rational lhs = 1;
    Rational rhs = 1;
    Integer field = 1;
    bool congruent = true;
    std::vector<TauTerm> terms;
};

TheoremMainReport theorem_main_check(const CurveLocalModel& model, const BurnsideElt& theta, const Integer& d);

struct NormVerdict {
    Integer field;
    bool is_norm = true;
};

struct ParityConstraint {
    Integer field;
    std::vector<std::string> characters;  // labels of the chi_tau involved
    int parity = 1;                       // sum of u over the set
    std::string str() const;
};

struct NrtReport {
    std::string rho_label;
    long m = 1;
    BurnsideElt theta;
    Rational product = 1;
    std::vector<NormVerdict> verdicts;
    std::optional<bool> square_verdict;  // P is a rational square; only when m is even
    bool prediction = false;
    std::string prediction_via;  // "norm", "square" or empty
    std::vector<ParityConstraint> constraints;
    std::vector<std::string> warnings;
};

NrtReport nrt_run(const CurveLocalModel& model, std::size_t rho);

struct Obstruction {
    std::string code;
    std::string message;
};

std::vector<Obstruction> nrt_obstructions(const CurveLocalModel& model);

}  // namespace krel
