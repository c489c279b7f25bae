#pragma once

#include "krel/curvelocal.hpp"
#include "krel/parity.hpp"
#include "krel/regconst.hpp"

#include <cstdint>

#include <optional>
#include <string>
#include <vector>

namespace krel {

struct MetacyclicSpec {
    long e = 2;
    long k = 0;
    int sign = 1;
    std::string str() const;
};

// <x, y | x^e = y^(2^k) = 1, y x y^-1 = x^sign> with I = <x>
struct Metacyclic {
    MetacyclicSpec spec;
    Group group;
    Elem x = 0;
    Elem y = 0;
    ElemSet I;
    std::vector<Elem> by_code;  // x^i y^j stored at i + e*j
    // x^i y^j
    Elem element(long i, long j) const;
};

Metacyclic build_metacyclic(const MetacyclicSpec& spec);

enum class AppendixCase { C2, D2, M2 };
std::string to_string(AppendixCase c);
AppendixCase parse_appendix_case(const std::string& s);

// How square roots in subfields are decided.
enum class SquareModel { Frobenius, IndicesOnly };

struct TamagawaConfig {
    AppendixCase which = AppendixCase::C2;
    MetacyclicSpec spec;
    long delta = 0;  // potentially good cases
    long n = 0;      // potentially multiplicative case
    long l = 5;
    SquareClassLocal b_class;
    SquareClassLocal delta_class;
    SquareClassLocal minus6b_class;
    std::string str() const;
};

struct ConfigResult {
    TamagawaConfig config;
    bool pass = true;
    std::vector<Integer> fields;
    std::string diagnostic;  // failing field and relation
};

// Every admissible configuration for the case over the given e and k ranges.
std::vector<TamagawaConfig> tamagawa_configs(AppendixCase which, const std::vector<long>& e_values, long k_max);

// Place descriptor realising the configuration on its metacyclic group.
PlaceDescriptor appendix_place(const Metacyclic& m, const TamagawaConfig& c, SquareModel model);

// c_v/a (2C, 2D) or c_v/d (2M) on subgroup classes
SubgroupFunction appendix_ratio(const Metacyclic& m, const TamagawaConfig& c, SquareModel model);

ConfigResult appendix_tamagawa_check(const TamagawaConfig& c, SquareModel model = SquareModel::Frobenius);

// Quadratic fields tested for a group: those inside Q(zeta_exponent) plus a fixed generic sample.
std::vector<Integer> appendix_fields(const Group& g);

// Appendix B: differential term on cyclic quotients.
struct DifferentialRow {
    long n = 1;
    long exponent = 0;      // h(Psi_n) = q^exponent
    Rational h_value = 1;   // h(Psi_n)
    Rational hg_value = 1;  // (h g)(Psi_n)
    std::vector<Integer> fields;  // quadratic subfields of Q(zeta_n) fixed by q
    bool norms_ok = true;         // the relevant value is a norm from every field
    bool table_ok = true;         // agreement with the corrected tables
    bool printed_table_ok = true; // agreement with the tables as printed
    std::string note;
};

struct DifferentialResult {
    long e_frak = 2;
    long delta = 6;
    long l = 5;
    Integer q = 5;
    bool case_2d = false;
    bool pass = true;
    std::size_t printed_mismatches = 0;
    std::vector<DifferentialRow> rows;
};

// delta values compatible with e
const std::vector<long>& admissible_deltas(long e_frak);

struct DifferentialRun {
    long e_frak = 2;
    long delta = 6;
    long l = 5;
    Integer q = 5;
};

// Every admissible (e, delta) with primes 5 <= l <= l_max, l = +-1 mod e, and q in {l, l^2}.
std::vector<DifferentialRun> differential_runs(const std::vector<long>& e_values, long l_max);

DifferentialResult appendix_differential_check(long e_frak, long delta, long l, const Integer& q, long r_max);

// Printed tables, or the tables with the deviations found by direct computation applied.
enum class TableReading { AsPrinted, Corrected };

// n with h(Psi_n) a non-square, tabulated by whether e divides n
bool table_h_nonsquare(long e_frak, long delta, long n, TableReading reading = TableReading::Corrected);

// Human readable list of the corrections applied by TableReading::Corrected.
std::vector<std::string> table_errata();

struct Table5Row {
    bool covered = false;  // n belongs to a tabulated family
    bool matched = false;  // and its congruence condition is listed
    std::vector<Integer> fields;          // expected quadratic subfields
    std::vector<SquareClass> values;      // acceptable square classes of (h g)(Psi_n)
};

// l is substituted into the tabulated values
Table5Row table5_row(long e_frak, long delta, long n, const Integer& l, const Integer& q,
                     TableReading reading = TableReading::Corrected);

struct LemmaB3Result {
    Integer field;
    std::vector<long> primes;  // split primes tested
    bool pass = true;
};

LemmaB3Result lemma_b3_check(const Integer& d, long l_max);

// Order of each rational irreducible in the quotient of rational characters by permutation characters,
// paired with the predicted order where one is known (abelian groups, e = 4 and e = 6).
struct CHatProbe {
    std::size_t rational_index = 0;
    long degree = 1;
    long k = 1;
    std::optional<long> expected;
    std::string quotient;  // structure of G / kernel
};

std::vector<CHatProbe> chat_probes(const Metacyclic& m);

// Random tame models: decomposition groups <tau> x| <sigma> with sigma as Frobenius,
// additive data kept physically consistent with the residue field.
struct RandomModelOptions {
    std::size_t max_finite_places = 3;
    bool allow_additive = true;
};

CurveLocalModel random_curve_model(const Group& g, std::uint64_t seed, const RandomModelOptions& opt = {});

// Groups used by the global congruence sweep.
std::vector<Group> sweep_groups();

}  // namespace krel
