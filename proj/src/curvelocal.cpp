#include "krel/curvelocal.hpp"

#include <algorithm>
#include <sstream>

namespace krel {

std::string to_string(ReductionType t) {
    switch (t) {
        case ReductionType::Good: return "good";
        case ReductionType::SplitMult: return "split_mult";
        case ReductionType::NonsplitMult: return "nonsplit_mult";
        case ReductionType::AddPotGood: return "add_pot_good";
        case ReductionType::AddPotMult: return "add_pot_mult";
    }
    return "?";
}

ReductionType parse_reduction_type(const std::string& s) {
    if (s == "good") return ReductionType::Good;
    if (s == "split_mult" || s == "split") return ReductionType::SplitMult;
    if (s == "nonsplit_mult" || s == "nonsplit") return ReductionType::NonsplitMult;
    if (s == "add_pot_good") return ReductionType::AddPotGood;
    if (s == "add_pot_mult") return ReductionType::AddPotMult;
    throw InputError("unknown reduction type '" + s + "'");
}

long ReductionData::e_frak() const {
    if (delta <= 0) return 1;
    return 12 / gcd_long(12, delta);
}

std::string to_string(LocalCase c) {
    switch (c) {
        case LocalCase::G1: return "1G";
        case LocalCase::S1: return "1S";
        case LocalCase::NS1: return "1NS";
        case LocalCase::C2: return "2C";
        case LocalCase::D2: return "2D";
        case LocalCase::M2: return "2M";
        case LocalCase::Archimedean: return "arch";
    }
    return "?";
}

LocalCase local_case(const PlaceDescriptor& p) {
    if (p.archimedean()) return LocalCase::Archimedean;
    switch (p.reduction.type) {
        case ReductionType::Good: return LocalCase::G1;
        case ReductionType::SplitMult: return LocalCase::S1;
        case ReductionType::NonsplitMult: return LocalCase::NS1;
        case ReductionType::AddPotMult: return LocalCase::M2;
        case ReductionType::AddPotGood: {
            long ef = p.reduction.e_frak();
            Integer r = p.q % ef;
            return r == 1 ? LocalCase::C2 : LocalCase::D2;
        }
    }
    return LocalCase::G1;
}

bool is_square_mod_q(long a, long l, const Integer& q) {
    Integer t = q;
    long k = 0;
    while (t > 1 && t % l == 0) {
        t /= l;
        ++k;
    }
    if (k % 2 == 0) return true;
    return kronecker_symbol(Integer(a), Integer(l)) == 1;
}

int epsilon_sign(long e_frak, long l, const Integer& q) {
    long a = -1;
    if (e_frak == 3) a = -3;
    else if (e_frak == 4) a = -2;
    return is_square_mod_q(a, l, q) ? 1 : -1;
}

bool is_square_in_ext(const SquareClassLocal& x, long e, long f) {
    return (x.val_parity * e) % 2 == 0 && (x.unit_is_square || f % 2 == 0);
}

LocalIndices local_indices(const Group& g, const PlaceDescriptor& p, const ElemSet& h) {
    LocalIndices r;
    long hi = static_cast<long>((h & p.I).count());
    r.e = static_cast<long>(p.I.count()) / hi;
    long hI = static_cast<long>(h.count()) * static_cast<long>(p.I.count()) / hi;
    r.f = static_cast<long>(p.D.count()) / hI;
    (void)g;
    return r;
}

namespace {

bool is_cyclic_set(const Group& g, const ElemSet& s) {
    for (auto x : s.elements())
        if (g.elem_order(x) == s.count()) return true;
    return false;
}

bool quotient_cyclic(const Group& g, const ElemSet& d, const ElemSet& n) {
    auto gens = g.generating_set(n);
    for (auto x : d.elements()) {
        auto t = gens;
        t.push_back(x);
        if (g.closure(t).count() == d.count()) return true;
    }
    return false;
}

bool normal_in(const Group& g, const ElemSet& n, const ElemSet& d) {
    for (auto x : d.elements())
        if (!(g.conjugate(n, x) == n)) return false;
    return true;
}

long pow_mod_long(const Integer& q, long k, long m) {
    Integer r;
    mpz_powm_ui(r.get_mpz_t(), Integer(q % m).get_mpz_t(), static_cast<unsigned long>(k), Integer(m).get_mpz_t());
    return r.get_si();
}

// j with h sigma^-j in I, or -1
long frobenius_exponent(const Group& g, const PlaceDescriptor& p, Elem h) {
    const Elem s = *p.frobenius;
    const long f0 = static_cast<long>(p.D.count() / p.I.count());
    Elem cur = h;
    const Elem sinv = g.inv(s);
    for (long j = 0; j < f0; ++j) {
        if (p.I.test(cur)) return j;
        cur = g.mul(cur, sinv);
    }
    return -1;
}

// Kernel in D of the quadratic character cutting out K(sqrt x), if that field lies in F_w.
std::optional<ElemSet> sqrt_kernel(const Group& g, const PlaceDescriptor& p, const SquareClassLocal& x) {
    const long ii = static_cast<long>(p.I.count());
    const long f0 = static_cast<long>(p.D.count()) / ii;
    if (x.val_parity % 2 == 1 && ii % 2 == 1) return std::nullopt;
    if (!x.unit_is_square && f0 % 2 == 1) return std::nullopt;
    ElemSet squares(g.order());
    for (auto t : p.I.elements()) squares.set(g.mul(t, t));
    ElemSet ker(g.order());
    const Elem s = *p.frobenius;
    for (auto h : p.D.elements()) {
        long j = frobenius_exponent(g, p, h);
        Elem i = g.mul(h, g.inv(g.pow(s, j)));
        int sign = 1;
        if (x.val_parity % 2 == 1 && !squares.test(i)) sign = -sign;
        if (!x.unit_is_square && j % 2 == 1) sign = -sign;
        if (sign == 1) ker.set(h);
    }
    return ker;
}

void diag(std::vector<Diagnostic>& out, std::string field, std::string rule, std::string msg) {
    out.push_back(Diagnostic{std::move(field), std::move(rule), std::move(msg)});
}

bool valid_class(const SquareClassLocal& c) { return c.val_parity == 0 || c.val_parity == 1; }

SquareClassLocal times(const SquareClassLocal& a, const SquareClassLocal& b) {
    return {(a.val_parity + b.val_parity) % 2, a.unit_is_square == b.unit_is_square};
}

// c6 * Delta; its square roots decide the far components of an I_n^* fibre with n odd
SquareClassLocal c6_delta_class(const ReductionData& r, long l, const Integer& q) {
    return times(times(SquareClassLocal{0, is_square_mod_q(-1, l, q)}, r.minus_c6_class), r.delta_class);
}

void check_dihedral_quotient(const Group& g, const PlaceDescriptor& p, const ElemSet& dp, long ef,
                             std::vector<Diagnostic>& out) {
    if (!g.is_subgroup(dp) || !dp.subset_of(p.D)) {
        diag(out, "reduction.d_prime", "d_prime_subgroup", "D' must be a subgroup of D_v");
        return;
    }
    if (!normal_in(g, dp, p.D)) {
        diag(out, "reduction.d_prime", "d_prime_normal", "D' must be normal in D_v");
        return;
    }
    if (static_cast<long>(p.D.count() / dp.count()) != 2 * ef || p.D.count() % dp.count() != 0) {
        diag(out, "reduction.d_prime", "d_prime_dihedral",
             "D_v/D' must have order " + std::to_string(2 * ef));
        return;
    }
    ElemSet rot = g.product(p.I, dp);
    if (static_cast<long>(rot.count() / dp.count()) != ef || !quotient_cyclic(g, rot, dp)) {
        diag(out, "reduction.d_prime", "d_prime_dihedral", "image of I_v in D_v/D' must be cyclic of order e");
        return;
    }
    for (auto x : p.D.elements()) {
        if (rot.test(x)) continue;
        // reflections have order 2 modulo D' and invert rotations
        if (!dp.test(g.mul(x, x))) {
            diag(out, "reduction.d_prime", "d_prime_dihedral", "D_v/D' is not dihedral");
            return;
        }
        for (auto r : rot.elements()) {
            Elem c = g.mul(g.conj(r, x), r);
            if (!dp.test(c)) {
                diag(out, "reduction.d_prime", "d_prime_dihedral", "D_v/D' is not dihedral");
                return;
            }
        }
    }
}

}  // namespace

std::vector<Diagnostic> validate_place(const Group& g, const PlaceDescriptor& p) {
    std::vector<Diagnostic> out;
    const auto& r = p.reduction;
    if (r.lambda && *r.lambda != 1 && *r.lambda != -1) diag(out, "reduction.lambda", "lambda_sign", "lambda must be +1 or -1");
    if (p.archimedean()) {
        if (p.D.universe() == g.order()) {
            if (!g.is_subgroup(p.D)) diag(out, "D_v", "subgroup", "D_v is not a subgroup");
            else if (p.D.count() > (p.kind == PlaceKind::Real ? 2u : 1u))
                diag(out, "D_v", "archimedean_decomposition", "archimedean decomposition group too large");
        }
        return out;
    }
    if (p.D.universe() != g.order() || p.I.universe() != g.order()) {
        diag(out, "D_v", "subgroup", "D_v and I_v must be subsets of G");
        return out;
    }
    if (p.l < 2 || !is_prime(Integer(p.l))) diag(out, "l", "prime_residue_char", "l must be prime");
    else {
        Integer t = p.q;
        while (t > 1 && t % p.l == 0) t /= p.l;
        if (p.q < p.l || t != 1) diag(out, "q", "q_power_of_l", "q must be a power of l");
    }
    if (!g.is_subgroup(p.D)) {
        diag(out, "D_v", "subgroup", "D_v is not a subgroup");
        return out;
    }
    if (!g.is_subgroup(p.I) || !p.I.subset_of(p.D)) {
        diag(out, "I_v", "subgroup", "I_v is not a subgroup of D_v");
        return out;
    }
    if (!normal_in(g, p.I, p.D)) diag(out, "I_v", "inertia_normal", "I_v is not normal in D_v");
    else if (!quotient_cyclic(g, p.D, p.I)) diag(out, "D_v", "cyclic_quotient", "D_v/I_v is not cyclic");
    if (!out.empty()) return out;

    const long ii = static_cast<long>(p.I.count());
    const long f0 = static_cast<long>(p.D.count()) / ii;
    if (p.frobenius) {
        const Elem s = *p.frobenius;
        bool ok = s < g.order() && p.D.test(s);
        if (!ok) diag(out, "frobenius", "frobenius_in_D", "Frobenius must lie in D_v");
        else {
            if (static_cast<long>(g.elem_order(s)) != f0)
                diag(out, "frobenius", "frobenius_order", "Frobenius must have order [D_v:I_v]");
            if (!is_cyclic_set(g, p.I)) diag(out, "I_v", "tame_inertia", "I_v must be cyclic");
            if (ii % p.l == 0) diag(out, "I_v", "tame_inertia", "wild inertia is not modelled");
            for (auto t : p.I.elements()) {
                long qm = pow_mod_long(p.q, 1, static_cast<long>(g.elem_order(t)));
                if (g.conj(t, s) != g.pow(t, qm)) {
                    diag(out, "frobenius", "frobenius_action", "Frobenius must act on I_v by the q-th power");
                    break;
                }
            }
        }
    }

    const bool additive = r.type == ReductionType::AddPotGood || r.type == ReductionType::AddPotMult;
    if (additive && p.l < 5) diag(out, "l", "additive_residue_char", "additive reduction needs residue characteristic >= 5");
    if ((r.type == ReductionType::SplitMult || r.type == ReductionType::NonsplitMult ||
         r.type == ReductionType::AddPotMult) && r.n < 1)
        diag(out, "reduction.n", "n_positive", "n must be at least 1");
    for (auto* c : {&r.delta_class, &r.b_class, &r.minus_c6_class, &r.minus6b_class})
        if (!valid_class(*c)) diag(out, "reduction", "square_class", "val_parity must be 0 or 1");
    if (r.d_prime && !additive) diag(out, "reduction.d_prime", "d_prime_unused", "D' only applies to additive reduction");
    if (!out.empty()) return out;

    if (r.type == ReductionType::AddPotGood) {
        static const long allowed[] = {2, 3, 4, 6, 8, 9, 10};
        if (std::find(std::begin(allowed), std::end(allowed), r.delta) == std::end(allowed)) {
            diag(out, "reduction.delta", "delta_range", "delta must be one of 2,3,4,6,8,9,10");
            return out;
        }
        if ((r.delta * ii) % 12 != 0)
            diag(out, "reduction.delta", "good_reduction_attained",
                 "delta*|I_v| = " + std::to_string(r.delta * ii) + " is not divisible by 12");
        if (r.delta_class.val_parity != r.delta % 2)
            diag(out, "reduction.delta_class", "discriminant_valuation", "discriminant valuation parity must match delta");
        const long ef = r.e_frak();
        const long qm = mod_long(Integer(p.q % ef).get_si(), ef);
        const bool c2 = qm == 1;
        const bool d2 = qm == ef - 1 && ef > 2;
        if (!c2 && !d2) diag(out, "q", "q_congruence", "q must be +-1 modulo " + std::to_string(ef));
        if (c2 && ef == 6 && !r.delta_class.is_square())
            diag(out, "reduction.delta_class", "tame_cubic_square_discriminant",
                 "e = 6 with q = 1 mod 6 forces the discriminant to be a square");
        if (d2) {
            if (!r.d_prime) diag(out, "reduction.d_prime", "d_prime_required", "case 2D needs D'");
            else check_dihedral_quotient(g, p, *r.d_prime, ef, out);
        } else if (r.d_prime) {
            diag(out, "reduction.d_prime", "d_prime_unused", "D' is only used in case 2D");
        }
    }
    if (r.type == ReductionType::AddPotMult) {
        if (r.minus_c6_class.is_square())
            diag(out, "reduction.minus_c6_class", "minus_c6_nonsquare", "-c6 must be a non-square");
        else {
            bool inside = sqrt_in_fixed_field(g, p, r.minus_c6_class, g.trivial());
            if (!inside && r.d_prime)
                diag(out, "reduction.d_prime", "d_prime_forbidden", "L is not inside F_w, so D' must be absent");
            if (inside && r.d_prime) {
                const auto& dp = *r.d_prime;
                if (!g.is_subgroup(dp) || !dp.subset_of(p.D) || dp.count() * 2 != p.D.count())
                    diag(out, "reduction.d_prime", "d_prime_index_two", "D' must have index 2 in D_v");
                else if (p.frobenius) {
                    auto k = sqrt_kernel(g, p, r.minus_c6_class);
                    if (k && !(*k == dp))
                        diag(out, "reduction.d_prime", "d_prime_consistent", "D' is not the kernel cutting out L");
                }
            }
            if (inside && !r.d_prime && !p.frobenius)
                diag(out, "reduction.d_prime", "d_prime_required", "L lies in F_w, so D' is needed");
        }
    }
    return out;
}

void require_valid(const Group& g, const PlaceDescriptor& p) {
    auto d = validate_place(g, p);
    if (d.empty()) return;
    std::ostringstream os;
    os << "place '" << p.name << "' is invalid:";
    for (auto& x : d) os << " [" << x.rule << "] " << x.field << ": " << x.message << ";";
    throw InputError(os.str());
}

bool sqrt_in_fixed_field(const Group& g, const PlaceDescriptor& p, const SquareClassLocal& x, const ElemSet& h) {
    if (x.is_square()) return true;
    if (!p.frobenius) {
        auto li = local_indices(g, p, h);
        return is_square_in_ext(x, li.e, li.f);
    }
    auto k = sqrt_kernel(g, p, x);
    return k && h.subset_of(*k);
}

namespace {

long tamagawa_pot_good(const Group& g, const PlaceDescriptor& p, const ElemSet& h, long e) {
    const auto& r = p.reduction;
    switch (gcd_long(r.delta * e, 12)) {
        case 2: return 1;
        case 3: return 2;
        case 4: return sqrt_in_fixed_field(g, p, r.b_class, h) ? 3 : 1;
        case 6: return sqrt_in_fixed_field(g, p, r.delta_class, h) ? 1 : 2;
        default: return 1;
    }
}

long tamagawa_pot_mult(const Group& g, const PlaceDescriptor& p, const ElemSet& h, long e) {
    const auto& r = p.reduction;
    if (e % 2 == 0) return sqrt_in_fixed_field(g, p, r.minus6b_class, h) ? e * r.n : 2;
    if (r.n % 2 == 1) return sqrt_in_fixed_field(g, p, c6_delta_class(r, p.l, p.q), h) ? 4 : 2;
    return sqrt_in_fixed_field(g, p, r.delta_class, h) ? 4 : 2;
}

}  // namespace

long tamagawa(const Group& g, const PlaceDescriptor& p, const ElemSet& h) {
    if (p.archimedean()) return 1;
    if (!h.subset_of(p.D)) throw InputError("tamagawa: subgroup not inside D_v");
    auto li = local_indices(g, p, h);
    const auto& r = p.reduction;
    switch (r.type) {
        case ReductionType::Good: return 1;
        case ReductionType::SplitMult: return li.e * r.n;
        case ReductionType::NonsplitMult:
            if (li.f % 2 == 0) return li.e * r.n;
            return (li.e * r.n) % 2 == 0 ? 2 : 1;
        case ReductionType::AddPotGood: return tamagawa_pot_good(g, p, h, li.e);
        case ReductionType::AddPotMult: return tamagawa_pot_mult(g, p, h, li.e);
    }
    return 1;
}

Rational fudge_C(const Group& g, const PlaceDescriptor& p, const ElemSet& h) {
    Rational c(tamagawa(g, p, h));
    if (p.archimedean()) return c;
    auto li = local_indices(g, p, h);
    const auto& r = p.reduction;
    if (r.type == ReductionType::AddPotGood) c *= rational_pow(Rational(p.q), (r.delta * li.e / 12) * li.f);
    if (r.type == ReductionType::AddPotMult) c *= rational_pow(Rational(p.q), (li.e / 2) * li.f);
    return c;
}

LocalFn fudge_localfn(const PlaceDescriptor& p) {
    const auto r = p.reduction;
    const Integer q = p.q;
    const SquareClassLocal far = c6_delta_class(r, p.l, p.q);
    auto tam = [r, far](long e, long f) -> Rational {
        switch (r.type) {
            case ReductionType::Good: return 1;
            case ReductionType::SplitMult: return Rational(e * r.n);
            case ReductionType::NonsplitMult:
                if (f % 2 == 0) return Rational(e * r.n);
                return Rational((e * r.n) % 2 == 0 ? 2 : 1);
            case ReductionType::AddPotGood:
                switch (gcd_long(r.delta * e, 12)) {
                    case 3: return 2;
                    case 4: return is_square_in_ext(r.b_class, e, f) ? 3 : 1;
                    case 6: return is_square_in_ext(r.delta_class, e, f) ? 1 : 2;
                    default: return 1;
                }
            case ReductionType::AddPotMult:
                if (e % 2 == 0) return Rational(is_square_in_ext(r.minus6b_class, e, f) ? e * r.n : 2);
                if (r.n % 2 == 1) return Rational(is_square_in_ext(far, e, f) ? 4 : 2);
                return Rational(is_square_in_ext(r.delta_class, e, f) ? 4 : 2);
        }
        return 1;
    };
    std::vector<LocalPsi> parts{LocalPsi::custom(tam, "c_" + to_string(r.type))};
    if (r.type == ReductionType::AddPotGood) parts.push_back(LocalPsi::pow_floor(q, r.delta));
    if (r.type == ReductionType::AddPotMult) parts.push_back(LocalPsi::pow_half(q));
    return LocalFn{p.D, p.I, LocalPsi::product(std::move(parts))};
}

namespace {

// 2cos(2 pi / o) for the orders of rotations in a dihedral group of degree 3, 4 or 6
long rotation_trace(long o) {
    switch (o) {
        case 1: return 2;
        case 2: return -2;
        case 3: return -1;
        case 4: return 0;
        case 6: return 1;
    }
    throw MathError("rotation of unexpected order " + std::to_string(o));
}

std::optional<ElemSet> effective_d_prime(const Group& g, const PlaceDescriptor& p) {
    const auto& r = p.reduction;
    if (r.d_prime) return r.d_prime;
    if (r.type == ReductionType::AddPotMult && p.frobenius) return sqrt_kernel(g, p, r.minus_c6_class);
    return std::nullopt;
}

}  // namespace

RootDatum root_datum(const Group& g, const PlaceDescriptor& p) {
    RootDatum rd;
    rd.V.assign(g.order(), Rational(0));
    if (p.archimedean()) {
        rd.lambda = -1;
        return rd;
    }
    const auto& r = p.reduction;
    auto set_V = [&](auto fn) {
        rd.has_V = true;
        for (auto x : p.D.elements()) rd.V[x] = fn(x);
    };
    switch (local_case(p)) {
        case LocalCase::G1: break;
        case LocalCase::S1: set_V([](Elem) { return Rational(1); }); break;
        case LocalCase::NS1: {
            const long f0 = static_cast<long>(p.D.count() / p.I.count());
            if (f0 % 2 == 0) {
                ElemSet sq = p.I;
                for (auto x : p.D.elements()) sq.set(g.mul(x, x));
                ElemSet even = g.closure(g.generating_set(sq));
                set_V([&](Elem x) { return Rational(even.test(x) ? 1 : -1); });
            }
            break;
        }
        case LocalCase::C2: rd.lambda = r.lambda.value_or(epsilon_sign(r.e_frak(), p.l, p.q)); break;
        case LocalCase::D2: {
            rd.lambda = r.lambda.value_or(-epsilon_sign(r.e_frak(), p.l, p.q));
            if (!r.d_prime) throw InputError("place '" + p.name + "': case 2D needs D'");
            const ElemSet& dp = *r.d_prime;
            ElemSet rot = g.product(p.I, dp);
            set_V([&](Elem x) {
                if (!rot.test(x)) return Rational(0);
                long o = 1;
                Elem y = x;
                while (!dp.test(y)) {
                    y = g.mul(y, x);
                    ++o;
                }
                return Rational(2 + rotation_trace(o));
            });
            break;
        }
        case LocalCase::M2: {
            int chi_minus_one = 1;
            if (r.minus_c6_class.val_parity % 2 == 1) chi_minus_one = is_square_mod_q(-1, p.l, p.q) ? 1 : -1;
            rd.lambda = r.lambda.value_or(chi_minus_one);
            bool inside = sqrt_in_fixed_field(g, p, r.minus_c6_class, g.trivial());
            if (inside) {
                auto dp = effective_d_prime(g, p);
                if (!dp) throw InputError("place '" + p.name + "': L lies in F_w but D' is missing");
                set_V([&](Elem x) { return Rational(dp->test(x) ? 1 : -1); });
            }
            break;
        }
        case LocalCase::Archimedean: rd.lambda = -1; break;
    }
    return rd;
}

int local_u_contribution(const Group& g, const PlaceDescriptor& p, const RootDatum& rd, const ClassFunction& chi) {
    long u = 0;
    if (rd.lambda == -1) {
        CycNumber d = chi.degree();
        if (!d.is_rational()) throw MathError("character degree not rational");
        u += d.to_rational().get_num().get_si();
    }
    if (rd.has_V) {
        std::vector<Rational> w(g.classes().size(), Rational(0));
        for (auto x : p.D.elements())
            if (rd.V[x] != 0) w[g.class_of(x)] += rd.V[x];
        CycNumber s;
        for (std::size_t c = 0; c < w.size(); ++c)
            if (w[c] != 0) s += chi[c] * w[c];
        if (!s.is_rational()) throw MathError("restriction inner product is not rational");
        Rational ip = s.to_rational() / Rational(static_cast<long>(p.D.count()));
        if (ip.get_den() != 1) throw MathError("restriction inner product is not an integer");
        u += Integer(ip.get_num() % 2).get_si();
    }
    return static_cast<int>(((u % 2) + 2) % 2);
}

int local_u_contribution(const Group& g, const PlaceDescriptor& p, const ClassFunction& chi) {
    return local_u_contribution(g, p, root_datum(g, p), chi);
}

}  // namespace krel
