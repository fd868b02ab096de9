#include "shafbound/bounds.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

namespace shafbound {

namespace {

constexpr double kLn10 = 2.302585092994046;

Int checked_mul_i64(std::int64_t a, std::int64_t b, const char* what) {
    Int r = Int(a) * Int(b);
    if (r > std::numeric_limits<std::int64_t>::max()) throw InvalidInput(what);
    return r;
}

unsigned long to_ulong_exponent(const Int& e) {
    if (e < 0 || e > std::numeric_limits<unsigned long>::max())
        throw Infeasible("exponent does not fit an unsigned long");
    return static_cast<unsigned long>(e);
}

double estimated_digits(const BigFloat& ln_value) {
    if (!ln_value.finite()) return std::numeric_limits<double>::infinity();
    double d = ln_value.to_double(MPFR_RNDU) / kLn10;
    return d < 0 ? 1.0 : d + 1.0;
}

}  // namespace

void FieldInvariants::validate() const {
    if (d_K < 1) throw InvalidInput("FieldInvariants: d_K must be >= 1");
    if (D_K < 1) throw InvalidInput("FieldInvariants: D_K must be >= 1");
    if (N_S < 1) throw InvalidInput("FieldInvariants: N_S must be >= 1");
    if (s < 0) throw InvalidInput("FieldInvariants: s must be >= 0");
    if (s == 0 && N_S != 1) throw InvalidInput("FieldInvariants: empty S must have N_S = 1");
}

std::size_t BoundsOptions::default_digit_ceiling() {
    if (const char* env = std::getenv("SHAFBOUND_DIGIT_CEILING")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
        throw InvalidInput("SHAFBOUND_DIGIT_CEILING must be a positive integer");
    }
    return 1'000'000;
}

ExactOrLog ExactOrLog::exact(Int v, mpfr_rnd_t r) {
    if (v < 0) throw InvalidInput("ExactOrLog: value must be non-negative");
    ExactOrLog e;
    if (v == 0) {
        mpfr_set_inf(e.ln_.raw(), -1);
    } else {
        e.ln_ = ln_int(v, r);
    }
    e.exact_ = std::move(v);
    return e;
}

ExactOrLog ExactOrLog::exact_with_ln(Int v, BigFloat ln) {
    ExactOrLog e;
    e.exact_ = std::move(v);
    e.ln_ = std::move(ln);
    return e;
}

ExactOrLog ExactOrLog::log_only(BigFloat ln) {
    ExactOrLog e;
    e.ln_ = std::move(ln);
    return e;
}

const Int& ExactOrLog::value() const {
    if (!exact_) throw Infeasible("value carried in log form only");
    return *exact_;
}

BigFloat EffectiveBound::ln_bound(mpfr_rnd_t r) const {
    BigFloat ln_base = (base == 1) ? BigFloat::of(0.0) : ln_int(base, r);
    BigFloat e_term;
    if (exponent.is_exact()) {
        e_term = mul(BigFloat::of(exponent.value(), r), ln_base, r);
    } else if (base == 1) {
        e_term = BigFloat::of(0.0);
    } else {
        e_term = mul(exp(exponent.ln(), r), ln_base, r);
    }
    if (scale == 1) return e_term;
    return add(e_term, ln_int(scale, r), r);
}

BigFloat EffectiveBound::ln_ln_bound(mpfr_rnd_t r) const {
    // ln(ln(scale * base^E)) = ln(E ln(base) + ln(scale)), computed from the
    // logs of both terms so the log-exponent regime stays finite.
    BigFloat term_ln;  // ln(E * ln base); -inf when E == 0
    bool have_term = false;
    if (base > 1) {
        term_ln = add(exponent.ln(), log(ln_int(base, r), r), r);
        have_term = !(term_ln.is_inf() && term_ln.sign() < 0);
    }
    if (scale > 1) {
        BigFloat ln_ln_scale = log(ln_int(scale, r), r);
        return have_term ? ln_of_sum(term_ln, ln_ln_scale, r) : ln_ln_scale;
    }
    if (!have_term) throw InvalidInput("ln_ln_bound: undefined for bound <= 1");
    return term_ln;
}

Int EffectiveBound::expanded_value(std::size_t digit_ceiling) const {
    if (base == 1) return scale;
    if (!exponent.is_exact()) throw Infeasible("expanded_value: exponent is in log form");
    double est = estimated_digits(ln_bound(MPFR_RNDU));
    if (est > static_cast<double>(digit_ceiling))
        throw Infeasible("expanded_value: expansion exceeds the digit ceiling");
    Int v = pow_int(base, to_ulong_exponent(exponent.value())) * scale;
    if (digits10(v) > digit_ceiling)
        throw Infeasible("expanded_value: expansion exceeds the digit ceiling");
    return v;
}

Int lenstra_class_number_bound(const FieldInvariants& inv) {
    inv.validate();
    return pow_int(Int(inv.d_K) + inv.D_K, static_cast<unsigned long>(inv.d_K));
}

BigFloat lenstra_sharp_bound(const FieldInvariants& inv, mpfr_rnd_t r) {
    inv.validate();
    BigFloat root = sqrt(BigFloat::of(inv.D_K, r), r);
    if (inv.d_K == 1) return root;  // the (…)^0 / 0! factor is 1
    BigFloat half_log = div(ln_int(inv.D_K, r), BigFloat::of(2L), r);
    BigFloat t = add(BigFloat::of(inv.d_K - 1), half_log, r);
    BigFloat numer = mul(root, pow_si(t, inv.d_K - 1, r), r);
    mpfr_rnd_t down = (r == MPFR_RNDU) ? MPFR_RNDD : (r == MPFR_RNDD ? MPFR_RNDU : r);
    BigFloat fact = BigFloat::of(factorial(static_cast<unsigned long>(inv.d_K - 1)), down);
    return div(numer, fact, r);
}

namespace {

struct LnExponentParts {
    BigFloat ln_inner;  // ln(l d_K + D_K^l N_S^l l^(l d_K s))
    BigFloat ln_E;      // ln of the full exponent
    Int prefactor;      // 20000 l^6 d_K^2 s, exact
    Int ld;             // l d_K
    Int lds;            // l d_K s
};

LnExponentParts ln_exponent_parts(std::int64_t l, const FieldInvariants& inv, mpfr_rnd_t r) {
    LnExponentParts p;
    p.ld = checked_mul_i64(l, inv.d_K, "l * d_K overflows");
    p.lds = p.ld * Int(inv.s);
    BigFloat ln_l = ln_int(l, r);
    BigFloat ln_DL = add(mul(BigFloat::of(l), ln_int(inv.D_K, r), r),
                         add(mul(BigFloat::of(l), ln_int(inv.N_S, r), r),
                             mul(BigFloat::of(p.lds, r), ln_l, r), r),
                         r);
    p.ln_inner = ln_of_sum(ln_int(p.ld, r), ln_DL, r);
    p.prefactor = Int(20000) * pow_int(Int(l), 6) * Int(inv.d_K) * Int(inv.d_K) * Int(inv.s);
    p.ln_E = add(ln_int(p.prefactor, r), mul(BigFloat::of(p.ld, r), p.ln_inner, r), r);
    return p;
}

Int exact_D_L(std::int64_t l, const FieldInvariants& inv, const Int& lds) {
    return pow_int(inv.D_K, static_cast<unsigned long>(l)) *
           pow_int(inv.N_S, static_cast<unsigned long>(l)) *
           pow_int(Int(l), to_ulong_exponent(lds));
}

}  // namespace

EffectiveBound unit_equation_height_bound(std::int64_t l, const FieldInvariants& inv,
                                          const BoundsOptions& opts) {
    inv.validate();
    if (l < 1) throw InvalidInput("unit_equation_height_bound: l must be >= 1");
    if (inv.s == 0)
        throw InvalidInput(
            "unit_equation_height_bound: s = 0 would zero the exponent; "
            "pass the enlarged nonempty place set");

    LnExponentParts p = ln_exponent_parts(l, inv, opts.rounding);
    EffectiveBound b;
    b.base = Int(12) * Int(l) * Int(inv.d_K) * inv.N_S * inv.D_K;
    b.scale = 1;
    b.provenance = {"unit_equation_height_bound", l, inv.d_K, inv.D_K, inv.N_S, inv.s};

    bool stored_exact = false;
    if (!opts.force_log && estimated_digits(p.ln_E) <= static_cast<double>(opts.digit_ceiling)) {
        Int inner = p.ld + exact_D_L(l, inv, p.lds);
        Int e = p.prefactor * pow_int(inner, to_ulong_exponent(p.ld));
        if (digits10(e) <= opts.digit_ceiling) {
            b.exponent = ExactOrLog::exact_with_ln(std::move(e), p.ln_E);
            stored_exact = true;
        }
    }
    if (!stored_exact) b.exponent = ExactOrLog::log_only(p.ln_E);
    return b;
}

ExtensionInvariants extension_invariants(std::int64_t l, const FieldInvariants& inv,
                                         const BoundsOptions& opts) {
    inv.validate();
    if (l < 1) throw InvalidInput("extension_invariants: l must be >= 1");

    ExtensionInvariants out;
    Int d_L = checked_mul_i64(l, inv.d_K, "l * d_K overflows");
    out.d_L = static_cast<std::int64_t>(d_L);
    const mpfr_rnd_t r = opts.rounding;
    Int lds = d_L * Int(inv.s);

    BigFloat ln_DL = add(mul(BigFloat::of(l), ln_int(inv.D_K, r), r),
                         add(mul(BigFloat::of(l), ln_int(inv.N_S, r), r),
                             mul(BigFloat::of(lds, r), ln_int(l, r), r), r),
                         r);
    if (estimated_digits(ln_DL) > static_cast<double>(opts.digit_ceiling))
        throw Infeasible("extension_invariants: D_L bound exceeds the digit ceiling");
    out.D_L_bound = exact_D_L(l, inv, lds);
    out.N_SL_bound = pow_int(inv.N_S, static_cast<unsigned long>(l));
    if (digits10(out.N_SL_bound) > opts.digit_ceiling)
        throw Infeasible("extension_invariants: N_SL bound exceeds the digit ceiling");

    // h_SL <= (l d_K + D_L)^(l d_K), via the class-number bound for L.
    Int inner = d_L + out.D_L_bound;
    BigFloat ln_h = mul(BigFloat::of(d_L, r), ln_of_sum(ln_int(d_L, r), ln_DL, r), r);
    if (!opts.force_log && estimated_digits(ln_h) <= static_cast<double>(opts.digit_ceiling)) {
        Int h = pow_int(inner, to_ulong_exponent(d_L));
        if (digits10(h) <= opts.digit_ceiling) {
            out.h_SL_bound = ExactOrLog::exact_with_ln(std::move(h), ln_h);
        } else {
            out.h_SL_bound = ExactOrLog::log_only(ln_h);
        }
    } else {
        out.h_SL_bound = ExactOrLog::log_only(ln_h);
    }

    out.N_Sprime_bound.base = out.D_L_bound;
    out.N_Sprime_bound.scale = out.N_SL_bound;
    out.N_Sprime_bound.exponent = out.h_SL_bound;
    out.N_Sprime_bound.provenance = {"pid_enlargement_norm_bound", l, inv.d_K, inv.D_K, inv.N_S, inv.s};

    // |S'_L| <= |S_L| + h_SL <= s l + h_SL.
    Int sl = Int(inv.s) * Int(l);
    if (out.h_SL_bound.is_exact()) {
        out.S_prime_card_bound = ExactOrLog::exact(sl + out.h_SL_bound.value(), r);
    } else if (sl == 0) {
        out.S_prime_card_bound = ExactOrLog::log_only(out.h_SL_bound.ln());
    } else {
        out.S_prime_card_bound =
            ExactOrLog::log_only(ln_of_sum(ln_int(sl, r), out.h_SL_bound.ln(), r));
    }
    return out;
}

std::int64_t weyl_group_order(int degree) {
    switch (degree) {
        case 1: return 696'729'600;  // |W(E8)|
        case 2: return 2'903'040;    // |W(E7)|
        case 3: return 51'840;       // |W(E6)|
        case 4: return 1'920;        // |W(D5)|
        default: throw InvalidInput("weyl_group_order: degree must be in 1..4");
    }
}

EffectiveBound dp_point_height_bound(int degree, const FieldInvariants& inv,
                                     const BoundsOptions& opts) {
    EffectiveBound b = unit_equation_height_bound(weyl_group_order(degree), inv, opts);
    b.provenance.formula = "dp_point_height_bound";
    return b;
}

std::int64_t splitting_degree_bound(int degree) { return weyl_group_order(degree); }

Int splitting_degree_stated_constant() { return factorial(240); }

}  // namespace shafbound
