#ifndef SHAFBOUND_BOUNDS_HPP
#define SHAFBOUND_BOUNDS_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "shafbound/bigfloat.hpp"
#include "shafbound/numeric.hpp"

namespace shafbound {

/// Invariants of a number field K together with a finite set S of finite
/// places: degree, absolute discriminant, norm of S, and |S|. Only the
/// numerical data enters the bound formulas, so general fields are accepted
/// here even though solving and enumeration are rational-only.
struct FieldInvariants {
    std::int64_t d_K = 1;  // field degree, >= 1
    Int D_K = 1;           // absolute discriminant value, >= 1
    Int N_S = 1;           // product of residue-field sizes over S, >= 1
    std::int64_t s = 0;    // |S|

    void validate() const;
};

/// Evaluation options shared by the bound operations.
struct BoundsOptions {
    std::size_t digit_ceiling = default_digit_ceiling();
    bool force_log = false;          // skip the exact exponent path
    mpfr_rnd_t rounding = MPFR_RNDU; // direction for every log surrogate

    static std::size_t default_digit_ceiling();  // SHAFBOUND_DIGIT_CEILING or 10^6
};

/// Non-negative integer that is either materialized exactly or carried as a
/// natural-log surrogate (>= 50 significant digits, directed rounding).
/// The log view is always available.
class ExactOrLog {
public:
    static ExactOrLog exact(Int v, mpfr_rnd_t r = MPFR_RNDU);
    static ExactOrLog exact_with_ln(Int v, BigFloat ln);
    static ExactOrLog log_only(BigFloat ln);

    bool is_exact() const { return exact_.has_value(); }
    const Int& value() const;          // throws Infeasible in log mode
    const BigFloat& ln() const { return ln_; }

private:
    std::optional<Int> exact_;
    BigFloat ln_;  // ln of the value; -inf encodes value 0
};

struct BoundProvenance {
    std::string formula;
    std::int64_t l = 0;
    std::int64_t d_K = 0;
    Int D_K = 0;
    Int N_S = 0;
    std::int64_t s = 0;
};

/// Tower-shaped upper bound scale * base^exponent with exact base and scale,
/// and an exact-or-log exponent. scale is 1 except where a bound genuinely
/// carries a leading factor.
struct EffectiveBound {
    Int base = 1;
    Int scale = 1;
    ExactOrLog exponent = ExactOrLog::exact(Int(0));
    BoundProvenance provenance;

    /// ln(scale * base^exponent). In log-exponent mode the result can
    /// overflow to +inf; ln_ln_bound stays finite in that regime.
    BigFloat ln_bound(mpfr_rnd_t r = MPFR_RNDU) const;

    /// ln ln of the bound; requires bound > 1.
    BigFloat ln_ln_bound(mpfr_rnd_t r = MPFR_RNDU) const;

    /// Fully expanded integer value, available when the exponent is exact and
    /// the expansion stays below the digit ceiling.
    Int expanded_value(std::size_t digit_ceiling) const;
};

/// (d_K + D_K)^(d_K), an upper bound for the class number of O_K.
Int lenstra_class_number_bound(const FieldInvariants& inv);

/// The sharper intermediate class-number bound
/// sqrt(D_K) * (d_K - 1 + log(D_K)/2)^(d_K-1) / (d_K-1)!, rounded upward.
BigFloat lenstra_sharp_bound(const FieldInvariants& inv, mpfr_rnd_t r = MPFR_RNDU);

/// Invariants of a degree-l extension L/K ramified only over S, together
/// with the class-number and place-set bounds for the principal-ideal-domain
/// enlargement S'_L of S_L.
struct ExtensionInvariants {
    std::int64_t d_L = 1;           // l * d_K, exact
    Int D_L_bound = 1;              // D_K^l * N_S^l * l^(l d_K s)
    Int N_SL_bound = 1;             // N_S^l
    ExactOrLog h_SL_bound = ExactOrLog::exact(Int(1));        // (l d_K + D_L)^(l d_K)
    EffectiveBound N_Sprime_bound;  // N_SL * D_L^(h_SL)
    ExactOrLog S_prime_card_bound = ExactOrLog::exact(Int(0)); // s l + h_SL
};

/// Rejects l = 0. Throws Infeasible when D_L or N_SL cannot be materialized
/// below the digit ceiling; h_SL and downstream fields fall back to log form
/// on their own.
ExtensionInvariants extension_invariants(std::int64_t l, const FieldInvariants& inv,
                                         const BoundsOptions& opts = {});

/// Height bound (12 l d_K N_S D_K)^E with
/// E = 20000 l^6 d_K^2 s (l d_K + D_K^l N_S^l l^(l d_K s))^(l d_K)
/// for solutions of the unit equation a + (1-a) = 1 in S'-units.
/// Rejects s = 0: the exponent would vanish; pass the enlarged nonempty set.
EffectiveBound unit_equation_height_bound(std::int64_t l, const FieldInvariants& inv,
                                          const BoundsOptions& opts = {});

/// Order of the Weyl group acting on the lines of a degree-d del Pezzo
/// surface: W(E8), W(E7), W(E6), W(D5) for d = 1, 2, 3, 4.
std::int64_t weyl_group_order(int degree);

/// unit_equation_height_bound instantiated with l = weyl_group_order(d);
/// bounds the height of the blow-up coordinates a_i, b_i.
EffectiveBound dp_point_height_bound(int degree, const FieldInvariants& inv,
                                     const BoundsOptions& opts = {});

/// Bound on the degree of the splitting field of the lines: the Weyl order
/// l_d (the sharp value; 240! is the coarse stated constant).
std::int64_t splitting_degree_bound(int degree);

/// 240! (469 decimal digits), exposed for reporting next to the sharp bound.
Int splitting_degree_stated_constant();

}  // namespace shafbound

#endif
