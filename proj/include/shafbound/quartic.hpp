#ifndef SHAFBOUND_QUARTIC_HPP
#define SHAFBOUND_QUARTIC_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shafbound/delpezzo.hpp"
#include "shafbound/sunit.hpp"
#include "shafbound/ternary_form.hpp"

namespace shafbound {

/// Thrown by one Macaulay attempt whose denominator minor vanishes; the
/// discriminant driver retries after a unimodular coordinate change.
struct MacaulayDenominatorZero : std::runtime_error {
    MacaulayDenominatorZero() : std::runtime_error("Macaulay denominator determinant is zero") {}
};

/// Resultant of three integer ternary cubics by the classical Macaulay
/// construction in critical degree 7: the 36x36 coefficient determinant
/// divided exactly by the 9x9 extraneous minor. Normalized so that
/// Res(x^3, y^3, z^3) = 1.
Int macaulay_resultant_cubics(const std::array<TernaryForm, 3>& cubics);

struct MacaulayOptions {
    std::uint64_t seed = 1729;  // deterministic retry coordinate changes
    int max_attempts = 16;
};

/// Discriminant of a quartic form: Res(f_x, f_y, f_z) under the above
/// normalization. Zero iff the curve is singular over the algebraic closure.
/// Scales by lambda^27 under f -> lambda f and by det(M)^36 under f -> f o M.
Rat quartic_discriminant(const TernaryForm& f, const MacaulayOptions& opts = {});

/// Res(f_x, f_y, f_z) carries the universal factor 2^14 for quartics: in
/// characteristic 2 the Euler relation x f_x + y f_y + z f_z = 4f is vacuous,
/// so the gradient alone always acquires common zeros there. Dividing it out
/// gives the primitive discriminant, whose prime support (2 included) is
/// exactly the set of primes of singular reduction. The division is checked
/// to be exact on integer forms.
Rat quartic_primitive_discriminant(const TernaryForm& f, const MacaulayOptions& opts = {});

/// True iff the three cubics share a projective zero over the algebraic
/// closure: surjectivity of multiplication into degree 7 (36 monomials) fails.
/// Decides Res = 0 without the Macaulay denominator.
bool cubics_have_common_zero(const std::array<TernaryForm, 3>& cubics);

/// Prime support of an integer discriminant value. Factors found by trial
/// division and Pollard rho; a composite remainder beyond those methods is
/// reported in `unfactored` instead of being guessed at.
struct DiscSupport {
    std::vector<Int> primes;  // ascending
    Int unfactored = 1;       // 1 when the support is complete
};

DiscSupport discriminant_support(const Int& value);

/// Symbolic record of the degree-2 del Pezzo double cover w^2 = f(x0,x1,x2)
/// in P(1,1,1,2); requires a smooth quartic. bad_primes is the discriminant
/// support together with 2.
struct DoubleCoverRecord {
    TernaryForm quartic;
    std::string equation;       // "w^2 = f(x0, x1, x2)"
    std::vector<Int> bad_primes;
};

DoubleCoverRecord double_cover_from_quartic(const TernaryForm& f, const MacaulayOptions& opts = {});

/// The net of cubics through 7 points in general position: a basis of the
/// 3-dimensional kernel of the 7x10 monomial evaluation matrix, primitive
/// integer coefficients, each member re-checked to vanish at all 7 points.
struct CubicNet {
    std::array<TernaryForm, 3> basis;
    std::vector<ProjPointQ> points;
};

CubicNet cubic_net_through_7(std::span<const ProjPointQ> points);

/// Determinant of the 3x3 Jacobian of the net: the degree-6 ramification
/// curve of the anticanonical double cover. Vanishes at the 7 base points.
TernaryForm jacobian_sextic(const CubicNet& net);

/// The branch quartic B with B(F0, F1, F2) = c * J^2: the unique (up to
/// scale) solution of the 91-equation linear system in the 15 coefficients
/// of B and the scalar c. B comes back primitive-integer with positive
/// leading coefficient, and the identity is re-verified exactly.
struct BranchQuartic {
    TernaryForm form;  // B
    Rat factor;        // c
};

BranchQuartic branch_quartic(const CubicNet& net);

struct QuarticCurve {
    TernaryForm form;
    Rat discriminant;
    DiscSupport bad_primes;
};

/// Full degree-2 pipeline: 7 points -> net -> branch quartic -> discriminant.
/// The pullback identity is asserted along the way; primes in the quartic's
/// support beyond S and 2 are surfaced in excess_primes, never dropped.
struct DpQuarticResult {
    QuarticCurve curve;
    BranchQuartic branch;
    CubicNet net;
    std::vector<Int> excess_primes;
};

DpQuarticResult quartic_from_dp_config(const BlowupConfig& config, const MacaulayOptions& opts = {});

struct ReductionVerdict {
    bool verdict = false;
    bool singular = false;
    std::vector<Int> support;
    Int unfactored = 1;
    bool cover_requires_2 = false;  // set when 2 is missing from S
};

/// True iff the discriminant support of the (primitive integer) quartic lies
/// in S. The double-cover smoothness requirement that 2 be invertible is
/// flagged separately and does not affect the verdict.
ReductionVerdict good_reduction_verdict(const TernaryForm& f, const PrimeSet& s,
                                        const MacaulayOptions& opts = {});

/// Invariants that separate projectively inequivalent quartics: discriminant
/// support with valuations, and point counts over the first five primes of
/// good reduction. Equal fingerprints do not certify equivalence.
struct QuarticFingerprint {
    std::vector<Int> support;
    std::vector<long> valuations;                          // aligned with support
    std::vector<std::pair<std::uint64_t, long>> point_counts;  // (p, #C(F_p))
    Int unfactored = 1;

    bool operator==(const QuarticFingerprint& o) const = default;
};

QuarticFingerprint equivalence_fingerprint(const TernaryForm& f, const MacaulayOptions& opts = {});

/// Projective point count of {f = 0} over F_p (p prime, not dividing the
/// primitive form's content).
long point_count_mod_p(const TernaryForm& f, std::uint64_t p);

}  // namespace shafbound

#endif
