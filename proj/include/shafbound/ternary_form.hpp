#ifndef SHAFBOUND_TERNARY_FORM_HPP
#define SHAFBOUND_TERNARY_FORM_HPP

#include <array>
#include <utility>

#include "shafbound/numeric.hpp"
#include "shafbound/point.hpp"

namespace shafbound {

/// Homogeneous form of fixed degree d in x, y, z with exact rational
/// coefficients, stored densely. Coefficients are indexed by exponent
/// triples (i, j, k), i + j + k = d, in descending lexicographic order of
/// (i, j, k); serialization relies on this order being fixed.
class TernaryForm {
public:
    TernaryForm() : TernaryForm(0) {}
    explicit TernaryForm(int degree);  // zero form
    TernaryForm(int degree, VecQ coeffs);

    static int term_count(int degree) { return (degree + 1) * (degree + 2) / 2; }
    static int index_of(int degree, int i, int j);
    static std::array<int, 3> exponents_at(int degree, int index);

    int degree() const { return degree_; }
    const VecQ& coeffs() const { return coeffs_; }
    const Rat& coeff(int i, int j, int k) const;
    void set_coeff(int i, int j, int k, Rat c);
    bool is_zero() const;
    bool operator==(const TernaryForm& o) const;

    std::string str() const;  // readable, e.g. "x^3*y + 3*z^3"

private:
    int degree_;
    VecQ coeffs_;
};

Rat evaluate(const TernaryForm& f, const Rat& x, const Rat& y, const Rat& z);
Rat evaluate(const TernaryForm& f, const ProjPointQ& p);

/// Partial derivative along axis 0, 1 or 2; degree drops by one.
TernaryForm derivative(const TernaryForm& f, int axis);

TernaryForm multiply(const TernaryForm& f, const TernaryForm& g);
TernaryForm add(const TernaryForm& f, const TernaryForm& g);
TernaryForm scale(const Rat& c, const TernaryForm& f);

/// f(F0, F1, F2) for three substitution forms of one common degree e;
/// the result has degree deg(f) * e.
TernaryForm compose(const TernaryForm& f, const std::array<TernaryForm, 3>& subs);

/// f = content * primitive with integer primitive coefficients of gcd 1 and
/// positive leading (first nonzero) coefficient; content carries the sign.
/// The zero form maps to (zero, 0).
std::pair<TernaryForm, Rat> primitive_integer_form(const TernaryForm& f);

/// c * x^i y^j z^k as a form of the given degree.
TernaryForm monomial_form(int degree, int i, int j, Rat c = Rat(1));

}  // namespace shafbound

#endif
