#ifndef SHAFBOUND_BIGFLOAT_HPP
#define SHAFBOUND_BIGFLOAT_HPP

#include <mpfr.h>

#include <string>

#include "shafbound/numeric.hpp"

namespace shafbound {

/// Fixed-precision MPFR value (256 bits, ~77 decimal digits) with an explicit
/// rounding mode at every operation. Bound computations round upward so that
/// every surrogate stays a valid upper bound.
class BigFloat {
public:
    static constexpr mpfr_prec_t kPrecision = 256;

    BigFloat() {
        mpfr_init2(v_, kPrecision);
        mpfr_set_zero(v_, 1);
    }
    BigFloat(const BigFloat& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, kPrecision);
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(BigFloat o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    static BigFloat of(double d);
    static BigFloat of(long n);
    static BigFloat of(const Int& z, mpfr_rnd_t r);

    double to_double(mpfr_rnd_t r = MPFR_RNDN) const { return mpfr_get_d(v_, r); }
    bool finite() const { return mpfr_number_p(v_) != 0; }
    bool is_inf() const { return mpfr_inf_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    int cmp(const BigFloat& o) const { return mpfr_cmp(v_, o.v_); }
    bool operator<(const BigFloat& o) const { return cmp(o) < 0; }

    /// Scientific-notation decimal string with the given number of
    /// significant digits, e.g. "3.1780538303e+00".
    std::string str(int significant_digits, mpfr_rnd_t r = MPFR_RNDN) const;

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

private:
    mpfr_t v_;
};

BigFloat add(const BigFloat& a, const BigFloat& b, mpfr_rnd_t r);
BigFloat sub(const BigFloat& a, const BigFloat& b, mpfr_rnd_t r);
BigFloat mul(const BigFloat& a, const BigFloat& b, mpfr_rnd_t r);
BigFloat div(const BigFloat& a, const BigFloat& b, mpfr_rnd_t r);
BigFloat log(const BigFloat& a, mpfr_rnd_t r);
BigFloat log1p(const BigFloat& a, mpfr_rnd_t r);
BigFloat exp(const BigFloat& a, mpfr_rnd_t r);
BigFloat sqrt(const BigFloat& a, mpfr_rnd_t r);
BigFloat pow_si(const BigFloat& a, long e, mpfr_rnd_t r);

/// ln(v) for an exact integer v >= 1, rounded in direction r.
BigFloat ln_int(const Int& v, mpfr_rnd_t r);
BigFloat ln_int(long v, mpfr_rnd_t r);

/// ln(A + B) given ln(A) and ln(B), every step rounded in direction r.
/// Either argument may be -inf (the corresponding term is zero).
BigFloat ln_of_sum(const BigFloat& ln_a, const BigFloat& ln_b, mpfr_rnd_t r);

}  // namespace shafbound

#endif
