#include "shafbound/bigfloat.hpp"

#include <cstdlib>
#include <cstring>

namespace shafbound {

BigFloat BigFloat::of(double d) {
    BigFloat x;
    mpfr_set_d(x.v_, d, MPFR_RNDN);
    return x;
}

BigFloat BigFloat::of(long n) {
    BigFloat x;
    mpfr_set_si(x.v_, n, MPFR_RNDN);
    return x;
}

BigFloat BigFloat::of(const Int& z, mpfr_rnd_t r) {
    BigFloat x;
    mpfr_set_z(x.v_, z.backend().data(), r);
    return x;
}

std::string BigFloat::str(int significant_digits, mpfr_rnd_t r) const {
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
    if (mpfr_zero_p(v_)) return "0";
    mpfr_exp_t e = 0;
    char* digits = mpfr_get_str(nullptr, &e, 10, static_cast<std::size_t>(significant_digits), v_, r);
    std::string ds(digits);
    mpfr_free_str(digits);
    std::string sign;
    if (!ds.empty() && ds[0] == '-') {
        sign = "-";
        ds.erase(0, 1);
    }
    // mpfr_get_str uses 0.d1d2... * 10^e; convert to d1.d2... * 10^(e-1).
    std::string out = sign + ds.substr(0, 1);
    if (ds.size() > 1) out += "." + ds.substr(1);
    out += "e";
    long exp10 = static_cast<long>(e) - 1;
    out += (exp10 >= 0 ? "+" : "") + std::to_string(exp10);
    return out;
}

#define SHAFBOUND_BF_BINOP(name, fn)                                           \
    BigFloat name(const BigFloat& a, const BigFloat& b, mpfr_rnd_t r) {        \
        BigFloat x;                                                            \
        fn(x.raw(), a.raw(), b.raw(), r);                                      \
        return x;                                                              \
    }

SHAFBOUND_BF_BINOP(add, mpfr_add)
SHAFBOUND_BF_BINOP(sub, mpfr_sub)
SHAFBOUND_BF_BINOP(mul, mpfr_mul)
SHAFBOUND_BF_BINOP(div, mpfr_div)

#undef SHAFBOUND_BF_BINOP

#define SHAFBOUND_BF_UNOP(name, fn)                          \
    BigFloat name(const BigFloat& a, mpfr_rnd_t r) {         \
        BigFloat x;                                          \
        fn(x.raw(), a.raw(), r);                             \
        return x;                                            \
    }

SHAFBOUND_BF_UNOP(log, mpfr_log)
SHAFBOUND_BF_UNOP(log1p, mpfr_log1p)
SHAFBOUND_BF_UNOP(exp, mpfr_exp)
SHAFBOUND_BF_UNOP(sqrt, mpfr_sqrt)

#undef SHAFBOUND_BF_UNOP

BigFloat pow_si(const BigFloat& a, long e, mpfr_rnd_t r) {
    BigFloat x;
    mpfr_pow_si(x.raw(), a.raw(), e, r);
    return x;
}

BigFloat ln_int(const Int& v, mpfr_rnd_t r) {
    if (v < 1) throw InvalidInput("ln_int: argument must be >= 1");
    return log(BigFloat::of(v, r), r);
}

BigFloat ln_int(long v, mpfr_rnd_t r) { return ln_int(Int(v), r); }

BigFloat ln_of_sum(const BigFloat& ln_a, const BigFloat& ln_b, mpfr_rnd_t r) {
    if (ln_a.is_inf() && ln_a.sign() < 0) return ln_b;
    if (ln_b.is_inf() && ln_b.sign() < 0) return ln_a;
    const BigFloat& hi = (ln_a.cmp(ln_b) >= 0) ? ln_a : ln_b;
    const BigFloat& lo = (ln_a.cmp(ln_b) >= 0) ? ln_b : ln_a;
    // ln(A+B) = ln(max) + log1p(exp(ln(min) - ln(max)))
    return add(hi, log1p(exp(sub(lo, hi, r), r), r), r);
}

}  // namespace shafbound
