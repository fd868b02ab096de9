#ifndef SHAFBOUND_NUMERIC_HPP
#define SHAFBOUND_NUMERIC_HPP

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <cstdint>
#include <string>

#include "shafbound/error.hpp"

namespace shafbound {

namespace mp = boost::multiprecision;

// Exact scalars. et_off gives plain value semantics, which is what the
// Eigen dense types below require.
using Int = mp::number<mp::gmp_int, mp::et_off>;
using Rat = mp::number<mp::gmp_rational, mp::et_off>;

using MatZ  = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using MatQ  = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;
using VecZ  = Eigen::Matrix<Int, Eigen::Dynamic, 1>;
using VecQ  = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;
using Vec3Z = Eigen::Matrix<Int, 3, 1>;
using Mat3Z = Eigen::Matrix<Int, 3, 3>;

inline Int num(const Rat& r) { return mp::numerator(r); }
inline Int den(const Rat& r) { return mp::denominator(r); }

// n/d with correct sign handling for either sign of d (d != 0).
inline Rat make_rat(const Int& n, const Int& d) {
    if (d == 0) throw InvalidInput("make_rat: zero denominator");
    return Rat(n, d);
}

inline Int pow_int(const Int& base, unsigned long e) { return mp::pow(base, e); }

inline Rat pow_rat(const Rat& r, unsigned long e) {
    return Rat(pow_int(num(r), e), pow_int(den(r), e));
}

Int factorial(unsigned long n);

// Exact quotient a/b; throws InternalCheck when b does not divide a.
Int exact_div(const Int& a, const Int& b);

// Decimal digit count of |v| as reported by GMP (exact or one too high for
// v with more than one limb; consistent across runs, which is all the digit
// ceiling needs). digits10(0) == 1.
std::size_t digits10(const Int& v);

// Deterministic Miller-Rabin, valid for the whole uint64 range.
bool is_prime_u64(std::uint64_t n);

// FNV-1a 64-bit content hash, rendered as 16 hex digits.
std::string fnv1a64_hex(const std::string& bytes);

}  // namespace shafbound

#endif
