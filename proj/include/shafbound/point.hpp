#ifndef SHAFBOUND_POINT_HPP
#define SHAFBOUND_POINT_HPP

#include <string>
#include <utility>

#include "shafbound/linalg.hpp"
#include "shafbound/numeric.hpp"

namespace shafbound {

/// Point of the rational projective plane as a canonical primitive integer
/// triple: gcd of the entries is 1 and the first nonzero entry is positive.
class ProjPointQ {
public:
    ProjPointQ(Int x, Int y, Int z);
    static ProjPointQ from_affine(const Rat& a, const Rat& b);        // (a : b : 1)
    static ProjPointQ from_rationals(const Rat& x, const Rat& y, const Rat& z);

    const Vec3Z& coords() const { return c_; }
    const Int& x() const { return c_[0]; }
    const Int& y() const { return c_[1]; }
    const Int& z() const { return c_[2]; }

    bool is_affine() const { return c_[2] != 0; }
    std::pair<Rat, Rat> affine() const;  // (x/z, y/z); requires z != 0

    bool operator==(const ProjPointQ& o) const { return c_[0] == o.c_[0] && c_[1] == o.c_[1] && c_[2] == o.c_[2]; }
    bool operator!=(const ProjPointQ& o) const { return !(*this == o); }
    bool operator<(const ProjPointQ& o) const;

    std::string str() const;  // "(x:y:z)"

private:
    Vec3Z c_;
};

/// T p with canonical renormalization; rejects transforms that kill p.
ProjPointQ apply(const Mat3Z& t, const ProjPointQ& p);

/// The four-point frame (0:0:1), (0:1:0), (1:0:0), (1:1:1) in this order.
const std::array<ProjPointQ, 4>& standard_frame();

}  // namespace shafbound

#endif
