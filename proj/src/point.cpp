#include "shafbound/point.hpp"

#include <array>

namespace shafbound {

namespace {

Vec3Z canonicalize(Int x, Int y, Int z) {
    if (x == 0 && y == 0 && z == 0) throw InvalidInput("ProjPointQ: zero coordinate triple");
    VecZ v(3);
    v << std::move(x), std::move(y), std::move(z);
    make_primitive(v, true);
    Vec3Z out;
    out << v[0], v[1], v[2];
    return out;
}

}  // namespace

ProjPointQ::ProjPointQ(Int x, Int y, Int z) : c_(canonicalize(std::move(x), std::move(y), std::move(z))) {}

ProjPointQ ProjPointQ::from_affine(const Rat& a, const Rat& b) {
    const Int l = mp::lcm(den(a), den(b));
    Rat sa = a * Rat(l), sb = b * Rat(l);
    return ProjPointQ(num(sa), num(sb), l);
}

ProjPointQ ProjPointQ::from_rationals(const Rat& x, const Rat& y, const Rat& z) {
    Int l = mp::lcm(mp::lcm(den(x), den(y)), den(z));
    Rat sx = x * Rat(l), sy = y * Rat(l), sz = z * Rat(l);
    return ProjPointQ(num(sx), num(sy), num(sz));
}

std::pair<Rat, Rat> ProjPointQ::affine() const {
    if (c_[2] == 0) throw InvalidInput("ProjPointQ: point at infinity has no affine chart here");
    return {make_rat(c_[0], c_[2]), make_rat(c_[1], c_[2])};
}

bool ProjPointQ::operator<(const ProjPointQ& o) const {
    for (int i = 0; i < 3; ++i) {
        if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
    }
    return false;
}

std::string ProjPointQ::str() const {
    return "(" + c_[0].str() + ":" + c_[1].str() + ":" + c_[2].str() + ")";
}

ProjPointQ apply(const Mat3Z& t, const ProjPointQ& p) {
    Vec3Z r = t * p.coords();
    if (r[0] == 0 && r[1] == 0 && r[2] == 0)
        throw InternalCheck("apply: transform maps point to zero");
    return ProjPointQ(r[0], r[1], r[2]);
}

const std::array<ProjPointQ, 4>& standard_frame() {
    static const std::array<ProjPointQ, 4> frame = {
        ProjPointQ(0, 0, 1),
        ProjPointQ(0, 1, 0),
        ProjPointQ(1, 0, 0),
        ProjPointQ(1, 1, 1),
    };
    return frame;
}

}  // namespace shafbound
