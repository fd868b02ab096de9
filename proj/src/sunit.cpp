#include "shafbound/sunit.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "shafbound/parallel.hpp"

namespace shafbound {

PrimeSet::PrimeSet(std::vector<std::uint64_t> primes) : primes_(std::move(primes)) {
    for (std::size_t i = 0; i < primes_.size(); ++i) {
        if (!is_prime_u64(primes_[i]))
            throw InvalidInput("PrimeSet: " + std::to_string(primes_[i]) + " is not prime");
        if (i > 0 && primes_[i] <= primes_[i - 1])
            throw InvalidInput("PrimeSet: primes must be strictly increasing");
    }
}

PrimeSet PrimeSet::parse(std::string_view csv) {
    std::vector<std::uint64_t> ps;
    std::size_t pos = 0;
    while (pos < csv.size()) {
        std::size_t comma = csv.find(',', pos);
        std::string_view tok = csv.substr(pos, comma == std::string_view::npos ? csv.size() - pos : comma - pos);
        if (tok.empty()) throw InvalidInput("PrimeSet: empty entry in prime list");
        std::uint64_t v = 0;
        for (char c : tok) {
            if (c < '0' || c > '9') throw InvalidInput("PrimeSet: malformed prime list");
            if (v > (std::numeric_limits<std::uint64_t>::max() - static_cast<std::uint64_t>(c - '0')) / 10)
                throw InvalidInput("PrimeSet: prime out of range");
            v = v * 10 + static_cast<std::uint64_t>(c - '0');
        }
        ps.push_back(v);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return PrimeSet(std::move(ps));
}

bool PrimeSet::contains(std::uint64_t p) const {
    return std::binary_search(primes_.begin(), primes_.end(), p);
}

Int PrimeSet::norm() const {
    Int n = 1;
    for (std::uint64_t p : primes_) n *= Int(p);
    return n;
}

Rat SUnitQ::value(const PrimeSet& s) const {
    check_internal(exponents.size() == s.size(), "SUnitQ: exponent vector length mismatch");
    Int n = 1, d = 1;
    for (std::size_t i = 0; i < exponents.size(); ++i) {
        const Int p = Int(s.primes()[i]);
        if (exponents[i] >= 0) {
            n *= pow_int(p, static_cast<unsigned long>(exponents[i]));
        } else {
            d *= pow_int(p, static_cast<unsigned long>(-exponents[i]));
        }
    }
    return make_rat(Int(sign) * n, d);
}

HeightValue::HeightValue(Int h) : H(std::move(h)) {
    if (H < 1) throw InvalidInput("HeightValue: H must be >= 1");
}

double HeightValue::ln() const {
    return std::log(H.convert_to<double>());
}

HeightValue height(const Rat& a) {
    if (a == 0) throw InvalidInput("height: 0 has no height here");
    Int n = abs(num(a));
    Int d = den(a);
    return HeightValue(n >= d ? n : d);
}

bool is_smooth(const Int& v, const PrimeSet& s) {
    if (v == 0) return false;
    Int r = abs(v);
    for (std::uint64_t p : s.primes()) {
        const Int pp(p);
        while (r % pp == 0) r /= pp;
        if (r == 1) break;
    }
    return r == 1;
}

std::optional<SUnitQ> is_s_unit(const Rat& a, const PrimeSet& s) {
    if (a == 0) throw InvalidInput("is_s_unit: 0 is not a unit");
    SUnitQ u;
    u.sign = a < 0 ? -1 : 1;
    u.exponents.assign(s.size(), 0);
    Int n = abs(num(a));
    Int d = den(a);
    for (std::size_t i = 0; i < s.size(); ++i) {
        const Int p(s.primes()[i]);
        while (n % p == 0) {
            n /= p;
            ++u.exponents[i];
        }
        while (d % p == 0) {
            d /= p;
            --u.exponents[i];
        }
    }
    if (n != 1 || d != 1) return std::nullopt;
    return u;
}

namespace {

void gen_smooth(const PrimeSet& s, std::size_t idx, const Int& value, const Int& cap,
                std::vector<Int>& out) {
    if (idx == s.size()) {
        out.push_back(value);
        return;
    }
    Int v = value;
    const Int p(s.primes()[idx]);
    while (v <= cap) {
        gen_smooth(s, idx + 1, v, cap, out);
        v *= p;
    }
}

}  // namespace

std::vector<Int> smooth_numbers_up_to(const PrimeSet& s, const Int& cap) {
    std::vector<Int> out;
    if (cap < 1) return out;
    gen_smooth(s, 0, Int(1), cap, out);
    std::sort(out.begin(), out.end());
    return out;
}

bool solution_less(const Rat& a, const Rat& b) {
    const Int ha = height(a).H, hb = height(b).H;
    if (ha != hb) return ha < hb;
    const Int na = num(a), nb = num(b);
    if (na != nb) return na < nb;
    return den(a) < den(b);
}

std::vector<Rat> solve_unit_equation(const PrimeSet& s, const HeightValue& cap, int jobs) {
    // a = m/n in lowest terms with n > 0. a is an S-unit iff |m| and n are
    // S-smooth; then 1 - a = (n - m)/n is already in lowest terms, so it is an
    // S-unit iff n - m is nonzero and S-smooth. H(a) = max(|m|, n).
    const std::vector<Int> smooth = smooth_numbers_up_to(s, cap.H);
    std::vector<std::vector<Rat>> found = parallel_map_chunks<std::vector<Rat>>(
        smooth.size(), jobs, [&](std::size_t begin, std::size_t end) {
            std::vector<Rat> local;
            for (std::size_t ni = begin; ni < end; ++ni) {
                const Int& n = smooth[ni];
                for (const Int& am : smooth) {
                    if (mp::gcd(am, n) != 1) continue;
                    for (int sign = 0; sign < 2; ++sign) {
                        const Int m = sign == 0 ? am : Int(-am);
                        const Int diff = n - m;
                        if (diff == 0) continue;  // a = 1 is excluded
                        if (!is_smooth(diff, s)) continue;
                        Rat a = make_rat(m, n);
                        // Exact re-substitution of both memberships.
                        check_internal(is_s_unit(a, s).has_value(), "solver: a is not an S-unit");
                        check_internal(is_s_unit(Rat(1) - a, s).has_value(),
                                       "solver: 1 - a is not an S-unit");
                        local.push_back(std::move(a));
                    }
                }
            }
            return local;
        });
    std::vector<Rat> out;
    for (auto& chunk : found)
        for (auto& a : chunk) out.push_back(std::move(a));
    std::sort(out.begin(), out.end(), solution_less);
    return out;
}

std::set<Rat> symmetry_orbit(const Rat& a) {
    if (a == 0 || a == 1) throw InvalidInput("symmetry_orbit: 0 and 1 are excluded");
    const Rat one(1);
    return {a, one - a, one / a, one / (one - a), a / (a - one), (a - one) / a};
}

}  // namespace shafbound
