#ifndef SHAFBOUND_SUNIT_HPP
#define SHAFBOUND_SUNIT_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "shafbound/numeric.hpp"

namespace shafbound {

/// Finite set of rational primes, strictly increasing. Every entry passes a
/// deterministic primality check on construction.
class PrimeSet {
public:
    PrimeSet() = default;
    explicit PrimeSet(std::vector<std::uint64_t> primes);
    static PrimeSet parse(std::string_view csv);  // "2,3,5"; empty string is the empty set

    const std::vector<std::uint64_t>& primes() const { return primes_; }
    std::size_t size() const { return primes_.size(); }
    bool empty() const { return primes_.empty(); }
    bool contains(std::uint64_t p) const;

    /// Product of the residue-field sizes, i.e. of the primes (1 when empty).
    Int norm() const;

    bool operator==(const PrimeSet& o) const { return primes_ == o.primes_; }

private:
    std::vector<std::uint64_t> primes_;
};

/// Nonzero rational carried as sign and exponent vector over a PrimeSet:
/// value = sign * prod p_i^(e_i).
struct SUnitQ {
    int sign = 1;
    std::vector<std::int64_t> exponents;  // aligned with the PrimeSet

    Rat value(const PrimeSet& s) const;
    bool operator==(const SUnitQ& o) const = default;
};

/// Exponential height H = max(|numerator|, denominator) in lowest terms.
/// H == 1 exactly for +-1; ln() is the logarithmic Weil height.
struct HeightValue {
    Int H = 1;

    explicit HeightValue(Int h);
    double ln() const;
};

HeightValue height(const Rat& a);  // rejects 0

/// Factors a over S when both numerator and denominator are S-smooth.
std::optional<SUnitQ> is_s_unit(const Rat& a, const PrimeSet& s);

/// True when |v| is a product of primes of S (v != 0; 1 counts).
bool is_smooth(const Int& v, const PrimeSet& s);

/// All S-smooth positive integers <= cap, ascending, starting at 1.
std::vector<Int> smooth_numbers_up_to(const PrimeSet& s, const Int& cap);

/// Exactly the a with a and 1-a both S-units and height(a).H <= cap, each
/// re-verified by exact substitution, sorted by (H, numerator, denominator).
/// Complete relative to the cap: the search exhausts all coprime pairs (m, n)
/// of S-smooth integers with |m|, n <= cap and n - m S-smooth.
std::vector<Rat> solve_unit_equation(const PrimeSet& s, const HeightValue& cap, int jobs = 1);

/// {a, 1-a, 1/a, 1/(1-a), a/(a-1), (a-1)/a}; size 1, 2, 3 or 6. Rejects 0, 1.
std::set<Rat> symmetry_orbit(const Rat& a);

/// Canonical solution order: by height, then numerator, then denominator.
bool solution_less(const Rat& a, const Rat& b);

}  // namespace shafbound

#endif
