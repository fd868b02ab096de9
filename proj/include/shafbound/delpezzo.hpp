#ifndef SHAFBOUND_DELPEZZO_HPP
#define SHAFBOUND_DELPEZZO_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "shafbound/genpos.hpp"
#include "shafbound/point.hpp"
#include "shafbound/sunit.hpp"

namespace shafbound {

/// Blow-up configuration of a split del Pezzo surface of degree 1..4 over the
/// S-integers: the standard frame followed by 5-degree extra points
/// (a_i : b_i : 1) whose coordinates a_i, b_i, 1-a_i, 1-b_i are all S-units.
/// General position over the rationals is enforced on construction.
class BlowupConfig {
public:
    static BlowupConfig from_extras(int degree, PrimeSet s, std::vector<std::pair<Rat, Rat>> extras);
    static BlowupConfig from_points(int degree, PrimeSet s, std::vector<ProjPointQ> points);

    int degree() const { return degree_; }
    const PrimeSet& prime_set() const { return s_; }
    const std::vector<ProjPointQ>& points() const { return points_; }
    const std::vector<std::pair<SUnitQ, SUnitQ>>& unit_coords() const { return unit_coords_; }
    std::size_t extra_count() const { return points_.size() - 4; }
    std::pair<Rat, Rat> extra_affine(std::size_t i) const;  // (a_i, b_i)

    /// Canonical comparison key: degree, then the point list.
    const std::string& key() const { return key_; }
    bool operator==(const BlowupConfig& o) const { return key_ == o.key_; }
    bool operator<(const BlowupConfig& o) const { return key_ < o.key_; }

private:
    BlowupConfig() = default;
    int degree_ = 4;
    PrimeSet s_;
    std::vector<ProjPointQ> points_;
    std::vector<std::pair<SUnitQ, SUnitQ>> unit_coords_;
    std::string key_;
};

/// One minor of the good-reduction certificate: the defining determinant of a
/// point subset together with its S-factorization when it is an S-unit.
struct MinorRecord {
    PredicateKind kind = PredicateKind::Collinear;
    std::vector<int> subset;
    int singular_index = -1;
    Int det = 0;
    std::optional<SUnitQ> factorization;  // present iff det is an S-unit
};

/// Verdict plus every minor checked: all collinearity determinants, the conic
/// determinants for 6 or more points, and the singular-cubic determinants for
/// 8 points. verdict is true iff every determinant is an S-unit.
struct GoodReductionCertificate {
    std::vector<MinorRecord> minors;
    bool verdict = false;
};

/// Certificate for an arbitrary point list (4 to 8 points); the subsets
/// checked are determined by the point count as above.
GoodReductionCertificate certificate_for_points(std::span<const ProjPointQ> pts, const PrimeSet& s);

GoodReductionCertificate integral_general_position(const BlowupConfig& config);

/// The unique projectivity sending the four indexed points, in order, to the
/// standard frame, as a primitive integer matrix with positive first nonzero
/// entry, applied to all points. Rejects degenerate frames.
std::pair<std::vector<ProjPointQ>, Mat3Z> frame_normalize(std::span<const ProjPointQ> pts,
                                                          const std::array<int, 4>& frame_indices);

/// Quadratic involution based at three of the configuration's points: the
/// base triple is moved to the coordinate triangle, (x:y:z) -> (yz:xz:xy) is
/// applied to the other points, and the first four positions are normalized
/// back to the standard frame.
BlowupConfig cremona_involution(const BlowupConfig& config, const std::array<int, 3>& base_indices);

/// Point-level version used for orbit scans; returns the transformed list.
std::vector<ProjPointQ> cremona_points(std::span<const ProjPointQ> pts,
                                       const std::array<int, 3>& base_indices);

struct EnumeratedConfig {
    BlowupConfig config;
    GoodReductionCertificate certificate;
};

struct EnumerateOptions {
    int jobs = 1;
    bool allow_degree_1 = false;  // 8-point runs are combinatorially heavy
};

/// All configurations of the given degree whose extra-point coordinates are
/// unit-equation solutions of height at most cap and whose full minor list is
/// made of S-units. Complete relative to the cap; ordered points, so every
/// ordering of a point set is emitted; canonically sorted.
std::vector<EnumeratedConfig> enumerate_configs(int degree, const PrimeSet& s, const HeightValue& cap,
                                                const EnumerateOptions& opts = {});

struct Orbit {
    int representative = 0;        // index into the input, canonically smallest member
    std::vector<int> members;      // ascending indices into the input
};

struct OrbitReport {
    std::vector<Orbit> orbits;
    std::size_t boundary_escapes = 0;  // distinct images that left the enumerated universe
};

/// Partition of the input into orbits under point permutations (followed by
/// frame normalization) and Cremona involutions over all base triples,
/// closing only inside the input set. All configs must share degree and S,
/// with no duplicate keys.
OrbitReport dedup_orbits(std::span<const EnumeratedConfig> configs, int jobs = 1);

}  // namespace shafbound

#endif
