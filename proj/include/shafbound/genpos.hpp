#ifndef SHAFBOUND_GENPOS_HPP
#define SHAFBOUND_GENPOS_HPP

#include <optional>
#include <span>
#include <vector>

#include "shafbound/point.hpp"

namespace shafbound {

/// Exact predicate outcome: the defining determinant and whether it vanished.
struct DetResult {
    bool degenerate = false;
    Int det = 0;
};

/// Determinant of the 3x3 coordinate matrix of the three points in the given
/// order; degenerate (collinear) iff zero.
DetResult collinear(const ProjPointQ& p, const ProjPointQ& q, const ProjPointQ& r);

/// 6x6 determinant of the degree-2 monomial evaluations; zero iff some conic
/// passes through all six points.
DetResult conic_determinant(std::span<const ProjPointQ> six);

/// 10x10 determinant: degree-3 monomial evaluations at the seven points other
/// than points[i], plus the three partial-derivative rows at points[i]
/// (by the Euler relation a degree-3 form with vanishing gradient at a point
/// also vanishes there). Zero iff a cubic through all eight points exists
/// that is singular at points[i].
DetResult singular_cubic_exists(std::span<const ProjPointQ> eight, int i);

enum class PredicateKind { Collinear, Conic, SingularCubic };

struct PositionWitness {
    PredicateKind kind = PredicateKind::Collinear;
    std::vector<int> subset;  // offending point indices, ascending
    int singular_index = -1;  // for SingularCubic: which point the cubic is singular at
    Int det = 0;
};

struct PositionResult {
    bool ok = true;
    std::optional<PositionWitness> witness;
};

/// General position for up to 8 pairwise distinct points: no 3 collinear,
/// no 6 on a conic, no 8 on a cubic singular at one of them. The witness is
/// the lexicographically first failing subset. Rejects duplicates.
PositionResult general_position(std::span<const ProjPointQ> pts);

}  // namespace shafbound

#endif
