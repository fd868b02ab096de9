#ifndef SHAFBOUND_LINALG_HPP
#define SHAFBOUND_LINALG_HPP

#include <vector>

#include "shafbound/numeric.hpp"

namespace shafbound {

/// Fraction-free (Bareiss) row echelon form of an integer matrix.
/// Every division along the way is checked to be exact.
struct Echelon {
    MatZ mat;                      // upper echelon, eliminated entries zeroed
    std::vector<int> pivot_cols;   // strictly increasing, size == rank
    int rank = 0;
    int swap_sign = 1;             // parity of the row swaps performed
};

Echelon bareiss_echelon(MatZ a);

/// Exact determinant of a square integer matrix.
Int bareiss_determinant(MatZ a);

int rank_of(const MatZ& a);

/// Scale a rational vector to a primitive integer vector (gcd 1) pointing the
/// same way; the zero vector maps to itself.
VecZ clear_to_primitive(const VecQ& v);

/// Divide out the gcd in place; flips sign so the first nonzero entry is
/// positive when `normalize_sign` is set.
void make_primitive(VecZ& v, bool normalize_sign);

/// Basis of the right kernel, one primitive integer column per basis vector,
/// computed by fraction-free elimination and exact back substitution. The
/// (rank + kernel dimension == cols) identity and M v == 0 are re-checked.
MatZ kernel_basis(const MatQ& m);
MatZ kernel_basis(const MatZ& m);

/// Adjugate of a 3x3 integer matrix: adjugate(m) * m == det(m) * I.
Mat3Z adjugate(const Mat3Z& m);

Int determinant3(const Mat3Z& m);

}  // namespace shafbound

#endif
