#ifndef TSHIFT_LINALG_HPP
#define TSHIFT_LINALG_HPP

#include <cstddef>
#include <functional>
#include <vector>

#include "tshift/numeric.hpp"

namespace tshift {

template <typename T>
using Matrix = std::vector<std::vector<T>>;

// Fraction-free elimination would be faster; plain Gaussian elimination over
// exact rationals is fine at the sizes used here (<= 7).
Rational determinant(Matrix<Rational> m);
Real determinant(Matrix<Real> m);

// Solves a x = b with partial pivoting. Returns false when the matrix is
// singular to working precision (pivot magnitude below `pivot_floor`).
bool solve(Matrix<Real> a, std::vector<Real> b, std::vector<Real>& x, const Real& pivot_floor);
bool solve(Matrix<Rational> a, std::vector<Rational> b, std::vector<Rational>& x);

Matrix<Rational> submatrix(const Matrix<Rational>& m, const std::vector<std::size_t>& idx);

// Visits all nonempty index subsets of {0..n-1}, by size, then lexicographically.
// Stops early when the visitor returns false.
void for_each_subset(std::size_t n,
                     const std::function<bool(const std::vector<std::size_t>&)>& visit);

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
std::vector<Real> symmetric_eigenvalues(Matrix<Real> m, const Real& tolerance,
                                        std::size_t max_sweeps = 100);

}  // namespace tshift

#endif  // TSHIFT_LINALG_HPP
