#ifndef TSHIFT_BASIS_ACTION_HPP
#define TSHIFT_BASIS_ACTION_HPP

#include <cstddef>

#include "tshift/decomposition.hpp"
#include "tshift/numeric.hpp"

namespace tshift {

// T e_m = coefficient * e_target, computed from the projection formulas and
// basis normalizations alone (no orbit bookkeeping). Used as an oracle for the
// closed-form weights.
struct BasisImage {
  std::size_t target = 0;
  Rational coef_sq;
};

// Adjoint H-Toeplitz operator with symbol z^t zbar^s on the Bergman space.
BasisImage htoeplitz_adjoint_action(unsigned t, unsigned s, std::size_t m);
// T_{zbar^s z^(s+d)} on A^2_alpha.
BasisImage weighted_bergman_action(unsigned s, unsigned d, const Rational& alpha, std::size_t n);
// T_{z^(t+d) zbar^t} on the generalized derivative Hardy space.
BasisImage gen_deriv_hardy_action(unsigned t, unsigned d, const Rational& alpha,
                                  const Rational& beta, std::size_t m);

// Dispatch on a unit-coefficient monomial.
BasisImage basis_action(const Space& space, const Monomial& term, std::size_t m);

}  // namespace tshift

#endif  // TSHIFT_BASIS_ACTION_HPP
