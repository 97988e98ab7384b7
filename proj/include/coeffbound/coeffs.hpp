#pragma once

#include "coeffbound/common.hpp"
#include "coeffbound/schwarz.hpp"

namespace coeffbound::coeffs {

using schwarz::CoeffTuple;

// Class parameter, 0 < lambda <= 1. Constructor rejects anything else.
class Lambda {
 public:
  explicit Lambda(double v);
  double value() const { return v_; }

 private:
  double v_;
};

// Geometric partial sum q_n = 1 + lambda + ... + lambda^n, as a direct sum
// (not the closed form, which degenerates at lambda = 1). n >= 0.
double q(int n, Lambda lambda);

// Taylor coefficients a2..a5 of f(z) = z + a2 z^2 + ... for the function
// with f(z)/z = 1 / ((1 - w(z))(1 - lambda w(z))), w the Schwarz function
// with 4-jet c. Polynomials in c with q_n coefficients:
//   a2 = q1 c1
//   a3 = q1 c2 + q2 c1^2
//   a4 = q1 c3 + 2 q2 c1 c2 + q3 c1^3
//   a5 = q1 c4 + q2 (2 c1 c3 + c2^2) + 3 q3 c1^2 c2 + q4 c1^4
struct ACoeffs {
  cplx a2, a3, a4, a5;
};
ACoeffs a_coeffs(Lambda lambda, const CoeffTuple& c);

// Coefficients p1..p4 of the Caratheodory transform
// (1 + w(z)) / (1 - w(z)) = 1 + p1 z + p2 z^2 + ... :
//   p1 = 2 c1
//   p2 = 2 (c2 + c1^2)
//   p3 = 2 (c3 + 2 c1 c2 + c1^3)
//   p4 = 2 (c4 + 2 c1 c3 + c2^2 + 3 c1^2 c2 + c1^4)
struct PCoeffs {
  cplx p1, p2, p3, p4;

  std::array<cplx, 4> as_array() const { return {p1, p2, p3, p4}; }
};
PCoeffs p_from_c(const CoeffTuple& c);

// n-th coefficient of the extremal function z / ((1 + z)(1 + lambda z)):
// a_n = (-1)^(n-1) q_{n-1}(lambda). n >= 1 (a_1 = 1).
cplx extremal_coeff(Lambda lambda, int n);

}  // namespace coeffbound::coeffs
