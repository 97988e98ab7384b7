#include "coeffbound/coeffs.hpp"

#include <stdexcept>
#include <string>

namespace coeffbound::coeffs {

Lambda::Lambda(double v) : v_(v) {
  if (!(v > 0.0) || !(v <= 1.0))
    throw std::invalid_argument("Lambda must lie in (0, 1], got " +
                                std::to_string(v));
}

double q(int n, Lambda lambda) {
  if (n < 0) throw std::invalid_argument("q: n must be >= 0");
  const double lam = lambda.value();
  double acc = 0.0;
  double pw = 1.0;
  for (int j = 0; j <= n; ++j) {
    acc += pw;
    pw *= lam;
  }
  return acc;
}

ACoeffs a_coeffs(Lambda lambda, const CoeffTuple& c) {
  const double q1 = q(1, lambda);
  const double q2 = q(2, lambda);
  const double q3 = q(3, lambda);
  const double q4 = q(4, lambda);
  const cplx c1 = c.c1, c2 = c.c2, c3 = c.c3, c4 = c.c4;
  const cplx c1sq = c1 * c1;
  ACoeffs a;
  a.a2 = q1 * c1;
  a.a3 = q1 * c2 + q2 * c1sq;
  a.a4 = q1 * c3 + 2.0 * q2 * c1 * c2 + q3 * c1sq * c1;
  a.a5 = q1 * c4 + q2 * (2.0 * c1 * c3 + c2 * c2) + 3.0 * q3 * c1sq * c2 +
         q4 * c1sq * c1sq;
  return a;
}

PCoeffs p_from_c(const CoeffTuple& c) {
  const cplx c1 = c.c1, c2 = c.c2, c3 = c.c3, c4 = c.c4;
  const cplx c1sq = c1 * c1;
  PCoeffs p;
  p.p1 = 2.0 * c1;
  p.p2 = 2.0 * (c2 + c1sq);
  p.p3 = 2.0 * (c3 + 2.0 * c1 * c2 + c1sq * c1);
  p.p4 = 2.0 * (c4 + 2.0 * c1 * c3 + c2 * c2 + 3.0 * c1sq * c2 + c1sq * c1sq);
  return p;
}

cplx extremal_coeff(Lambda lambda, int n) {
  if (n < 1) throw std::invalid_argument("extremal_coeff: n must be >= 1");
  const double mag = q(n - 1, lambda);
  return (n % 2 == 1) ? cplx(mag, 0.0) : cplx(-mag, 0.0);
}

}  // namespace coeffbound::coeffs
