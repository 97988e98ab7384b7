#pragma once

#include <optional>

#include "coeffbound/coeffs.hpp"

namespace coeffbound::inequalities {

using coeffs::Lambda;
using schwarz::CoeffTuple;

// F(lambda, t) = a t^2 + b t + d, the quadratic whose sign controls the
// last substitution of the proof chain:
//   a = 3 lambda^4 (3 lambda^2 - 2 lambda - 1)
//   b = 2 lambda^2 (3 lambda^3 + 4 lambda^2 + 2 lambda - 1)
//   d = -lambda^2 (9 lambda^4 + 5 lambda^2 + 4 lambda - 2)
// a + b + d = 0 identically, so F(lambda, 1) = 0; a < 0 on (0, 1) and
// a = 0 at lambda = 1 (F degenerates to a line).
struct Fpoly {
  double a, b, d;

  static Fpoly at(Lambda lambda);
  double eval(double t) const { return (a * t + b) * t + d; }
};

double F(Lambda lambda, double t);

// Interior critical point t0 = -b / (2a) in the closed form
//   t0 = lambda^2 (3 lambda^3 + 4 lambda^2 + 2 lambda - 1)
//        / (3 lambda^4 (1 + 2 lambda - 3 lambda^2)).
// nullopt when the quadratic term vanishes (lambda = 1): F is linear,
// no interior maximizer.
std::optional<double> t_star(Lambda lambda);

// P(x) = 9x^4 - 3x^3 + x^2 + 2x - 1, strictly increasing on (0, inf);
// its unique positive root is lambda0.
double lambda0_poly(double x);
double lambda0_poly_deriv(double x);

// The unique root of lambda0_poly in (0, 1): the smallest lambda for
// which F(lambda, t) <= 0 on all of [0, 1] (t_star(lambda0) = 1).
// Computed on first use by bisection on [0.3, 0.5] (the bracketing sign
// change is asserted, certifying existence) followed by Newton polish;
// never hard-coded. |lambda0_poly(lambda0())| <= 1e-14 after scaling.
double lambda0();

// (sqrt(52) - 4) / 9: the smallest lambda whose ps_params fall in the
// validity region below; equivalently the positive root of
// 9 lambda^2 + 8 lambda - 4.
double ps_threshold();

// Validity region of the sharp cubic-functional bound
// |c3 + mu c1 c2 + nu c1^3| <= nu: requires 2 <= |mu| <= 4 and
// nu >= (mu^2 + 8) / 12.
bool ps_region(double mu, double nu);

// The (mu, nu) pair the proof chain uses at this lambda:
//   mu = 2 + 3 lambda^2 / (1 + lambda)
//   nu = 1 + 3 lambda^3 / (1 + lambda)
// in_region is ps_region(mu, nu), equivalent to lambda >= ps_threshold().
struct PSParams {
  double mu, nu;
  bool in_region;
};
PSParams ps_params(Lambda lambda);

// |c3 + mu c1 c2 + nu c1^3|, the functional the bound above controls.
double ps_functional(double mu, double nu, const CoeffTuple& c);

}  // namespace coeffbound::inequalities
