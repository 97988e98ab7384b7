#include "coeffbound/inequalities.hpp"

#include <cmath>
#include <stdexcept>

namespace coeffbound::inequalities {

Fpoly Fpoly::at(Lambda lambda) {
  const double l = lambda.value();
  const double l2 = l * l;
  const double l3 = l2 * l;
  const double l4 = l2 * l2;
  Fpoly f;
  f.a = 3.0 * l4 * (3.0 * l2 - 2.0 * l - 1.0);
  f.b = 2.0 * l2 * (3.0 * l3 + 4.0 * l2 + 2.0 * l - 1.0);
  f.d = -l2 * (9.0 * l4 + 5.0 * l2 + 4.0 * l - 2.0);
  return f;
}

double F(Lambda lambda, double t) { return Fpoly::at(lambda).eval(t); }

std::optional<double> t_star(Lambda lambda) {
  const double l = lambda.value();
  const double l2 = l * l;
  // Quadratic coefficient of F is -3 l^4 (1 + 2l - 3l^2); the factor
  // 1 + 2l - 3l^2 = (1 + 3l)(1 - l) vanishes only at l = 1 on (0, 1].
  const double fac = 1.0 + 2.0 * l - 3.0 * l2;
  if (fac == 0.0) return std::nullopt;
  return l2 * (3.0 * l2 * l + 4.0 * l2 + 2.0 * l - 1.0) /
         (3.0 * l2 * l2 * fac);
}

double lambda0_poly(double x) {
  return (((9.0 * x - 3.0) * x + 1.0) * x + 2.0) * x - 1.0;
}

double lambda0_poly_deriv(double x) {
  return ((36.0 * x - 9.0) * x + 2.0) * x + 2.0;
}

double lambda0() {
  static const double root = [] {
    double lo = 0.3, hi = 0.5;
    // The sign change certifies a root in [lo, hi]; the polynomial is
    // strictly increasing on (0, inf), so it is the only positive one.
    if (!(lambda0_poly(lo) < 0.0) || !(lambda0_poly(hi) > 0.0))
      throw std::logic_error("lambda0: bracket [0.3, 0.5] lost its sign change");
    for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
      const double mid = 0.5 * (lo + hi);
      (lambda0_poly(mid) < 0.0 ? lo : hi) = mid;
    }
    double x = 0.5 * (lo + hi);
    for (int i = 0; i < 4; ++i)
      x -= lambda0_poly(x) / lambda0_poly_deriv(x);
    return x;
  }();
  return root;
}

double ps_threshold() { return (std::sqrt(52.0) - 4.0) / 9.0; }

bool ps_region(double mu, double nu) {
  const double am = std::abs(mu);
  return 2.0 <= am && am <= 4.0 && nu >= (mu * mu + 8.0) / 12.0;
}

PSParams ps_params(Lambda lambda) {
  const double l = lambda.value();
  PSParams p;
  p.mu = 2.0 + 3.0 * l * l / (1.0 + l);
  p.nu = 1.0 + 3.0 * l * l * l / (1.0 + l);
  p.in_region = ps_region(p.mu, p.nu);
  return p;
}

double ps_functional(double mu, double nu, const CoeffTuple& c) {
  return std::abs(c.c3 + mu * (c.c1 * c.c2) + nu * (c.c1 * c.c1 * c.c1));
}

}  // namespace coeffbound::inequalities
