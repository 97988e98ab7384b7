#include "coeffbound/proofchain.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "coeffbound/inequalities.hpp"

namespace coeffbound::proofchain {

double leverenz_form(std::span<const cplx> p, std::span<const cplx> z) {
  if (p.empty() || p.size() != z.size())
    throw std::invalid_argument(
        "leverenz_form: p and z must have equal nonzero length");
  const std::size_t K = z.size() - 1;
  double total = 0.0;
  for (std::size_t j = 0; j <= K; ++j) {
    cplx s1 = 2.0 * z[j];
    for (std::size_t k = 1; k + j <= K; ++k) s1 += p[k - 1] * z[k + j];
    cplx s2 = 0.0;
    for (std::size_t k = 0; k + j <= K; ++k) s2 += p[k] * z[k + j];
    total += std::norm(s1) - std::norm(s2);
  }
  return total;
}

WitnessVector witness(Lambda lambda, const CoeffTuple& c) {
  const double lam = lambda.value();
  const double lam2 = lam * lam;
  const cplx c1sq = c.c1 * c.c1;
  WitnessVector z;
  z.z0 = lam2 * (1.0 - lam) * (1.0 - lam) * (c1sq * c.c1);
  z.z1 = lam2 * c.c2 + (3.0 * lam2 * lam - 2.0 * lam2) * c1sq;
  z.z2 = 2.0 * lam2 * c.c1;
  z.z3 = cplx(1.0 + lam, 0.0);
  return z;
}

double compute_L(const PCoeffs& p, const WitnessVector& z) {
  return std::norm(p.p1 * z.z0 + p.p2 * z.z1 + p.p3 * z.z2 + p.p4 * z.z3);
}

double compute_R(const PCoeffs& p, const WitnessVector& z) {
  const cplx t1 = p.p1 * z.z1 + p.p2 * z.z2 + p.p3 * z.z3;
  const cplx t2 = p.p1 * z.z2 + p.p2 * z.z3;
  const cplx t3 = p.p1 * z.z3;
  return std::norm(2.0 * z.z0 + t1) - std::norm(t1) +
         std::norm(2.0 * z.z1 + t2) - std::norm(t2) +
         std::norm(2.0 * z.z2 + t3) - std::norm(t3) + std::norm(2.0 * z.z3);
}

double identity_residual(Lambda lambda, const CoeffTuple& c) {
  const auto p = coeffs::p_from_c(c);
  const auto z = witness(lambda, c);
  const double L = compute_L(p, z);
  const cplx a5 = coeffs::a_coeffs(lambda, c).a5;
  return std::abs(L - 4.0 * std::norm(a5));
}

double RTerms::total() const {
  const auto v = values();
  return std::accumulate(v.begin(), v.end(), 0.0);
}

std::array<double, 7> RTerms::values() const {
  return {z0_sq, re_group_z0, z1_sq, re_group_z1, z2_sq, re_group_z2, z3_sq};
}

RTerms r_expansion_terms(Lambda lambda, const CoeffTuple& c) {
  const double l = lambda.value();
  const double l2 = l * l;
  const double l3 = l2 * l;
  const double l4 = l2 * l2;
  const double onem = 1.0 - l;
  const double onem2 = onem * onem;
  const double w = 3.0 * l3 - 2.0 * l2;
  const cplx c1 = c.c1, c2 = c.c2, c3 = c.c3;
  const double ac1_2 = std::norm(c1);
  const double ac1_4 = ac1_2 * ac1_2;
  const double ac2_2 = std::norm(c2);
  const cplx c1b = std::conj(c1);
  const double re_c2c1b2 = (c2 * (c1b * c1b)).real();

  RTerms t;
  t.z0_sq = l4 * (onem2 * onem2) * (ac1_4 * ac1_2);
  const cplx inner = (1.0 + l) * c3 + (3.0 * l2 + 2.0 * l + 2.0) * (c1 * c2) +
                     (3.0 * l3 + l + 1.0) * (c1 * c1 * c1);
  t.re_group_z0 = 2.0 * l2 * onem2 * (inner * (c1b * c1b * c1b)).real();
  t.z1_sq = l4 * ac2_2 + w * w * ac1_4 + 2.0 * l2 * w * re_c2c1b2;
  t.re_group_z1 = 2.0 * l2 * (1.0 + l) * ac2_2 +
                  2.0 * (2.0 * l2 + l + 1.0) * w * ac1_4 +
                  (2.0 * l2 * (2.0 * l2 + l + 1.0) + 2.0 * (1.0 + l) * w) *
                      re_c2c1b2;
  t.z2_sq = 4.0 * l4 * ac1_2;
  t.re_group_z2 = 4.0 * l2 * (1.0 + l) * ac1_2;
  t.z3_sq = (1.0 + l) * (1.0 + l);
  return t;
}

std::array<double, 5> ChainReport::values() const {
  return {r_exact, bound_after_ps, bound_after_c2, bound_f_form, bound_final};
}

ChainReport chain(Lambda lambda, const CoeffTuple& c) {
  const double l = lambda.value();
  const double l2 = l * l;
  const double l3 = l2 * l;
  const double s = std::abs(c.c1);
  const double t = s * s;
  const double ac2 = std::abs(c.c2);
  const double K = 3.0 * l3 + l + 1.0;
  const double A = l2 * (1.0 - l) * (1.0 - l) * (s * t) + K;
  const double base0 = l2 * (l2 + 2.0 * l + 2.0);
  const double base1 = (3.0 * l3 - 2.0 * l2) * (3.0 * l3 + 2.0 * l2 + 2.0 * l + 2.0);
  const double base2 = 4.0 * l2 * (l2 + l + 1.0);
  const double base3 = (1.0 + l) * (1.0 + l);
  const double cross = 2.0 * l2 * (3.0 * l3 + 3.0 * l2 + 2.0 * l - 1.0);

  ChainReport r;
  r.r_exact = compute_R(coeffs::p_from_c(c), witness(lambda, c));
  r.bound_after_ps = 4.0 * (A * A - K * K + base0 * ac2 * ac2 +
                            base1 * t * t + base2 * t + base3 + cross * ac2 * t);
  const double c2b = 1.0 - t;
  r.bound_after_c2 = 4.0 * (A * A - K * K + base0 * c2b * c2b +
                            base1 * t * t + base2 * t + base3 + cross * c2b * t);
  r.bound_f_form = 4.0 * (A * A + inequalities::Fpoly::at(lambda).eval(t));
  const double q4 = coeffs::q(4, lambda);
  r.bound_final = 4.0 * q4 * q4;
  r.lemma_in_region = l >= inequalities::ps_threshold();
  r.above_lambda0 = l >= inequalities::lambda0();

  const auto v = r.values();
  r.monotone = true;
  r.max_decrease = 0.0;
  for (int i = 0; i < 4; ++i) {
    const double drop = v[i] - v[i + 1];
    r.max_decrease = std::max(r.max_decrease, drop);
    if (drop > rel_margin(std::max(std::abs(v[i]), std::abs(v[i + 1]))))
      r.monotone = false;
  }
  return r;
}

}  // namespace coeffbound::proofchain
