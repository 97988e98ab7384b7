#pragma once

#include <array>
#include <span>
#include <string_view>

#include "coeffbound/coeffs.hpp"

namespace coeffbound::proofchain {

using coeffs::Lambda;
using coeffs::PCoeffs;
using schwarz::CoeffTuple;

// Truncated Leverenz quadratic form for a Caratheodory candidate
// 1 + p1 z + p2 z^2 + ... tested against weights z_0..z_K (z_k = 0 for
// k > K):
//   sum_{j=0}^{K} [ |2 z_j + sum_{k=1}^{K-j} p_k z_{k+j}|^2
//                   - |sum_{k=0}^{K-j} p_{k+1} z_{k+j}|^2 ]
// Nonnegative for every choice of z iff p are Caratheodory coefficients.
// Requires p.size() == z.size() >= 1 (throws std::invalid_argument).
double leverenz_form(std::span<const cplx> p, std::span<const cplx> z);

// The specific weight vector that makes the form's two halves line up
// with |a5|:
//   z0 = lambda^2 (1 - lambda)^2 c1^3
//   z1 = lambda^2 c2 + (3 lambda^3 - 2 lambda^2) c1^2
//   z2 = 2 lambda^2 c1
//   z3 = 1 + lambda
struct WitnessVector {
  cplx z0, z1, z2, z3;

  std::array<cplx, 4> as_array() const { return {z0, z1, z2, z3}; }
};
WitnessVector witness(Lambda lambda, const CoeffTuple& c);

// L = |p1 z0 + p2 z1 + p3 z2 + p4 z3|^2
double compute_L(const PCoeffs& p, const WitnessVector& z);

// R = |2 z0 + p1 z1 + p2 z2 + p3 z3|^2 - |p1 z1 + p2 z2 + p3 z3|^2
//   + |2 z1 + p1 z2 + p2 z3|^2 - |p1 z2 + p2 z3|^2
//   + |2 z2 + p1 z3|^2 - |p1 z3|^2
//   + 4 |z3|^2
double compute_R(const PCoeffs& p, const WitnessVector& z);

// |L - 4 |a5|^2| at (p_from_c(c), witness(lambda, c)). The identity
// L = 4 |a5|^2 holds as a polynomial identity in c, so the residual is
// floating-point noise: <= 1e-9 * (1 + L) for any finite input.
double identity_residual(Lambda lambda, const CoeffTuple& c);

// R/4 split into the seven closed-form terms of its expansion: after
// substituting the witness, the squared-modulus groups collapse into
// |z_j|^2 blocks and cross-term real parts (l = lambda below):
//   z0_sq       = l^4 (1-l)^4 |c1|^6
//   re_group_z0 = 2 l^2 (1-l)^2 Re{ [(1+l) c3 + (3l^2+2l+2) c1 c2
//                                    + (3l^3+l+1) c1^3] conj(c1)^3 }
//   z1_sq       = l^4 |c2|^2 + (3l^3-2l^2)^2 |c1|^4
//                 + 2 l^2 (3l^3-2l^2) Re{ c2 conj(c1)^2 }
//   re_group_z1 = 2 l^2 (1+l) |c2|^2 + 2 (2l^2+l+1)(3l^3-2l^2) |c1|^4
//                 + [2l^2(2l^2+l+1) + 2(1+l)(3l^3-2l^2)] Re{ c2 conj(c1)^2 }
//   z2_sq       = 4 l^4 |c1|^2
//   re_group_z2 = 4 l^2 (1+l) |c1|^2
//   z3_sq       = (1+l)^2
struct RTerms {
  double z0_sq;
  double re_group_z0;
  double z1_sq;
  double re_group_z1;
  double z2_sq;
  double re_group_z2;
  double z3_sq;

  double total() const;
  std::array<double, 7> values() const;

  static constexpr std::array<std::string_view, 7> names = {
      "z0_sq",       "re_group_z0", "z1_sq", "re_group_z1",
      "z2_sq",       "re_group_z2", "z3_sq"};
};
// Evaluates the seven closed forms directly (real arithmetic, no complex
// intermediates shared with compute_R); 4 * total() reproduces compute_R.
RTerms r_expansion_terms(Lambda lambda, const CoeffTuple& c);

// lambda >= (sqrt(52) - 4) / 9: the cubic-functional bound used at the
// first chain step is valid (its (mu, nu) lie in the lemma's region).
// lambda >= lambda0: every adjacent step below is a true inequality.
//
// Values, all inflated by the factor 4 so r_exact = compute_R:
//   r_exact        exact R at (p_from_c(c), witness(lambda, c))
//   bound_after_ps cubic functional replaced by its sharp bound
//   bound_after_c2 |c2| replaced by 1 - |c1|^2
//   bound_f_form   same bound rearranged around F(lambda, |c1|^2)
//   bound_final    4 q_4(lambda)^2, i.e. (2 (1+lambda+...+lambda^4))^2
struct ChainReport {
  double r_exact;
  double bound_after_ps;
  double bound_after_c2;
  double bound_f_form;
  double bound_final;
  bool lemma_in_region;
  bool above_lambda0;
  bool monotone;        // nondecreasing within rel_margin of each step
  double max_decrease;  // worst adjacent drop (0 when none)

  std::array<double, 5> values() const;
  static constexpr std::array<std::string_view, 5> names = {
      "r_exact", "bound_after_ps", "bound_after_c2", "bound_f_form",
      "bound_final"};
};
ChainReport chain(Lambda lambda, const CoeffTuple& c);

}  // namespace coeffbound::proofchain
