#include <doctest.h>

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "coeffbound/coeffs.hpp"
#include "coeffbound/inequalities.hpp"
#include "coeffbound/proofchain.hpp"
#include "coeffbound/rng.hpp"

using namespace coeffbound;
using coeffs::Lambda;
using schwarz::CoeffTuple;

namespace {

CoeffTuple random_tuple(Rng& rng, double radius) {
  CoeffTuple c;
  for (cplx* p : {&c.c1, &c.c2, &c.c3, &c.c4})
    *p = std::polar(radius * std::sqrt(rng.uniform()),
                    rng.uniform(0.0, 6.283185307179586));
  return c;
}

std::vector<cplx> random_weights(Rng& rng, std::size_t n, double radius) {
  std::vector<cplx> z(n);
  for (auto& zk : z)
    zk = std::polar(radius * std::sqrt(rng.uniform()),
                    rng.uniform(0.0, 6.283185307179586));
  return z;
}

}  // namespace

TEST_CASE("leverenz_form: argument validation") {
  const std::vector<cplx> p4(4, cplx(2.0)), z3(3, cplx(1.0)), z0;
  CHECK_THROWS_AS(proofchain::leverenz_form(p4, z3), std::invalid_argument);
  CHECK_THROWS_AS(proofchain::leverenz_form(z0, z0), std::invalid_argument);
}

TEST_CASE("leverenz_form: nonnegative for Caratheodory coefficients") {
  // p_k = 2 for all k are the coefficients of (1 + z)/(1 - z).
  Rng rng(1311);
  const std::vector<cplx> p4(4, cplx(2.0));
  for (int trial = 0; trial < 50; ++trial) {
    const auto z = random_weights(rng, 4, 3.0);
    CHECK(proofchain::leverenz_form(p4, z) >= -1e-10);
  }
  // Longer truncation exercises the general-K summation.
  const std::vector<cplx> p6(6, cplx(2.0));
  for (int trial = 0; trial < 50; ++trial) {
    const auto z = random_weights(rng, 6, 3.0);
    CHECK(proofchain::leverenz_form(p6, z) >= -1e-10);
  }
}

TEST_CASE("leverenz_form: detects a non-Caratheodory candidate") {
  // p = (3, 0, 0, 0) has |p1| > 2. With z = (1, t, 0, 0) the form is
  // (2 + 3t)^2 - 9 + 4t^2 - 9t^2 = 4t^2 + 12t - 5, equal to -14 at t = -3/2.
  const std::vector<cplx> p{3.0, 0.0, 0.0, 0.0};
  const std::vector<cplx> z{1.0, -1.5, 0.0, 0.0};
  CHECK(std::abs(proofchain::leverenz_form(p, z) - (-14.0)) <= 1e-12);
}

TEST_CASE("witness: frozen values at lambda = 1/2, rotation jet") {
  const auto z = proofchain::witness(Lambda(0.5), {cplx(1.0), 0.0, 0.0, 0.0});
  CHECK(std::abs(z.z0 - cplx(0.0625)) <= 1e-15);
  CHECK(std::abs(z.z1 - cplx(-0.125)) <= 1e-15);
  CHECK(std::abs(z.z2 - cplx(0.5)) <= 1e-15);
  CHECK(std::abs(z.z3 - cplx(1.5)) <= 1e-15);
}

TEST_CASE("identity: L = 4 |a5|^2 for arbitrary complex tuples") {
  Rng rng(1313);
  for (const double l : {0.15, 0.4004363670683606, 0.5, 0.9, 1.0}) {
    const Lambda lam(l);
    for (int trial = 0; trial < 100; ++trial) {
      const auto c = random_tuple(rng, 1.4);
      const auto p = coeffs::p_from_c(c);
      const auto z = proofchain::witness(lam, c);
      const double L = proofchain::compute_L(p, z);
      CHECK(proofchain::identity_residual(lam, c) <= 1e-9 * (1.0 + L));
    }
  }
}

TEST_CASE("compute_R minus compute_L equals the truncated form") {
  Rng rng(1315);
  for (const double l : {0.3, 0.7, 1.0}) {
    const Lambda lam(l);
    for (int trial = 0; trial < 100; ++trial) {
      const auto c = random_tuple(rng, 1.2);
      const auto p = coeffs::p_from_c(c);
      const auto z = proofchain::witness(lam, c);
      const double R = proofchain::compute_R(p, z);
      const double L = proofchain::compute_L(p, z);
      const double form =
          proofchain::leverenz_form(p.as_array(), z.as_array());
      CHECK(std::abs(R - L - form) <= 1e-12 * (1.0 + std::abs(R)));
    }
  }
}

TEST_CASE("r_expansion_terms: closed forms reproduce compute_R") {
  Rng rng(1317);
  for (const double l : {0.25, 0.5, 0.85, 1.0}) {
    const Lambda lam(l);
    for (int trial = 0; trial < 100; ++trial) {
      const auto c = random_tuple(rng, 1.3);
      const auto terms = proofchain::r_expansion_terms(lam, c);
      const double R = proofchain::compute_R(coeffs::p_from_c(c),
                                             proofchain::witness(lam, c));
      CHECK(std::abs(4.0 * terms.total() - R) <= 1e-10 * (1.0 + std::abs(R)));
      const auto vals = terms.values();
      double acc = 0.0;
      for (const double v : vals) acc += v;
      CHECK(terms.total() == acc);
    }
  }
}

TEST_CASE("chain: frozen report at lambda = 1/2, zero tuple") {
  const auto rep = proofchain::chain(Lambda(0.5), CoeffTuple{});
  const std::array<double, 5> expect{9.0, 9.0, 12.25, 12.25, 15.015625};
  const auto vals = rep.values();
  for (int i = 0; i < 5; ++i)
    CHECK(std::abs(vals[i] - expect[i]) <= 1e-12);
  CHECK(rep.lemma_in_region);
  CHECK(rep.above_lambda0);
  CHECK(rep.monotone);
  CHECK(rep.max_decrease == 0.0);
}

TEST_CASE("chain: flags below the thresholds") {
  const auto rep = proofchain::chain(Lambda(0.2), CoeffTuple{});
  CHECK(!rep.lemma_in_region);   // 0.2 < (sqrt(52) - 4)/9
  CHECK(!rep.above_lambda0);
}

TEST_CASE("chain: every inequality saturates at the rotation jet") {
  for (const double l : {0.1, 0.2, 0.4004363670683606, 0.5, 0.75, 1.0}) {
    const Lambda lam(l);
    for (const double th : {0.0, 1.1, 1.5707963267948966, 3.0, 5.5}) {
      const CoeffTuple c{std::polar(1.0, th), 0.0, 0.0, 0.0};
      const auto rep = proofchain::chain(lam, c);
      for (const double v : rep.values())
        CHECK(std::abs(v - rep.bound_final) <=
              1e-9 * (1.0 + std::abs(rep.bound_final)));
      CHECK(rep.monotone);
    }
  }
}

TEST_CASE("chain: bound_after_c2 and bound_f_form are the same quantity") {
  int idx = 0;
  for (const double l : {0.2, 0.45, 0.7, 1.0}) {
    const Lambda lam(l);
    const auto tuples = schwarz::sample(Rng::derive(1319, idx++), 100, true);
    for (const auto& c : tuples) {
      const auto rep = proofchain::chain(lam, c);
      CHECK(std::abs(rep.bound_after_c2 - rep.bound_f_form) <=
            1e-12 * (1.0 + std::abs(rep.bound_after_c2)));
    }
  }
}

TEST_CASE("chain: monotone on sampled tuples for lambda >= lambda0") {
  const double l0 = inequalities::lambda0();
  int idx = 0;
  for (const double l : {l0, 0.5, 0.75, 1.0}) {
    const Lambda lam(l);
    const auto tuples = schwarz::sample(Rng::derive(2718, idx++), 300, true);
    for (const auto& c : tuples) {
      const auto rep = proofchain::chain(lam, c);
      CHECK(rep.monotone);
      CHECK(rep.r_exact >= 0.0);
    }
  }
}
