#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "coeffbound/rng.hpp"
#include "coeffbound/schwarz.hpp"

using namespace coeffbound;
using schwarz::CoeffTuple;
using schwarz::SchurVector;

TEST_CASE("schur_to_coeffs: frozen interior example") {
  const SchurVector g({cplx(0.5), cplx(0.5), cplx(0.0), cplx(0.0)});
  const CoeffTuple c = schur_to_coeffs(g);
  CHECK(std::abs(c.c1 - cplx(0.5)) <= 1e-15);
  CHECK(std::abs(c.c2 - cplx(0.375)) <= 1e-15);
  CHECK(std::abs(c.c3 - cplx(-0.09375)) <= 1e-15);
  CHECK(std::abs(c.c4 - cplx(0.0234375)) <= 1e-15);
}

TEST_CASE("schur_to_coeffs: boundary parameter gives a rotation jet") {
  for (const double th : {0.0, 0.7, 2.0, 3.9, 5.8}) {
    const cplx g0 = std::polar(1.0, th);
    const SchurVector g({g0, cplx(0.3), cplx(-0.2), cplx(0.1)});
    const CoeffTuple c = schur_to_coeffs(g);
    CHECK(g.boundary_index().has_value());
    CHECK(g.boundary_index().value() == 0);
    CHECK(std::abs(c.c1 - g0) <= 1e-15);
    CHECK(std::abs(c.c2) <= 1e-15);
    CHECK(std::abs(c.c3) <= 1e-15);
    CHECK(std::abs(c.c4) <= 1e-15);
  }
}

TEST_CASE("SchurVector: rejects out-of-disk, ignores entries past boundary") {
  CHECK_THROWS_AS(SchurVector({cplx(1.5), 0.0, 0.0, 0.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(SchurVector({cplx(0.5), cplx(0.0, 1.2), 0.0, 0.0}),
                  std::invalid_argument);
  // gamma_1 = 5 sits after the boundary at k = 0, so it is irrelevant.
  const SchurVector g({cplx(1.0), cplx(5.0), 0.0, 0.0});
  CHECK(g.boundary_index().value() == 0);
  const CoeffTuple c = schur_to_coeffs(g);
  CHECK(std::abs(c.c1 - cplx(1.0)) <= 1e-15);
  CHECK(std::abs(c.c4) <= 1e-15);
}

TEST_CASE("roundtrip: coeffs_to_schur inverts schur_to_coeffs") {
  Rng rng(314159);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    std::array<cplx, 4> g;
    for (auto& gk : g) {
      const double r = (1.0 - 1e-6) * std::sqrt(rng.uniform());
      gk = std::polar(r, rng.uniform(0.0, 6.283185307179586));
    }
    const CoeffTuple c = schur_to_coeffs(SchurVector(g));
    const auto rec = coeffs_to_schur(c);
    REQUIRE(rec.admissible);
    REQUIRE(rec.recovered == 4);
    CHECK(!rec.boundary_index.has_value());
    for (int k = 0; k < 4; ++k)
      worst = std::max(worst, std::abs(rec.gamma[k] - g[k]));
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("coeffs_to_schur: frozen forward example") {
  const CoeffTuple c{0.3, 0.2, 0.1, 0.05};
  const auto rec = coeffs_to_schur(c);
  REQUIRE(rec.admissible);
  REQUIRE(rec.recovered == 4);
  CHECK(std::abs(std::abs(rec.gamma[0]) - 0.3) <= 1e-12);
  CHECK(std::abs(std::abs(rec.gamma[1]) - 0.21978021978021978) <= 1e-9);
  CHECK(std::abs(std::abs(rec.gamma[2]) - 0.13069407437057034) <= 1e-9);
  CHECK(std::abs(std::abs(rec.gamma[3]) - 0.07906885228518614) <= 1e-9);
}

TEST_CASE("coeffs_to_schur: inadmissible tuple is rejected with evidence") {
  const CoeffTuple c{0.9, 0.5, 0.0, 0.0};
  const auto rec = coeffs_to_schur(c);
  CHECK(!rec.admissible);
  CHECK(rec.recovered == 2);
  // gamma_1 = c2 / (1 - |c1|^2) = 0.5 / 0.19
  CHECK(std::abs(std::abs(rec.gamma[1]) - 0.5 / 0.19) <= 1e-9);
  CHECK(!is_admissible(c));
}

TEST_CASE("coeffs_to_schur: boundary tail policy") {
  // |c1| = 1 forces w(z) = c1 z exactly; any nonzero tail is impossible.
  const CoeffTuple good{cplx(1.0), 0.0, 0.0, 0.0};
  const auto ok = coeffs_to_schur(good);
  CHECK(ok.admissible);
  CHECK(ok.boundary_index.has_value());
  CHECK(ok.boundary_index.value() == 0);

  const CoeffTuple bad{cplx(1.0), cplx(0.1), 0.0, 0.0};
  CHECK(!coeffs_to_schur(bad).admissible);
  CHECK(!is_admissible(bad));

  const cplx u = std::polar(1.0, 1.234);
  const CoeffTuple rot{u, 0.0, 0.0, 0.0};
  CHECK(coeffs_to_schur(rot).admissible);
}

TEST_CASE("c2 recovery matches gamma_1 (1 - |gamma_0|^2)") {
  Rng rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    std::array<cplx, 4> g;
    for (auto& gk : g)
      gk = std::polar(0.9 * std::sqrt(rng.uniform()),
                      rng.uniform(0.0, 6.283185307179586));
    const CoeffTuple c = schur_to_coeffs(SchurVector(g));
    const cplx expect = g[1] * (1.0 - std::norm(g[0]));
    CHECK(std::abs(c.c2 - expect) <= 1e-14);
  }
}

TEST_CASE("sample: deterministic, admissible, boundary-stratified") {
  const auto a = schwarz::sample(2024, 1000, true);
  const auto b = schwarz::sample(2024, 1000, true);
  REQUIRE(a.size() == 1000);
  REQUIRE(b.size() == 1000);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].c1 == b[i].c1);
    CHECK(a[i].c2 == b[i].c2);
    CHECK(a[i].c3 == b[i].c3);
    CHECK(a[i].c4 == b[i].c4);
  }

  const auto other = schwarz::sample(2025, 1000, true);
  bool any_diff = false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].c1 != other[i].c1) any_diff = true;
  CHECK(any_diff);

  int near_boundary = 0;
  for (const auto& c : a) {
    CHECK(schwarz::is_admissible(c));
    if (std::abs(c.c1) > 0.99) ++near_boundary;
  }
  // i % 8 == 0 pins |c1| = 1 and i % 8 == 1 draws |c1| in [0.995, 1).
  CHECK(near_boundary >= 100);

  for (const auto& c : schwarz::sample(7, 64, false))
    CHECK(schwarz::is_admissible(c));

  CHECK_THROWS_AS(schwarz::sample(1, 0, true), std::invalid_argument);
}
