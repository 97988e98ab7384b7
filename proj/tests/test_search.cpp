#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "coeffbound/coeffs.hpp"
#include "coeffbound/inequalities.hpp"
#include "coeffbound/search.hpp"

using namespace coeffbound;
using coeffs::Lambda;

TEST_CASE("maximize_a5: deterministic for a fixed seed") {
  const auto a = search::maximize_a5(Lambda(0.5), 8, 500, 42);
  const auto b = search::maximize_a5(Lambda(0.5), 8, 500, 42);
  CHECK(a.best_value == b.best_value);
  CHECK(a.evaluations == b.evaluations);
  CHECK(a.argmax.c1 == b.argmax.c1);
  CHECK(a.argmax.c2 == b.argmax.c2);
  CHECK(a.argmax.c3 == b.argmax.c3);
  CHECK(a.argmax.c4 == b.argmax.c4);
  CHECK(a.starts == 8);
  CHECK(a.seed == 42);
  CHECK(a.evaluations >= 8);
  CHECK(a.evaluations <= 8 * 500);
}

TEST_CASE("maximize_a5: best value is nondecreasing in the start count") {
  double prev = -1.0;
  for (int starts = 1; starts <= 6; ++starts) {
    const auto r = search::maximize_a5(Lambda(0.6), starts, 300, 7);
    CHECK(r.best_value >= prev);
    prev = r.best_value;
  }
}

TEST_CASE("maximize_a5: reported value is reproducible from argmax") {
  const auto r = search::maximize_a5(Lambda(0.7), 4, 250, 11);
  const auto a = coeffs::a_coeffs(Lambda(0.7), r.argmax);
  CHECK(r.best_value == std::abs(a.a5));
  CHECK(schwarz::is_admissible(r.argmax));
}

TEST_CASE("maximize_a5: the pinned start attains the conjectured maximum") {
  for (const double l : {0.45, 0.7, 1.0}) {
    const Lambda lam(l);
    const auto r = search::maximize_a5(lam, 1, 100, 1);
    const double bound = coeffs::q(4, lam);
    CHECK(r.best_value >= bound - 1e-12);
    CHECK(r.best_value <= bound + 1e-6);
  }
}

TEST_CASE("maximize_ps: attains nu inside the validity region") {
  const auto pp = inequalities::ps_params(Lambda(0.5));
  REQUIRE(pp.in_region);
  const auto r = search::maximize_ps(pp.mu, pp.nu, 8, 1000, 3);
  CHECK(r.best_value >= pp.nu - 1e-9);
  CHECK(r.best_value <= pp.nu + 1e-6);
}

TEST_CASE("maximize_ps: exceeds nu outside the region at (3, 1)") {
  // The sharp-bound hypothesis fails at (mu, nu) = (3, 1): the true
  // maximum is 16 / (3 sqrt(15)) ~ 1.3771.
  const auto r = search::maximize_ps(3.0, 1.0, 24, 4000, 5);
  CHECK(r.best_value > 1.001);
  CHECK(r.best_value <= 16.0 / (3.0 * std::sqrt(15.0)) + 1e-6);
}

TEST_CASE("maximize: argument validation") {
  CHECK_THROWS_AS(search::maximize_a5(Lambda(0.5), 0, 1000, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(search::maximize_a5(Lambda(0.5), 4, 99, 1),
                  std::invalid_argument);
  CHECK_NOTHROW(search::maximize_a5(Lambda(0.5), 1, 100, 1));
}

TEST_CASE("sweep: rows mirror maximize_a5 against q4") {
  CHECK_THROWS_AS(search::sweep({}, 4, 300, 1), std::invalid_argument);
  const std::vector<double> grid{0.45, 0.7, 1.0};
  const auto rows = search::sweep(grid, 4, 300, 9);
  REQUIRE(rows.size() == 3);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].lambda == grid[i]);
    CHECK(rows[i].bound == coeffs::q(4, Lambda(grid[i])));
    CHECK(rows[i].gap == rows[i].bound - rows[i].max_a5);
    CHECK(std::abs(rows[i].gap) <= 1e-4);  // pinned start already saturates
  }
}
