#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "coeffbound/coeffs.hpp"

namespace coeffbound::search {

using coeffs::Lambda;
using schwarz::CoeffTuple;

// Outcome of a multi-start maximization over the admissible coefficient
// body. best_value is objective(argmax) re-evaluated from the returned
// tuple, so callers can reproduce it exactly.
struct SearchResult {
  double best_value = 0.0;
  CoeffTuple argmax;
  int starts = 0;
  std::int64_t evaluations = 0;  // total objective evaluations, all starts
  std::uint64_t seed = 0;
};

// Derivative-free maximization of `objective` over admissible tuples.
//
// The domain is charted by 8 real coordinates in [-1, 1] (radius and
// angle per Schur parameter; out-of-box trial points are reflected back),
// so every evaluated tuple is admissible by construction, including the
// |gamma_0| = 1 boundary where the known extremals live. Nelder-Mead
// runs from `starts` initial points: start 0 is pinned at the extremal
// chart point gamma = (1, 0, 0, 0); the rest are drawn from a per-start
// generator seeded by Rng::derive(seed, k), making the run deterministic
// and best_value nondecreasing in `starts` for a fixed seed.
//
// `budget` caps objective evaluations per start (>= 100; throws
// std::invalid_argument otherwise, as does starts < 1).
//
// Starts are independent and may run on worker threads; `objective` must
// be safe to call concurrently (pure functions of the tuple are). Results
// are merged in start order, so the outcome is identical either way.
SearchResult maximize(const std::function<double(const CoeffTuple&)>& objective,
                      int starts, int budget, std::uint64_t seed);

// maximize() with objective |a5(lambda, c)|. Compare with
// q(4, lambda) = 1 + lambda + ... + lambda^4, the conjectured maximum.
SearchResult maximize_a5(Lambda lambda, int starts, int budget,
                         std::uint64_t seed);

// maximize() with objective |c3 + mu c1 c2 + nu c1^3|. Inside the
// validity region the sharp bound is nu; outside it the true maximum can
// exceed nu (e.g. (mu, nu) = (3, 1)).
SearchResult maximize_ps(double mu, double nu, int starts, int budget,
                         std::uint64_t seed);

struct SweepRow {
  double lambda;
  double max_a5;  // best found |a5|
  double bound;   // q(4, lambda)
  double gap;     // bound - max_a5 (>= -1e-6 expected on [lambda0, 1])
};

// maximize_a5 across a lambda grid. Throws on an empty grid.
std::vector<SweepRow> sweep(const std::vector<double>& lambdas, int starts,
                            int budget, std::uint64_t seed);

}  // namespace coeffbound::search
