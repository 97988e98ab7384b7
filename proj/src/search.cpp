#include "coeffbound/search.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <utility>

#include "coeffbound/inequalities.hpp"
#include "coeffbound/rng.hpp"

namespace coeffbound::search {
namespace {

constexpr int kDim = 8;
using Point = std::array<double, kDim>;

// Reflect x into [-1, 1] (triangle wave), so trial points that leave the
// box re-enter it smoothly instead of being clipped.
double fold(double x) {
  double u = std::fmod(x + 1.0, 4.0);
  if (u < 0.0) u += 4.0;
  return (u <= 2.0 ? u : 4.0 - u) - 1.0;
}

// Chart [-1,1]^8 -> Schur parameters: (radius, angle) per gamma_k. Every
// chart point is an admissible tuple by construction, and the boundary
// |gamma_0| = 1 (where the known extremals live) is reachable.
schwarz::SchurVector chart(const Point& x) {
  std::array<cplx, 4> g;
  for (int k = 0; k < 4; ++k) {
    const double r = std::abs(fold(x[2 * k]));
    const double th = std::numbers::pi * fold(x[2 * k + 1]);
    g[k] = std::polar(r, th);
  }
  return schwarz::SchurVector(g);
}

struct StartOutcome {
  double best = -std::numeric_limits<double>::infinity();
  Point best_x{};
  std::int64_t evals = 0;
};

// One Nelder-Mead descent of g = -objective from x0, capped at `budget`
// objective evaluations. Standard coefficients (reflect 1, expand 2,
// contract 0.5, shrink 0.5); ties broken by vertex index so the path is
// deterministic.
StartOutcome run_start(const std::function<double(const CoeffTuple&)>& objective,
                       const Point& x0, int budget) {
  StartOutcome out;
  auto eval = [&](const Point& x) {
    const CoeffTuple c = schwarz::schur_to_coeffs(chart(x));
    const double v = objective(c);
    ++out.evals;
    if (v > out.best) {
      out.best = v;
      out.best_x = x;
    }
    return -v;
  };

  std::array<Point, kDim + 1> xs;
  std::array<double, kDim + 1> fs;
  xs[0] = x0;
  fs[0] = eval(xs[0]);
  for (int i = 0; i < kDim; ++i) {
    xs[i + 1] = x0;
    xs[i + 1][i] += 0.25;
    fs[i + 1] = eval(xs[i + 1]);
  }

  auto order = [&] {
    std::array<int, kDim + 1> idx;
    for (int i = 0; i <= kDim; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
      return fs[a] != fs[b] ? fs[a] < fs[b] : a < b;
    });
    std::array<Point, kDim + 1> nxs;
    std::array<double, kDim + 1> nfs;
    for (int i = 0; i <= kDim; ++i) {
      nxs[i] = xs[idx[i]];
      nfs[i] = fs[idx[i]];
    }
    xs = nxs;
    fs = nfs;
  };

  while (out.evals < budget) {
    order();
    double diam = 0.0;
    for (int i = 1; i <= kDim; ++i)
      for (int d = 0; d < kDim; ++d)
        diam = std::max(diam, std::abs(xs[i][d] - xs[0][d]));
    if (diam < 1e-9 && fs[kDim] - fs[0] < 1e-12 * (1.0 + std::abs(fs[0])))
      break;

    Point xc{};
    for (int i = 0; i < kDim; ++i)
      for (int d = 0; d < kDim; ++d) xc[d] += xs[i][d] / kDim;
    const Point& xw = xs[kDim];

    Point xr;
    for (int d = 0; d < kDim; ++d) xr[d] = xc[d] + (xc[d] - xw[d]);
    const double fr = eval(xr);

    if (fr < fs[0]) {
      if (out.evals >= budget) break;
      Point xe;
      for (int d = 0; d < kDim; ++d) xe[d] = xc[d] + 2.0 * (xc[d] - xw[d]);
      const double fe = eval(xe);
      if (fe < fr) {
        xs[kDim] = xe;
        fs[kDim] = fe;
      } else {
        xs[kDim] = xr;
        fs[kDim] = fr;
      }
      continue;
    }
    if (fr < fs[kDim - 1]) {
      xs[kDim] = xr;
      fs[kDim] = fr;
      continue;
    }
    if (out.evals >= budget) break;
    bool contracted = false;
    if (fr < fs[kDim]) {
      Point xo;  // outside contraction
      for (int d = 0; d < kDim; ++d) xo[d] = xc[d] + 0.5 * (xr[d] - xc[d]);
      const double fo = eval(xo);
      if (fo <= fr) {
        xs[kDim] = xo;
        fs[kDim] = fo;
        contracted = true;
      }
    } else {
      Point xi;  // inside contraction
      for (int d = 0; d < kDim; ++d) xi[d] = xc[d] + 0.5 * (xw[d] - xc[d]);
      const double fi = eval(xi);
      if (fi < fs[kDim]) {
        xs[kDim] = xi;
        fs[kDim] = fi;
        contracted = true;
      }
    }
    if (!contracted) {
      for (int i = 1; i <= kDim; ++i) {  // shrink toward the best vertex
        if (out.evals >= budget) break;
        for (int d = 0; d < kDim; ++d)
          xs[i][d] = xs[0][d] + 0.5 * (xs[i][d] - xs[0][d]);
        fs[i] = eval(xs[i]);
      }
    }
  }
  return out;
}

}  // namespace

SearchResult maximize(const std::function<double(const CoeffTuple&)>& objective,
                      int starts, int budget, std::uint64_t seed) {
  if (starts < 1)
    throw std::invalid_argument("maximize: starts must be >= 1");
  if (budget < 100)
    throw std::invalid_argument("maximize: budget must be >= 100");

  std::vector<StartOutcome> outcomes(static_cast<std::size_t>(starts));
  auto run_one = [&](int k) {
    Point x0{};
    if (k == 0) {
      x0[0] = 1.0;  // the extremal chart point gamma = (1, 0, 0, 0)
    } else {
      Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(k)));
      for (double& v : x0) v = rng.uniform(-1.0, 1.0);
    }
    outcomes[static_cast<std::size_t>(k)] = run_start(objective, x0, budget);
  };

  const unsigned hw = std::thread::hardware_concurrency();
  const unsigned nthreads =
      std::min<unsigned>(hw == 0 ? 1 : hw, static_cast<unsigned>(starts));
  if (nthreads <= 1) {
    for (int k = 0; k < starts; ++k) run_one(k);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (unsigned t = 0; t < nthreads; ++t)
      pool.emplace_back([&] {
        for (int k; (k = next.fetch_add(1)) < starts;) run_one(k);
      });
    for (auto& th : pool) th.join();
  }

  // Merge in start order; strict improvement keeps the earliest winner.
  int best_k = 0;
  std::int64_t total = 0;
  for (int k = 0; k < starts; ++k) {
    total += outcomes[static_cast<std::size_t>(k)].evals;
    if (outcomes[static_cast<std::size_t>(k)].best >
        outcomes[static_cast<std::size_t>(best_k)].best)
      best_k = k;
  }

  SearchResult res;
  res.argmax =
      schwarz::schur_to_coeffs(chart(outcomes[static_cast<std::size_t>(best_k)].best_x));
  res.best_value = objective(res.argmax);
  res.starts = starts;
  res.evaluations = total;
  res.seed = seed;
  return res;
}

SearchResult maximize_a5(Lambda lambda, int starts, int budget,
                         std::uint64_t seed) {
  return maximize(
      [lambda](const CoeffTuple& c) {
        return std::abs(coeffs::a_coeffs(lambda, c).a5);
      },
      starts, budget, seed);
}

SearchResult maximize_ps(double mu, double nu, int starts, int budget,
                         std::uint64_t seed) {
  return maximize(
      [mu, nu](const CoeffTuple& c) {
        return inequalities::ps_functional(mu, nu, c);
      },
      starts, budget, seed);
}

std::vector<SweepRow> sweep(const std::vector<double>& lambdas, int starts,
                            int budget, std::uint64_t seed) {
  if (lambdas.empty())
    throw std::invalid_argument("sweep: lambda grid must be nonempty");
  std::vector<SweepRow> rows;
  rows.reserve(lambdas.size());
  for (const double l : lambdas) {
    const Lambda lam(l);
    const auto r = maximize_a5(lam, starts, budget, seed);
    const double bound = coeffs::q(4, lam);
    rows.push_back({l, r.best_value, bound, bound - r.best_value});
  }
  return rows;
}

}  // namespace coeffbound::search
