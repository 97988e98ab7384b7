#include "coeffbound/schwarz.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "coeffbound/rng.hpp"

namespace coeffbound::schwarz {
namespace {

// Truncated power-series division q = num / den to n terms (n <= 4).
// Lower-triangular, so junk above index n-1 never reaches lower indices.
std::array<cplx, 4> series_div(const std::array<cplx, 4>& num,
                               const std::array<cplx, 4>& den,
                               std::size_t n) {
  std::array<cplx, 4> q{};
  std::array<cplx, 4> r = num;
  for (std::size_t i = 0; i < n; ++i) {
    q[i] = r[i] / den[0];
    for (std::size_t j = i + 1; j < n; ++j) r[j] -= q[i] * den[j - i];
  }
  return q;
}

}  // namespace

SchurVector::SchurVector(const std::array<cplx, 4>& gamma) : gamma_(gamma) {
  for (int k = 0; k < 4; ++k) {
    const double m = std::abs(gamma_[k]);
    if (m > 1.0 + kGammaSlack)
      throw std::invalid_argument("SchurVector: |gamma_" + std::to_string(k) +
                                  "| = " + std::to_string(m) +
                                  " lies outside the closed unit disk");
    if (1.0 - m * m < kBoundaryEps) {
      boundary_ = k;  // later parameters are unconstrained and ignored
      break;
    }
  }
}

CoeffTuple schur_to_coeffs(const SchurVector& g) {
  const auto& gam = g.gamma();
  const int last = g.boundary_index().value_or(3);
  // phi_last is the constant gam[last]; unwind
  //   phi_k = (gamma_k + z phi_{k+1}) / (1 + conj(gamma_k) z phi_{k+1})
  // as truncated series down to phi_0 = c1 z + c2 z^2 + c3 z^3 + c4 z^4.
  std::array<cplx, 4> phi{gam[last], 0.0, 0.0, 0.0};
  for (int k = last - 1; k >= 0; --k) {
    const cplx gk = gam[k];
    const cplx gkc = std::conj(gk);
    const std::array<cplx, 4> num{gk, phi[0], phi[1], phi[2]};
    const std::array<cplx, 4> den{1.0, gkc * phi[0], gkc * phi[1],
                                  gkc * phi[2]};
    phi = series_div(num, den, 4);
  }
  return {phi[0], phi[1], phi[2], phi[3]};
}

SchurRecovery coeffs_to_schur(const CoeffTuple& c) {
  SchurRecovery out;
  out.admissible = true;
  std::array<cplx, 4> poly = c.as_array();
  std::size_t len = 4;
  for (int k = 0; k < 4; ++k) {
    const cplx gk = poly[0];
    out.gamma[k] = gk;
    out.recovered = k + 1;
    const double m = std::abs(gk);
    if (m > 1.0 + kGammaSlack) {
      out.admissible = false;
      break;
    }
    if (k == 3) break;
    const double d = 1.0 - m * m;
    if (d < kBoundaryEps) {
      // On the boundary the function is a rotation tail: the remaining
      // series must vanish numerically or the tuple is inconsistent.
      double tail2 = 0.0;
      for (std::size_t j = 1; j < len; ++j) tail2 += std::norm(poly[j]);
      if (std::sqrt(tail2) < kBoundaryEps)
        out.boundary_index = k;
      else
        out.admissible = false;
      break;
    }
    // phi_{k+1} = ((phi_k - gamma_k) / z) / (1 - conj(gamma_k) phi_k)
    const cplx gkc = std::conj(gk);
    std::array<cplx, 4> num{};
    std::array<cplx, 4> den{};
    den[0] = d;
    for (std::size_t j = 0; j + 1 < len; ++j) {
      num[j] = poly[j + 1];
      if (j >= 1) den[j] = -gkc * poly[j];
    }
    len -= 1;
    poly = series_div(num, den, len);
  }
  return out;
}

bool is_admissible(const CoeffTuple& c) { return coeffs_to_schur(c).admissible; }

std::vector<CoeffTuple> sample(std::uint64_t seed, std::size_t count,
                               bool stratified) {
  if (count == 0)
    throw std::invalid_argument("sample: count must be positive");
  Rng rng(seed);
  std::vector<CoeffTuple> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::array<cplx, 4> g;
    for (int k = 0; k < 4; ++k) {
      const double r = std::sqrt(rng.uniform());  // area-uniform on the disk
      const double th = 2.0 * std::numbers::pi * rng.uniform();
      g[k] = std::polar(r, th);
    }
    if (stratified) {
      // Keep the extremal and near-extremal strata represented: the
      // proof chain is tight only near |gamma_0| = 1.
      const double th0 = std::arg(g[0]);
      if (i % 8 == 0)
        g[0] = std::polar(1.0, th0);
      else if (i % 8 == 1)
        g[0] = std::polar(1.0 - 0.005 * rng.uniform(), th0);
    }
    out.push_back(schur_to_coeffs(SchurVector(g)));
  }
  return out;
}

}  // namespace coeffbound::schwarz
