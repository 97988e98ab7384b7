#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "coeffbound/common.hpp"

namespace coeffbound::schwarz {

// First four Taylor coefficients of a Schwarz function
// w(z) = c1 z + c2 z^2 + c3 z^3 + c4 z^4 + ...  on the unit disk.
struct CoeffTuple {
  cplx c1{}, c2{}, c3{}, c4{};

  std::array<cplx, 4> as_array() const { return {c1, c2, c3, c4}; }
};

// |gamma_k| <= 1 + kGammaSlack is accepted as inside the closed disk.
inline constexpr double kGammaSlack = 1e-10;
// 1 - |gamma_k|^2 below this puts gamma_k on the boundary stratum.
inline constexpr double kBoundaryEps = 1e-10;

// Four Schur parameters gamma_0..gamma_3, each in the closed unit disk.
// If some |gamma_k| = 1 the function is determined there: every later
// parameter is ignored (stored as given, irrelevant to the chart).
class SchurVector {
 public:
  // Throws std::invalid_argument if a parameter at or before the first
  // boundary index lies outside the closed disk (beyond kGammaSlack).
  explicit SchurVector(const std::array<cplx, 4>& gamma);

  const std::array<cplx, 4>& gamma() const { return gamma_; }
  // First k with 1 - |gamma_k|^2 < kBoundaryEps, if any.
  std::optional<int> boundary_index() const { return boundary_; }

 private:
  std::array<cplx, 4> gamma_;
  std::optional<int> boundary_;
};

// Inverse Schur recursion: parameters -> first four coefficients.
// Exact on the boundary strata: if |gamma_0| = 1 the result is
// (gamma_0, 0, 0, 0), and in general coefficients past a boundary index
// are those of the finite Blaschke-type tail.
CoeffTuple schur_to_coeffs(const SchurVector& g);

// Result of the forward (coefficients -> parameters) recursion.
struct SchurRecovery {
  // Recovered parameters; entries past `recovered` are zero. For
  // inadmissible input the offending parameter lies outside the disk.
  std::array<cplx, 4> gamma{};
  // All recovered parameters within the closed disk (+slack), and any
  // boundary stratum has a numerically constant tail.
  bool admissible = false;
  // Stratum where the recursion stopped because |gamma_k| reached 1.
  std::optional<int> boundary_index;
  // Number of parameters actually recovered (4 unless stopped early).
  int recovered = 0;
};

// Forward Schur recursion with the boundary tolerance policy above:
// at 1 - |gamma_k|^2 < kBoundaryEps the remaining series must be
// constant to within kBoundaryEps in norm, else the tuple is rejected.
SchurRecovery coeffs_to_schur(const CoeffTuple& c);

// True iff c is the 4-jet of some Schwarz function (tolerances above).
bool is_admissible(const CoeffTuple& c);

// Draws `count` admissible tuples by sampling Schur parameters uniformly
// on the disk (area-uniform) and mapping through schur_to_coeffs.
// Deterministic for a fixed (seed, count, stratified).
//
// With stratified = true, every 8th draw pins |gamma_0| = 1 (extremal
// stratum) and the following draw forces |gamma_0| in [0.995, 1), so the
// near-boundary region where the proof chain is tight stays covered.
// Throws std::invalid_argument when count == 0.
std::vector<CoeffTuple> sample(std::uint64_t seed, std::size_t count,
                               bool stratified = true);

}  // namespace coeffbound::schwarz
