#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "coeffbound/coeffs.hpp"
#include "coeffbound/schwarz.hpp"

// Batch evaluation kernels for the verification suites. The module
// functions (proofchain::, inequalities::) are the scalar reference
// implementations; these kernels recompute the same quantities over
// structure-of-arrays batches, with a plain scalar lane and an AVX2 lane
// selected at runtime. Both lanes evaluate one shared expression graph
// (compiled without FP contraction), so they agree bit-for-bit; tests
// additionally check every kernel against its module reference.
namespace coeffbound::kernels {

using coeffs::Lambda;
using schwarz::CoeffTuple;

enum class Lane { scalar, avx2 };

std::string_view lane_name(Lane lane);
bool lane_supported(Lane lane);
// Lane the next kernel call will use (honors any force_lane override).
Lane active_lane();
// Test hook: pin the lane (throws std::invalid_argument if unsupported);
// nullopt restores automatic selection.
void force_lane(std::optional<Lane> lane);

// Structure-of-arrays layout for coefficient tuples.
struct CoeffBatch {
  std::vector<double> c1re, c1im, c2re, c2im, c3re, c3im, c4re, c4im;

  std::size_t size() const { return c1re.size(); }
  void reserve(std::size_t n);
  void push_back(const CoeffTuple& c);
  CoeffTuple at(std::size_t i) const;

  static CoeffBatch from(std::span<const CoeffTuple> tuples);
};

// out[i] = |a5(lambda, c_i)|^2
void abs2_a5(Lambda lambda, const CoeffBatch& batch, std::span<double> out);

// out[i] = |L - 4 |a5|^2| / (1 + L) at (p_from_c(c_i), witness(lambda, c_i))
void identity_residual_rel(Lambda lambda, const CoeffBatch& batch,
                           std::span<double> out);

// out[i] = leverenz_form(p_from_c(c_i), witness(lambda, c_i)), i.e. R - L
void leverenz_witness(Lambda lambda, const CoeffBatch& batch,
                      std::span<double> out);

// The five chain values per tuple (bound_final is constant in i).
void chain_values(Lambda lambda, const CoeffBatch& batch,
                  std::span<double> r_exact, std::span<double> bound_after_ps,
                  std::span<double> bound_after_c2,
                  std::span<double> bound_f_form,
                  std::span<double> bound_final);

// out[i] = F(lambda, t[i])
void f_values(Lambda lambda, std::span<const double> t, std::span<double> out);

// out[i] = |c3 + mu c1 c2 + nu c1^3| for c_i
void ps_functional(double mu, double nu, const CoeffBatch& batch,
                   std::span<double> out);

}  // namespace coeffbound::kernels
