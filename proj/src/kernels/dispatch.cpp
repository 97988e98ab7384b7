#include <atomic>
#include <stdexcept>
#include <string>

#include "coeffbound/kernels.hpp"
#include "table.hpp"

namespace coeffbound::kernels {
namespace {

std::atomic<int> g_forced{-1};  // -1 = automatic, otherwise int(Lane)

bool cpu_has_avx2() {
#if defined(COEFFBOUND_AVX2_TU) && (defined(__x86_64__) || defined(__amd64__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable& table_for(Lane lane) {
#if defined(COEFFBOUND_AVX2_TU)
  if (lane == Lane::avx2) return avx2_table();
#else
  (void)lane;
#endif
  return scalar_table();
}

const KernelTable& active() { return table_for(active_lane()); }

void check_size(const char* who, std::size_t got, std::size_t want) {
  if (got != want)
    throw std::invalid_argument(std::string(who) + ": output span has size " +
                                std::to_string(got) + ", batch has " +
                                std::to_string(want));
}

}  // namespace

std::string_view lane_name(Lane lane) {
  return lane == Lane::scalar ? "scalar" : "avx2";
}

bool lane_supported(Lane lane) {
  return lane == Lane::scalar || cpu_has_avx2();
}

Lane active_lane() {
  const int f = g_forced.load(std::memory_order_relaxed);
  if (f >= 0) return static_cast<Lane>(f);
  return cpu_has_avx2() ? Lane::avx2 : Lane::scalar;
}

void force_lane(std::optional<Lane> lane) {
  if (lane && !lane_supported(*lane))
    throw std::invalid_argument("force_lane: " + std::string(lane_name(*lane)) +
                                " lane is not available on this host");
  g_forced.store(lane ? static_cast<int>(*lane) : -1,
                 std::memory_order_relaxed);
}

void CoeffBatch::reserve(std::size_t n) {
  c1re.reserve(n);
  c1im.reserve(n);
  c2re.reserve(n);
  c2im.reserve(n);
  c3re.reserve(n);
  c3im.reserve(n);
  c4re.reserve(n);
  c4im.reserve(n);
}

void CoeffBatch::push_back(const CoeffTuple& c) {
  c1re.push_back(c.c1.real());
  c1im.push_back(c.c1.imag());
  c2re.push_back(c.c2.real());
  c2im.push_back(c.c2.imag());
  c3re.push_back(c.c3.real());
  c3im.push_back(c.c3.imag());
  c4re.push_back(c.c4.real());
  c4im.push_back(c.c4.imag());
}

CoeffTuple CoeffBatch::at(std::size_t i) const {
  return {cplx(c1re.at(i), c1im.at(i)), cplx(c2re.at(i), c2im.at(i)),
          cplx(c3re.at(i), c3im.at(i)), cplx(c4re.at(i), c4im.at(i))};
}

CoeffBatch CoeffBatch::from(std::span<const CoeffTuple> tuples) {
  CoeffBatch b;
  b.reserve(tuples.size());
  for (const auto& c : tuples) b.push_back(c);
  return b;
}

void abs2_a5(Lambda lambda, const CoeffBatch& batch, std::span<double> out) {
  check_size("abs2_a5", out.size(), batch.size());
  active().abs2_a5(lambda.value(), batch, out.data());
}

void identity_residual_rel(Lambda lambda, const CoeffBatch& batch,
                           std::span<double> out) {
  check_size("identity_residual_rel", out.size(), batch.size());
  active().identity_rel(lambda.value(), batch, out.data());
}

void leverenz_witness(Lambda lambda, const CoeffBatch& batch,
                      std::span<double> out) {
  check_size("leverenz_witness", out.size(), batch.size());
  active().leverenz(lambda.value(), batch, out.data());
}

void chain_values(Lambda lambda, const CoeffBatch& batch,
                  std::span<double> r_exact, std::span<double> bound_after_ps,
                  std::span<double> bound_after_c2,
                  std::span<double> bound_f_form,
                  std::span<double> bound_final) {
  check_size("chain_values/r_exact", r_exact.size(), batch.size());
  check_size("chain_values/bound_after_ps", bound_after_ps.size(), batch.size());
  check_size("chain_values/bound_after_c2", bound_after_c2.size(), batch.size());
  check_size("chain_values/bound_f_form", bound_f_form.size(), batch.size());
  check_size("chain_values/bound_final", bound_final.size(), batch.size());
  active().chain5(lambda.value(), batch, r_exact.data(), bound_after_ps.data(),
                  bound_after_c2.data(), bound_f_form.data(),
                  bound_final.data());
}

void f_values(Lambda lambda, std::span<const double> t, std::span<double> out) {
  check_size("f_values", out.size(), t.size());
  active().f_eval(lambda.value(), t.data(), t.size(), out.data());
}

void ps_functional(double mu, double nu, const CoeffBatch& batch,
                   std::span<double> out) {
  check_size("ps_functional", out.size(), batch.size());
  active().ps(mu, nu, batch, out.data());
}

}  // namespace coeffbound::kernels
