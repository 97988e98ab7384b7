// AVX2 lane. This translation unit alone is compiled with -mavx2 (and
// -mno-fma -ffp-contract=off, keeping its arithmetic bit-identical to the
// scalar lane); dispatch only points here after a runtime CPU check.
#include <immintrin.h>

#include "forms.hpp"
#include "table.hpp"

namespace coeffbound::kernels {
namespace {

struct Vec4 {
  __m256d v;
};

inline Vec4 operator+(Vec4 a, Vec4 b) { return {_mm256_add_pd(a.v, b.v)}; }
inline Vec4 operator-(Vec4 a, Vec4 b) { return {_mm256_sub_pd(a.v, b.v)}; }
inline Vec4 operator*(Vec4 a, Vec4 b) { return {_mm256_mul_pd(a.v, b.v)}; }
inline Vec4 operator/(Vec4 a, Vec4 b) { return {_mm256_div_pd(a.v, b.v)}; }

inline Vec4 vload(const double* p) { return {_mm256_loadu_pd(p)}; }
inline void vstore(double* p, Vec4 x) { _mm256_storeu_pd(p, x.v); }

}  // namespace

namespace forms {

template <>
struct VOps<Vec4> {
  static Vec4 broadcast(double x) { return {_mm256_set1_pd(x)}; }
  static Vec4 sqrt(Vec4 x) { return {_mm256_sqrt_pd(x.v)}; }
  static Vec4 abs(Vec4 x) {
    return {_mm256_andnot_pd(_mm256_set1_pd(-0.0), x.v)};
  }
};

}  // namespace forms

namespace {

inline forms::Pack<Vec4> load4(const CoeffBatch& b, std::size_t i) {
  return {{vload(&b.c1re[i]), vload(&b.c1im[i])},
          {vload(&b.c2re[i]), vload(&b.c2im[i])},
          {vload(&b.c3re[i]), vload(&b.c3im[i])},
          {vload(&b.c4re[i]), vload(&b.c4im[i])}};
}

void v_abs2_a5(double lam, const CoeffBatch& b, double* out) {
  const auto k = forms::lam_consts(lam);
  const std::size_t n = b.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    vstore(out + i, forms::form_abs2_a5(k, load4(b, i)));
  for (; i < n; ++i) out[i] = forms::form_abs2_a5(k, forms::load1(b, i));
}

void v_identity_rel(double lam, const CoeffBatch& b, double* out) {
  const auto k = forms::lam_consts(lam);
  const std::size_t n = b.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    vstore(out + i, forms::form_identity_rel(k, load4(b, i)));
  for (; i < n; ++i) out[i] = forms::form_identity_rel(k, forms::load1(b, i));
}

void v_leverenz(double lam, const CoeffBatch& b, double* out) {
  const auto k = forms::lam_consts(lam);
  const std::size_t n = b.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    vstore(out + i, forms::form_leverenz_witness(k, load4(b, i)));
  for (; i < n; ++i)
    out[i] = forms::form_leverenz_witness(k, forms::load1(b, i));
}

void v_chain5(double lam, const CoeffBatch& b, double* r_exact,
              double* after_ps, double* after_c2, double* f_form,
              double* final_value) {
  const auto k = forms::lam_consts(lam);
  const std::size_t n = b.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    Vec4 r, ps, c2, ff, fin;
    forms::form_chain(k, load4(b, i), r, ps, c2, ff, fin);
    vstore(r_exact + i, r);
    vstore(after_ps + i, ps);
    vstore(after_c2 + i, c2);
    vstore(f_form + i, ff);
    vstore(final_value + i, fin);
  }
  for (; i < n; ++i)
    forms::form_chain(k, forms::load1(b, i), r_exact[i], after_ps[i],
                      after_c2[i], f_form[i], final_value[i]);
}

void v_f_eval(double lam, const double* t, std::size_t n, double* out) {
  const auto k = forms::lam_consts(lam);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) vstore(out + i, forms::form_f(k, vload(t + i)));
  for (; i < n; ++i) out[i] = forms::form_f(k, t[i]);
}

void v_ps(double mu, double nu, const CoeffBatch& b, double* out) {
  const std::size_t n = b.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    vstore(out + i, forms::form_ps(mu, nu, load4(b, i)));
  for (; i < n; ++i) out[i] = forms::form_ps(mu, nu, forms::load1(b, i));
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable t{v_abs2_a5, v_identity_rel, v_leverenz,
                             v_chain5,  v_f_eval,       v_ps};
  return t;
}

}  // namespace coeffbound::kernels
