#include "forms.hpp"
#include "table.hpp"

namespace coeffbound::kernels {
namespace {

void s_abs2_a5(double lam, const CoeffBatch& b, double* out) {
  const auto k = forms::lam_consts(lam);
  for (std::size_t i = 0; i < b.size(); ++i)
    out[i] = forms::form_abs2_a5(k, forms::load1(b, i));
}

void s_identity_rel(double lam, const CoeffBatch& b, double* out) {
  const auto k = forms::lam_consts(lam);
  for (std::size_t i = 0; i < b.size(); ++i)
    out[i] = forms::form_identity_rel(k, forms::load1(b, i));
}

void s_leverenz(double lam, const CoeffBatch& b, double* out) {
  const auto k = forms::lam_consts(lam);
  for (std::size_t i = 0; i < b.size(); ++i)
    out[i] = forms::form_leverenz_witness(k, forms::load1(b, i));
}

void s_chain5(double lam, const CoeffBatch& b, double* r_exact,
              double* after_ps, double* after_c2, double* f_form,
              double* final_value) {
  const auto k = forms::lam_consts(lam);
  for (std::size_t i = 0; i < b.size(); ++i)
    forms::form_chain(k, forms::load1(b, i), r_exact[i], after_ps[i],
                      after_c2[i], f_form[i], final_value[i]);
}

void s_f_eval(double lam, const double* t, std::size_t n, double* out) {
  const auto k = forms::lam_consts(lam);
  for (std::size_t i = 0; i < n; ++i) out[i] = forms::form_f(k, t[i]);
}

void s_ps(double mu, double nu, const CoeffBatch& b, double* out) {
  for (std::size_t i = 0; i < b.size(); ++i)
    out[i] = forms::form_ps(mu, nu, forms::load1(b, i));
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable t{s_abs2_a5, s_identity_rel, s_leverenz,
                             s_chain5,  s_f_eval,       s_ps};
  return t;
}

}  // namespace coeffbound::kernels
