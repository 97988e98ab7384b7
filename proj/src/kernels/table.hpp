#pragma once

#include <cstddef>

#include "coeffbound/kernels.hpp"

namespace coeffbound::kernels {

// Function-pointer table one lane exports; dispatch picks a table at
// runtime. Raw pointers here — the public span API validates sizes.
struct KernelTable {
  void (*abs2_a5)(double lam, const CoeffBatch&, double* out);
  void (*identity_rel)(double lam, const CoeffBatch&, double* out);
  void (*leverenz)(double lam, const CoeffBatch&, double* out);
  void (*chain5)(double lam, const CoeffBatch&, double* r_exact,
                 double* after_ps, double* after_c2, double* f_form,
                 double* final_value);
  void (*f_eval)(double lam, const double* t, std::size_t n, double* out);
  void (*ps)(double mu, double nu, const CoeffBatch&, double* out);
};

const KernelTable& scalar_table();
#if defined(COEFFBOUND_AVX2_TU)
const KernelTable& avx2_table();
#endif

}  // namespace coeffbound::kernels
