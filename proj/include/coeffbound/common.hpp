#pragma once

#include <cmath>
#include <complex>

namespace coeffbound {

using cplx = std::complex<double>;

// Relative tolerance used by every bound comparison in the proof chain:
// x <= y is accepted when x <= y + kRelTol * (1 + magnitude).
inline constexpr double kRelTol = 1e-9;

inline double rel_margin(double magnitude) {
  return kRelTol * (1.0 + std::abs(magnitude));
}

}  // namespace coeffbound
