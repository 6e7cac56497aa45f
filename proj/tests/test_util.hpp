#pragma once

#include "nphase/core.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace nphase::test {

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline ComplexMatrix mat2(cplx a, cplx b, cplx c, cplx d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

// Property tests run this many seeded cases unless stated otherwise.
inline constexpr int kPropertyCases = 200;

}  // namespace nphase::test
