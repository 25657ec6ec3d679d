#pragma once

#include <Eigen/Dense>

namespace testing {

template <class A, class B>
double max_abs_diff(const A& a, const B& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace testing
