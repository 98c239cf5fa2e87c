#pragma once

#include <cstddef>
#include <vector>

#include "hardrods/bigrational.hpp"

namespace hardrods {

// Uniformly sampled real function: abscissa i maps to x0 + i * step.
// The step is kept as an exact rational so grid abscissae stay exactly
// representable for the rational evaluation paths.
struct GridFunction {
  double x0 = 0.0;
  BigRational step = BigRational(1);
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double step_d() const { return to_double(step); }
  double x(std::size_t i) const { return x0 + static_cast<double>(i) * step_d(); }
  BigRational x_rational(std::size_t i) const {
    return rational_from_double(x0) + BigRational(static_cast<long long>(i)) * step;
  }
};

}  // namespace hardrods
