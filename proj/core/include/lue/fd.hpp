#pragma once

#include <functional>
#include <vector>

#include "lue/numeric.hpp"

namespace lue {

/// Central difference with Richardson extrapolation.
struct DerivativeEstimate {
  Real value;
  int order = 1;
  Real step;            // base step h0
  Real error_estimate;  // last two extrapolated values
};

struct FdSettings {
  int levels = 4;  // step halvings
  /// Base step 10^-(target_digits/4) unless set.
  int step_exponent = 0;

  static FdSettings for_precision(const Precision& prec);
};

using ScalarMap = std::function<Real(const Real&)>;
using VectorMap = std::function<std::vector<Real>(const Real&)>;

DerivativeEstimate fd_derivative(const ScalarMap& f, const Real& t0, int order,
                                 const Precision& prec);
DerivativeEstimate fd_derivative(const ScalarMap& f, const Real& t0, int order,
                                 const Precision& prec, const FdSettings& settings);

/// Componentwise derivative of a vector-valued map; every component shares
/// the same evaluation points.
std::vector<DerivativeEstimate> fd_derivative_vec(const VectorMap& f, const Real& t0, int order,
                                                  const Precision& prec,
                                                  const FdSettings& settings);

}  // namespace lue
