#include "lue/fd.hpp"

namespace lue {

FdSettings FdSettings::for_precision(const Precision& prec) {
  FdSettings s;
  s.step_exponent = prec.target_digits / 4;
  return s;
}

DerivativeEstimate fd_derivative(const ScalarMap& f, const Real& t0, int order,
                                 const Precision& prec) {
  return fd_derivative(f, t0, order, prec, FdSettings::for_precision(prec));
}

DerivativeEstimate fd_derivative(const ScalarMap& f, const Real& t0, int order,
                                 const Precision& prec, const FdSettings& settings) {
  auto est = fd_derivative_vec([&](const Real& x) { return std::vector<Real>{f(x)}; }, t0, order,
                               prec, settings);
  return est.front();
}

std::vector<DerivativeEstimate> fd_derivative_vec(const VectorMap& f, const Real& t0, int order,
                                                  const Precision& prec,
                                                  const FdSettings& settings) {
  if (order != 1 && order != 2) {
    throw Error(ErrorKind::invalid_parameter, "fd_derivative: order must be 1 or 2");
  }
  if (settings.levels < 2) {
    throw Error(ErrorKind::invalid_parameter, "fd_derivative: need at least two levels");
  }
  PrecisionGuard guard(prec.digits);
  const int exponent = settings.step_exponent > 0 ? settings.step_exponent
                                                  : FdSettings::for_precision(prec).step_exponent;
  const Real h0 = pow10(-exponent);
  if (!(t0 > h0)) {
    throw Error(ErrorKind::invalid_parameter, "fd_derivative: t0 must exceed the base step");
  }

  std::vector<Real> center;
  if (order == 2) center = f(t0);

  // table[k][j][c]: level k, extrapolation column j, component c.
  std::vector<std::vector<std::vector<Real>>> table(settings.levels);
  Real h = h0;
  std::size_t width = 0;
  for (int k = 0; k < settings.levels; ++k, h /= 2) {
    std::vector<Real> plus = f(t0 + h);
    std::vector<Real> minus = f(t0 - h);
    width = plus.size();
    std::vector<Real> d(width);
    for (std::size_t c = 0; c < width; ++c) {
      d[c] = order == 1 ? Real((plus[c] - minus[c]) / (2 * h))
                        : Real((plus[c] - 2 * center[c] + minus[c]) / (h * h));
    }
    table[k].push_back(std::move(d));
    Real factor = 4;
    for (int j = 1; j <= k; ++j, factor *= 4) {
      std::vector<Real> e(width);
      for (std::size_t c = 0; c < width; ++c) {
        e[c] = table[k][j - 1][c] + (table[k][j - 1][c] - table[k - 1][j - 1][c]) / (factor - 1);
      }
      table[k].push_back(std::move(e));
    }
  }

  const int last = settings.levels - 1;
  const Real limit = pow10(-(prec.target_digits / 2));
  std::vector<DerivativeEstimate> out(width);
  for (std::size_t c = 0; c < width; ++c) {
    const Real& best = table[last][last][c];
    Real err = abs(best - table[last][last - 1][c]);
    Real scale = abs(best) > 1 ? Real(abs(best)) : Real(1);
    if (!(err <= limit * scale)) {
      throw Error(ErrorKind::precision_failure,
                  "fd_derivative: Richardson extrapolation did not converge (error estimate " +
                      to_decimal(err, 6) + ")");
    }
    out[c] = DerivativeEstimate{best, order, h0, err};
  }
  return out;
}

}  // namespace lue
