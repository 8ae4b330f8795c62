#include "lue/numeric.hpp"

#include <sstream>

namespace lue {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_parameter: return "invalid-parameter";
    case ErrorKind::precision_failure: return "precision-failure";
    case ErrorKind::conditioning_failure: return "conditioning-failure";
    case ErrorKind::precision_ceiling: return "precision-ceiling";
    case ErrorKind::index_out_of_range: return "index-out-of-range";
    case ErrorKind::division_guard: return "division-guard";
    case ErrorKind::consistency_failure: return "consistency-failure";
    case ErrorKind::singular_locus: return "singular-locus";
    case ErrorKind::singularity_encountered: return "singularity-encountered";
    case ErrorKind::quadrature_budget_exceeded: return "quadrature-budget-exceeded";
    case ErrorKind::configuration: return "configuration-error";
  }
  return "unknown";
}

void Precision::validate() const {
  if (digits < 30) {
    throw Error(ErrorKind::invalid_parameter,
                "precision: digits must be at least 30, got " + std::to_string(digits));
  }
  if (target_digits < 1) {
    throw Error(ErrorKind::invalid_parameter, "precision: target_digits must be positive");
  }
  if (digits <= target_digits + 20) {
    throw Error(ErrorKind::invalid_parameter,
                "precision: digits (" + std::to_string(digits) +
                    ") must exceed target_digits + 20 (" + std::to_string(target_digits + 20) + ")");
  }
}

Real Precision::tolerance() const { return pow10(-target_digits); }

PrecisionGuard::PrecisionGuard(int digits) : saved_(Real::default_precision()) {
  Real::default_precision(static_cast<unsigned>(digits));
}

PrecisionGuard::~PrecisionGuard() { Real::default_precision(saved_); }

int current_digits() { return static_cast<int>(Real::default_precision()); }

Real promote(const Real& x, int digits) { return Real(x, static_cast<unsigned>(digits)); }

Real pow10(int exponent) {
  return boost::multiprecision::pow(Real(10), exponent);
}

Real parse_real(std::string_view text) {
  try {
    return Real(std::string(text));
  } catch (const std::exception&) {
    throw Error(ErrorKind::configuration, "cannot parse number '" + std::string(text) + "'");
  }
}

Real max_abs(const Real& a, const Real& b) {
  Real x = abs(a);
  Real y = abs(b);
  return x > y ? x : y;
}

std::string to_decimal(const Real& value, int significant) {
  if (value == 0) return "0";
  return value.str(significant - 1, std::ios_base::scientific);
}

Real relative_residual(const Real& lhs, const Real& rhs) {
  Real scale = max_abs(lhs, rhs);
  if (scale < 1) scale = 1;
  return abs(lhs - rhs) / scale;
}

}  // namespace lue
