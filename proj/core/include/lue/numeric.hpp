#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/mpfr.hpp>

namespace lue {

/// Variable-precision binary floating point. The precision of newly created
/// values follows the process default, which PrecisionGuard manages.
using Real = boost::multiprecision::mpfr_float;

enum class ErrorKind {
  invalid_parameter,
  precision_failure,
  conditioning_failure,
  precision_ceiling,
  index_out_of_range,
  division_guard,
  consistency_failure,
  singular_locus,
  singularity_encountered,
  quadrature_budget_exceeded,
  configuration,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Working precision and the number of digits results must carry.
struct Precision {
  int digits = 100;
  int target_digits = 50;

  /// Throws invalid_parameter unless digits >= 30 and digits > target + 20.
  void validate() const;
  Precision doubled() const { return {2 * digits, 2 * target_digits}; }
  Precision with_digits(int d) const { return {d, target_digits}; }
  /// 10^-target_digits
  Real tolerance() const;

  friend bool operator==(const Precision&, const Precision&) = default;
};

/// Sets the default MPFR precision for the current scope.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(int digits);
  ~PrecisionGuard();
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  unsigned saved_;
};

int current_digits();

/// Copy of x carried at `digits` decimal digits. Arithmetic on Real keeps the
/// largest operand precision, so inputs must be widened before a computation
/// that runs at a higher precision than they were created with.
Real promote(const Real& x, int digits);

Real pow10(int exponent);
Real parse_real(std::string_view text);
Real max_abs(const Real& a, const Real& b);

/// Scientific notation with `significant` digits; never goes through double.
std::string to_decimal(const Real& value, int significant);

/// |lhs - rhs| / max(|lhs|, |rhs|, 1)
Real relative_residual(const Real& lhs, const Real& rhs);

}  // namespace lue
