#pragma once

#include <optional>
#include <vector>

#include "lue/numeric.hpp"

namespace lue {

/// Linear-statistics parameters the jump heights were derived from.
struct LambdaBeta {
  Real lambda;
  Real beta;
};

/// Laguerre weight x^alpha e^{-x} multiplied by the jump factor A + B*theta(x - t).
///
/// Admissible parameters: A >= 0, A + B > 0, alpha >= 0, t >= 0, and A = 0
/// whenever alpha = 0 (otherwise w(0) != 0 and the ladder coefficients pick up
/// endpoint terms that are not modelled here).
struct JumpWeight {
  Real alpha;
  Real A;
  Real B;
  Real t;
  std::optional<LambdaBeta> origin;

  static JumpWeight make(const Real& alpha, const Real& A, const Real& B, const Real& t);
  static JumpWeight from_lambda_beta(const Real& alpha, const Real& lambda, const Real& beta,
                                     const Real& t);

  void validate() const;
  /// R_n, r_n are well defined (and R_n > 0) only for B > 0 and t > 0.
  bool supports_auxiliary() const { return B > 0 && t > 0; }
  JumpWeight at(const Real& new_t) const;
  /// All parameters widened to `digits` (see promote()).
  JumpWeight promoted(int digits) const;

  /// x^alpha e^{-x}
  Real base(const Real& x) const;
  /// A + B*theta(x - t); theta(0) = 0.
  Real jump(const Real& x) const;
  Real operator()(const Real& x) const { return base(x) * jump(x); }
};

struct JumpHeights {
  Real A;
  Real B;
};

/// A = (1 - beta/2)^lambda, B = (1 + beta/2)^lambda - (1 - beta/2)^lambda.
JumpHeights from_lambda_beta(const Real& lambda, const Real& beta);

/// Upper incomplete gamma Gamma(s, t) = int_t^inf x^{s-1} e^{-x} dx.
Real gamma_upper(const Real& s, const Real& t, const Precision& prec);
Real gamma_complete(const Real& s, const Precision& prec);

/// mu_k = A Gamma(alpha+k+1) + B Gamma(alpha+k+1, t)
Real moment(int k, const JumpWeight& w, const Precision& prec);

struct MomentTable {
  JumpWeight weight;
  int k_max = 0;
  std::vector<Real> mu;
  Precision precision;
};

/// mu_0..mu_{k_max} by upward recurrence in s from a single gamma evaluation.
MomentTable moment_table(const JumpWeight& w, int k_max, const Precision& prec);

}  // namespace lue
