#pragma once

#include <vector>

#include "lue/orthopoly.hpp"

namespace lue {

/// Residues of the ladder coefficients at the jump and the derived sequences.
///
///   R_n = B w0(t) P_n(t)^2 / h_n          (0..n_max)
///   r_n = B w0(t) P_n(t) P_{n-1}(t) / h_{n-1},  r_0 = 0   (0..n_max+1)
///   S_n = 1 - 1/R_n
///   H_n = -t sum_{j<n} R_j = t d/dt ln D_n    (0..n_max+1)
struct AuxTable {
  JumpWeight weight;
  int n_max = 0;
  Precision precision;

  std::vector<Real> R;
  std::vector<Real> r;
  std::vector<Real> S;
  std::vector<Real> H;
  std::vector<Real> sumR;  // sumR[n] = sum_{j<n} R_j, 0..n_max+1
};

/// Rejects t = 0 and B <= 0, where R_n and r_n degenerate.
AuxTable aux_table(const OrthoTable& ortho, const JumpWeight& w, const Precision& prec);
AuxTable aux_table(const OrthoTable& ortho);

Real H_of(const AuxTable& aux, int n);

/// A_n(z) = R_n/(z-t) + (1-R_n)/z,  B_n(z) = r_n/(z-t) - (n+r_n)/z.
struct LadderCoeffs {
  int n = 0;
  Real t;
  Real alpha;
  Real A_at_t;  // residue of A_n at z = t
  Real A_at_0;  // residue of A_n at z = 0
  Real B_at_t;
  Real B_at_0;

  Real A(const Real& z) const;
  Real B(const Real& z) const;
  Real A_prime(const Real& z) const;
  Real B_prime(const Real& z) const;
  /// v0'(z) = 1 - alpha/z for v0 = -ln(x^alpha e^{-x}).
  Real v0_prime(const Real& z) const;
};

LadderCoeffs ladder_coeffs(const AuxTable& aux, int n);

/// t R~(t,t) against its closed forms.
///
/// `value` is H_n. `displayed` is -t r_n - n(n+alpha) + beta_n, which equals
/// -H_n, so the two agree only up to sign; `sign_flip` records that.
/// `derivative` is a finite difference of H_n in t, to be compared with r_n.
struct ResolventDiag {
  int n = 0;
  Real value;
  Real displayed;
  Real residual;           // |value - displayed| relative
  Real flipped_residual;   // |value + displayed| relative
  bool sign_flip = false;
  Real derivative;
  Real derivative_residual;
};

/// Throws consistency_failure when neither sign of the displayed form matches.
ResolventDiag resolvent_diag(const AuxTable& aux, const OrthoTable& ortho, int n);

}  // namespace lue
