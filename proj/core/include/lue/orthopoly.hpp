#pragma once

#include <vector>

#include "lue/moments.hpp"

namespace lue {

/// Monic orthogonal polynomials of a JumpWeight and their recurrence data.
///
/// Indices run one degree past n_max where the data is free: coeffs, h, beta
/// and P_at_t hold degrees 0..n_max+1 so that P_{n_max+1} and alpha_{n_max}
/// are available. beta[0] is stored as 0 (beta_0 P_{-1} = 0).
struct OrthoTable {
  JumpWeight weight;
  int n_max = 0;
  Precision precision;  // digits actually used after adaptive doubling

  std::vector<Real> h;
  std::vector<Real> alpha;  // alpha_0..alpha_{n_max}
  std::vector<Real> beta;   // beta_0 (=0)..beta_{n_max+1}
  std::vector<Real> p1;     // p1(0)=0 .. p1(n_max+1)
  std::vector<std::vector<Real>> coeffs;  // ascending powers, leading entry 1
  std::vector<Real> P_at_t;

  int max_degree() const { return n_max + 1; }
};

struct HankelDet {
  int n = 0;
  Real value;
  Real log_value;
  bool representable = true;
};

struct BuildOptions {
  /// Recompute at doubled digits and require agreement to target_digits.
  bool verify_doubling = true;
  int ceiling_digits = 4096;
  /// Use prec.digits as-is instead of raising it to max(64, 30 + 8 n_max).
  bool exact_digits = false;
};

/// Cholesky factorisation of the moment Gram matrix (mu_{i+j}), i,j <= n_max+1.
OrthoTable build_ortho(const JumpWeight& w, int n_max, const Precision& prec,
                       const BuildOptions& options = {});

/// P_n(z) by the three-term recurrence.
Real eval_monic(const OrthoTable& table, int n, const Real& z);
/// P_n(z) from the stored coefficient vector (Horner).
Real eval_monic_coeffs(const OrthoTable& table, int n, const Real& z);
Real eval_monic_deriv(const OrthoTable& table, int n, const Real& z);
Real eval_monic_deriv2(const OrthoTable& table, int n, const Real& z);

/// D_n = prod_{j<n} h_j, D_0 = 1.
HankelDet hankel_det(const OrthoTable& table, int n);

/// Classical Laguerre norm n! Gamma(n + alpha + 1) (A = 1, B = 0).
Real laguerre_norm(int n, const Real& alpha, const Precision& prec);

/// G(n,t) = D_n[w] / D_n[x^alpha e^{-x}].
Real generating_fn(const OrthoTable& table, int n);
Real generating_fn(const JumpWeight& w, int n, const Precision& prec);

/// Zeros of P_n in increasing order, by bisection on a sign-change grid.
std::vector<Real> monic_zeros(const OrthoTable& table, int n);

}  // namespace lue
