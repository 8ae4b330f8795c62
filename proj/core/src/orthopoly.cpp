#include "lue/orthopoly.hpp"

#include <algorithm>

namespace lue {
namespace {

void check_degree(const OrthoTable& table, int n, const char* op) {
  if (n < 0 || n > table.max_degree()) {
    throw Error(ErrorKind::index_out_of_range,
                std::string(op) + ": degree " + std::to_string(n) + " outside 0.." +
                    std::to_string(table.max_degree()));
  }
}

OrthoTable build_at(const JumpWeight& input, int n_max, const Precision& prec) {
  PrecisionGuard guard(prec.digits);
  const JumpWeight w = input.promoted(prec.digits);
  const int size = n_max + 2;
  MomentTable moments = moment_table(w, 2 * size - 2, prec);
  const std::vector<Real>& mu = moments.mu;

  // G = L L^T, G_ij = mu_{i+j}.
  std::vector<std::vector<Real>> L(size, std::vector<Real>(size, Real(0)));
  for (int j = 0; j < size; ++j) {
    Real diag = mu[2 * j];
    for (int k = 0; k < j; ++k) diag -= L[j][k] * L[j][k];
    if (!(diag > 0)) {
      throw Error(ErrorKind::conditioning_failure,
                  "build_ortho: Gram matrix lost positive definiteness at order " +
                      std::to_string(j) + " with " + std::to_string(prec.digits) + " digits");
    }
    L[j][j] = sqrt(diag);
    for (int i = j + 1; i < size; ++i) {
      Real s = mu[i + j];
      for (int k = 0; k < j; ++k) s -= L[i][k] * L[j][k];
      L[i][j] = s / L[j][j];
    }
  }

  // Rows of L^{-1} are the orthonormal coefficient vectors; scaling row n by
  // L_nn makes it monic.
  OrthoTable table;
  table.weight = w;
  table.n_max = n_max;
  table.precision = prec;
  table.coeffs.resize(size);
  table.h.resize(size);
  for (int n = 0; n < size; ++n) {
    std::vector<Real> row(n + 1, Real(0));
    row[n] = 1;
    for (int k = n - 1; k >= 0; --k) {
      // Solve (L^T c)_k = 0 for the monic row: sum_{i>=k} L_ik c_i = 0.
      Real s = 0;
      for (int i = k + 1; i <= n; ++i) s += L[i][k] * row[i];
      row[k] = -s / L[k][k];
    }
    table.coeffs[n] = std::move(row);
    table.h[n] = L[n][n] * L[n][n];
  }

  table.p1.assign(size, Real(0));
  for (int n = 1; n < size; ++n) table.p1[n] = table.coeffs[n][n - 1];
  table.alpha.resize(n_max + 1);
  for (int n = 0; n <= n_max; ++n) table.alpha[n] = table.p1[n] - table.p1[n + 1];
  table.beta.assign(size, Real(0));
  for (int n = 1; n < size; ++n) table.beta[n] = table.h[n] / table.h[n - 1];

  table.P_at_t.resize(size);
  for (int n = 0; n < size; ++n) table.P_at_t[n] = eval_monic(table, n, w.t);
  return table;
}

bool agrees(const Real& a, const Real& b, const Real& tol, bool relative_only) {
  Real scale = max_abs(a, b);
  if (!relative_only && scale < 1) scale = 1;
  if (scale == 0) return true;
  return abs(a - b) <= tol * scale;
}

bool tables_agree(const OrthoTable& lo, const OrthoTable& hi, const Precision& prec) {
  PrecisionGuard guard(hi.precision.digits);
  const Real tol = pow10(-prec.target_digits);
  for (std::size_t n = 0; n < lo.h.size(); ++n) {
    if (!agrees(lo.h[n], hi.h[n], tol, true)) return false;
    if (!agrees(lo.beta[n], hi.beta[n], tol, false)) return false;
    if (!agrees(lo.P_at_t[n], hi.P_at_t[n], tol, false)) return false;
  }
  for (std::size_t n = 0; n < lo.alpha.size(); ++n) {
    if (!agrees(lo.alpha[n], hi.alpha[n], tol, false)) return false;
  }
  return true;
}

}  // namespace

OrthoTable build_ortho(const JumpWeight& w, int n_max, const Precision& prec,
                       const BuildOptions& options) {
  if (n_max < 0) throw Error(ErrorKind::invalid_parameter, "build_ortho: n_max must be >= 0");
  prec.validate();
  w.validate();
  int digits = options.exact_digits ? prec.digits : std::max({prec.digits, 64, 30 + 8 * n_max});
  while (digits <= options.ceiling_digits) {
    const Precision current = prec.with_digits(digits);
    try {
      OrthoTable table = build_at(w, n_max, current);
      if (!options.verify_doubling) return table;
      if (2 * digits > options.ceiling_digits) break;
      OrthoTable check = build_at(w, n_max, prec.with_digits(2 * digits));
      if (tables_agree(table, check, prec)) return table;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::conditioning_failure) throw;
      if (!options.verify_doubling) throw;
    }
    digits *= 2;
  }
  throw Error(ErrorKind::precision_ceiling,
              "build_ortho: no stable table below " + std::to_string(options.ceiling_digits) +
                  " digits (n_max = " + std::to_string(n_max) + ")");
}

Real eval_monic(const OrthoTable& table, int n, const Real& z) {
  check_degree(table, n, "eval_monic");
  PrecisionGuard guard(table.precision.digits);
  Real prev = 0;
  Real cur = 1;
  for (int k = 0; k < n; ++k) {
    Real next = (z - table.alpha[k]) * cur - table.beta[k] * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

Real eval_monic_coeffs(const OrthoTable& table, int n, const Real& z) {
  check_degree(table, n, "eval_monic_coeffs");
  PrecisionGuard guard(table.precision.digits);
  const auto& c = table.coeffs[n];
  Real acc = 0;
  for (int k = n; k >= 0; --k) acc = acc * z + c[k];
  return acc;
}

Real eval_monic_deriv(const OrthoTable& table, int n, const Real& z) {
  check_degree(table, n, "eval_monic_deriv");
  PrecisionGuard guard(table.precision.digits);
  const auto& c = table.coeffs[n];
  Real acc = 0;
  for (int k = n; k >= 1; --k) acc = acc * z + c[k] * k;
  return acc;
}

Real eval_monic_deriv2(const OrthoTable& table, int n, const Real& z) {
  check_degree(table, n, "eval_monic_deriv2");
  PrecisionGuard guard(table.precision.digits);
  const auto& c = table.coeffs[n];
  Real acc = 0;
  for (int k = n; k >= 2; --k) acc = acc * z + c[k] * (k * (k - 1));
  return acc;
}

HankelDet hankel_det(const OrthoTable& table, int n) {
  if (n < 0 || n > table.max_degree() + 1) {
    throw Error(ErrorKind::index_out_of_range, "hankel_det: n out of range");
  }
  PrecisionGuard guard(table.precision.digits);
  HankelDet det{n, Real(1), Real(0), true};
  for (int j = 0; j < n; ++j) {
    det.value *= table.h[j];
    det.log_value += log(table.h[j]);
  }
  det.representable = boost::multiprecision::isfinite(det.value) && det.value > 0;
  return det;
}

Real laguerre_norm(int n, const Real& alpha, const Precision& prec) {
  PrecisionGuard guard(prec.digits);
  return gamma_complete(Real(n + 1), prec) * gamma_complete(alpha + n + 1, prec);
}

Real generating_fn(const OrthoTable& table, int n) {
  if (n < 1) throw Error(ErrorKind::invalid_parameter, "generating_fn: n must be >= 1");
  if (n > table.max_degree() + 1) {
    throw Error(ErrorKind::index_out_of_range, "generating_fn: n beyond table");
  }
  PrecisionGuard guard(table.precision.digits);
  Real log_ratio = 0;
  for (int j = 0; j < n; ++j) {
    log_ratio += log(table.h[j]) - log(laguerre_norm(j, table.weight.alpha, table.precision));
  }
  return exp(log_ratio);
}

Real generating_fn(const JumpWeight& w, int n, const Precision& prec) {
  if (n < 1) throw Error(ErrorKind::invalid_parameter, "generating_fn: n must be >= 1");
  OrthoTable table = build_ortho(w, std::max(n - 1, 0), prec);
  return generating_fn(table, n);
}

std::vector<Real> monic_zeros(const OrthoTable& table, int n) {
  check_degree(table, n, "monic_zeros");
  PrecisionGuard guard(table.precision.digits);
  std::vector<Real> zeros;
  if (n == 0) return zeros;
  // Gershgorin bound on the Jacobi matrix.
  Real upper = 0;
  for (int k = 0; k < n; ++k) {
    Real edge = table.alpha[k] + sqrt(table.beta[k]) + (k + 1 < n ? sqrt(table.beta[k + 1]) : Real(0));
    if (edge > upper) upper = edge;
  }
  upper += 1;
  const Real tol = pow10(-(table.precision.target_digits / 2));
  for (int cells = 64 * n; cells <= (1 << 22); cells *= 4) {
    zeros.clear();
    // Zeros crowd toward the origin; a quadratic grid resolves them.
    Real prev_x = 0;
    Real prev_v = eval_monic(table, n, prev_x);
    for (int i = 1; i <= cells; ++i) {
      Real frac = Real(i) / cells;
      Real x = upper * frac * frac;
      Real v = eval_monic(table, n, x);
      if (v == 0) {
        zeros.push_back(x);
      } else if (prev_v != 0 && (v > 0) != (prev_v > 0)) {
        Real lo = prev_x;
        Real hi = x;
        Real flo = prev_v;
        while (hi - lo > tol * (1 + abs(hi))) {
          Real mid = (lo + hi) / 2;
          Real fm = eval_monic(table, n, mid);
          if (fm == 0) {
            lo = hi = mid;
            break;
          }
          if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
          } else {
            hi = mid;
          }
        }
        zeros.push_back((lo + hi) / 2);
      }
      prev_x = x;
      prev_v = v;
    }
    if (static_cast<int>(zeros.size()) == n) return zeros;
  }
  throw Error(ErrorKind::precision_failure, "monic_zeros: could not isolate all zeros");
}

}  // namespace lue
