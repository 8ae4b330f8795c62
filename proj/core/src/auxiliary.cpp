#include "lue/auxiliary.hpp"

#include "lue/fd.hpp"

namespace lue {

AuxTable aux_table(const OrthoTable& ortho, const JumpWeight& input, const Precision& prec) {
  prec.validate();
  if (!(input.t > 0)) {
    throw Error(ErrorKind::invalid_parameter, "aux_table: t must be > 0");
  }
  if (!(input.B > 0)) {
    throw Error(ErrorKind::invalid_parameter, "aux_table: B must be > 0");
  }
  const int digits = std::max(prec.digits, ortho.precision.digits);
  PrecisionGuard guard(digits);
  const JumpWeight w = input.promoted(digits);
  AuxTable aux;
  aux.weight = w;
  aux.n_max = ortho.n_max;
  aux.precision = prec.with_digits(digits);

  const int top = ortho.n_max + 1;
  const Real jump = w.B * w.base(w.t);
  const auto& P = ortho.P_at_t;

  aux.R.resize(ortho.n_max + 1);
  aux.S.resize(ortho.n_max + 1);
  for (int n = 0; n <= ortho.n_max; ++n) {
    aux.R[n] = jump * P[n] * P[n] / ortho.h[n];
    if (aux.R[n] == 0) {
      throw Error(ErrorKind::division_guard,
                  "aux_table: R_" + std::to_string(n) + " vanished at working precision");
    }
    aux.S[n] = 1 - 1 / aux.R[n];
  }
  aux.r.assign(top + 1, Real(0));
  for (int n = 1; n <= top; ++n) aux.r[n] = jump * P[n] * P[n - 1] / ortho.h[n - 1];

  aux.sumR.assign(top + 1, Real(0));
  aux.H.assign(top + 1, Real(0));
  for (int n = 1; n <= top; ++n) {
    aux.sumR[n] = aux.sumR[n - 1] + aux.R[n - 1];
    aux.H[n] = -w.t * aux.sumR[n];
  }
  return aux;
}

AuxTable aux_table(const OrthoTable& ortho) {
  return aux_table(ortho, ortho.weight, ortho.precision);
}

Real H_of(const AuxTable& aux, int n) {
  if (n < 0 || n > aux.n_max + 1) {
    throw Error(ErrorKind::index_out_of_range, "H_of: n out of range");
  }
  return aux.H[n];
}

Real LadderCoeffs::A(const Real& z) const { return A_at_t / (z - t) + A_at_0 / z; }
Real LadderCoeffs::B(const Real& z) const { return B_at_t / (z - t) + B_at_0 / z; }
Real LadderCoeffs::A_prime(const Real& z) const {
  return -A_at_t / ((z - t) * (z - t)) - A_at_0 / (z * z);
}
Real LadderCoeffs::B_prime(const Real& z) const {
  return -B_at_t / ((z - t) * (z - t)) - B_at_0 / (z * z);
}
Real LadderCoeffs::v0_prime(const Real& z) const { return 1 - alpha / z; }

LadderCoeffs ladder_coeffs(const AuxTable& aux, int n) {
  if (n < 0 || n > aux.n_max) {
    throw Error(ErrorKind::index_out_of_range, "ladder_coeffs: n out of range");
  }
  PrecisionGuard guard(aux.precision.digits);
  LadderCoeffs lc;
  lc.n = n;
  lc.t = aux.weight.t;
  lc.alpha = aux.weight.alpha;
  lc.A_at_t = aux.R[n];
  lc.A_at_0 = 1 - aux.R[n];
  lc.B_at_t = aux.r[n];
  lc.B_at_0 = -(n + aux.r[n]);
  return lc;
}

ResolventDiag resolvent_diag(const AuxTable& aux, const OrthoTable& ortho, int n) {
  if (n < 1 || n > aux.n_max) {
    throw Error(ErrorKind::index_out_of_range, "resolvent_diag: n out of range");
  }
  const Precision prec = aux.precision;
  PrecisionGuard guard(prec.digits);
  const Real& t = aux.weight.t;
  const Real m = n * (n + aux.weight.alpha);

  ResolventDiag out;
  out.n = n;
  out.value = aux.H[n];
  out.displayed = -t * aux.r[n] - m + ortho.beta[n];
  out.residual = relative_residual(out.value, out.displayed);
  out.flipped_residual = relative_residual(out.value, -out.displayed);

  const Real tol = pow10(-(prec.target_digits - 10));
  if (out.residual >= tol) {
    if (out.flipped_residual < tol) {
      out.sign_flip = true;
    } else {
      throw Error(ErrorKind::consistency_failure,
                  "resolvent_diag: H_n and the displayed form disagree beyond sign at n = " +
                      std::to_string(n));
    }
  }

  const JumpWeight base = aux.weight;
  const int digits = prec.digits;
  BuildOptions opts{false, 4096, true};
  DerivativeEstimate d = fd_derivative(
      [&](const Real& s) {
        OrthoTable o = build_ortho(base.at(s), n, prec.with_digits(digits), opts);
        return aux_table(o).H[n];
      },
      t, 1, prec);
  out.derivative = d.value;
  out.derivative_residual = relative_residual(d.value, aux.r[n]);
  return out;
}

}  // namespace lue
