#include "lue/dynamics.hpp"

#include <algorithm>

#include "lue/identities.hpp"

namespace lue {
namespace {

// Per-n quantities sampled at each finite-difference point.
enum Quantity { kLogH, kP1, kBeta, kAlpha, kR, kSmallR, kH, kS, kSPrime, kNegSumR, kCount };

struct Probe {
  JumpWeight weight;
  int n_max = 0;
  Real t;
  Precision prec;
  OrthoTable ortho;
  AuxTable aux;
  std::vector<Real> value;
  std::vector<DerivativeEstimate> deriv;

  const Real& v(Quantity q, int n) const { return value.at(n * kCount + q); }
  const Real& d(Quantity q, int n) const { return deriv.at(n * kCount + q).value; }
};

std::vector<Real> sample(const OrthoTable& o, const AuxTable& a, int n_max) {
  std::vector<Real> out(static_cast<std::size_t>(kCount) * (n_max + 1));
  for (int n = 0; n <= n_max; ++n) {
    Real* row = &out[n * kCount];
    row[kLogH] = log(o.h[n]);
    row[kP1] = o.p1[n];
    row[kBeta] = o.beta[n];
    row[kAlpha] = o.alpha[n];
    row[kR] = a.R[n];
    row[kSmallR] = a.r[n];
    row[kH] = a.H[n];
    row[kS] = a.S[n];
    row[kSPrime] = S_prime(a, o, n);
    row[kNegSumR] = -a.sumR[n];
  }
  return out;
}

void require_auxiliary(const JumpWeight& w, const Real& t0, const char* op) {
  if (!(w.B > 0)) {
    throw Error(ErrorKind::invalid_parameter, std::string(op) + ": B must be > 0");
  }
  if (!(t0 > 0)) throw Error(ErrorKind::invalid_parameter, std::string(op) + ": t0 must be > 0");
}

Probe make_probe(const JumpWeight& w, int n_max, const Real& t0, const Precision& prec) {
  prec.validate();
  Probe p;
  p.weight = w.at(t0);
  p.n_max = n_max;
  p.t = t0;
  p.ortho = build_ortho(p.weight, n_max + 1, prec);
  p.aux = aux_table(p.ortho);
  const int digits = p.ortho.precision.digits;
  p.prec = prec.with_digits(digits);
  PrecisionGuard guard(digits);
  p.value = sample(p.ortho, p.aux, n_max);

  const BuildOptions plain{false, 4096, true};
  const Precision work = p.prec;
  p.deriv = fd_derivative_vec(
      [&](const Real& s) {
        OrthoTable o = build_ortho(w.at(s), n_max + 1, work, plain);
        return sample(o, aux_table(o), n_max);
      },
      promote(t0, digits), 1, work, FdSettings::for_precision(prec));
  return p;
}

Real tol_or_default(const std::optional<Real>& tol) {
  return tol ? *tol : differential_tolerance();
}

bool tiny(const Real& x, const Precision& p) { return abs(x) < pow10(-(p.digits / 2)); }

// Cleared-denominator Painleve V residual. The S'^2 coefficient of
// P_V(0, -alpha^2/2, 2n+1+alpha, -1/2) is (3S-1)/(2S(S-1)); `printed` swaps
// the denominator to 2S(1-S).
Real pv_cleared(const Real& t, const Real& S, const Real& S1, const Real& S2, int n,
                const Real& a, bool printed = false) {
  Real one_minus = 1 - S;
  Real lhs = 2 * t * t * S * one_minus * S2;
  Real quad = t * t * (3 * S - 1) * S1 * S1;
  Real rhs = (printed ? quad : -quad) - 2 * t * S * one_minus * S1 -
             a * a * (S - 1) * (S - 1) * one_minus + 2 * (2 * n + 1 + a) * t * S * S * one_minus +
             t * t * S * S * (S + 1);
  return relative_residual(lhs, rhs);
}

Real sigma_form(const Real& t, const Real& H, const Real& H1, const Real& H2, int n,
                const Real& a) {
  Real m = n * (n + a);
  Real lhs = (t * H2) * (t * H2);
  Real lin = (2 * n + a - t) * H1 + H;
  Real rhs = 4 * H1 * H1 * (H - m - t * H1) + lin * lin;
  return relative_residual(lhs, rhs);
}

std::vector<ResidualRecord> toda_records(const Probe& p, int n, const Real& tol) {
  std::vector<ResidualRecord> out;
  const Real& t = p.t;
  const Real a = p.weight.alpha;
  out.push_back(judged("LOGH_DERIV", n, t, relative_residual(p.d(kLogH, n), -p.v(kR, n)), tol));
  out.push_back(judged("P1_DERIV", n, t, relative_residual(p.d(kP1, n), p.v(kSmallR, n)), tol));
  out.push_back(judged("TODA_ALPHA", n, t,
                       relative_residual(p.d(kAlpha, n), p.aux.r[n] - p.aux.r[n + 1]), tol));
  if (n >= 1) {
    out.push_back(judged(
        "TODA_BETA", n, t,
        relative_residual(p.d(kBeta, n), (p.v(kR, n - 1) - p.v(kR, n)) * p.v(kBeta, n)), tol));
    out.push_back(flagged_if_off(
        "TODA_ALPHA_PRINTED", n, t,
        relative_residual(p.d(kAlpha, n), p.aux.r[n] - p.aux.r[n - 1]), tol,
        "alpha_n' = r_n - r_{n-1} as printed fails; alpha_n' = r_n - r_{n+1} holds"));
    HankelDet lo = hankel_det(p.ortho, n - 1);
    HankelDet mid = hankel_det(p.ortho, n);
    HankelDet hi = hankel_det(p.ortho, n + 1);
    Real ratio = exp(hi.log_value + lo.log_value - 2 * mid.log_value);
    Real m = n * (n + a);
    out.push_back(judged("TODA_MOLECULE", n, t,
                         relative_residual(t * t * p.d(kNegSumR, n), ratio - m), tol));
  }
  return out;
}

std::vector<ResidualRecord> riccati_records(const Probe& p, int n, const Real& tol) {
  std::vector<ResidualRecord> out;
  const Real& t = p.t;
  const Real a = p.weight.alpha;
  const Real& R = p.v(kR, n);
  const Real& r = p.v(kSmallR, n);
  out.push_back(judged("RICCATI_R", n, t,
                       relative_residual(t * p.d(kR, n), 2 * r + (2 * n + a - t + t * R) * R),
                       tol));
  if (n >= 1) {
    Real den = R * (1 - R);
    if (tiny(den, p.prec) || tiny(1 - R, p.prec)) {
      out.push_back(skipped("RICCATI_SMALL_R", n, t, "R_n (1 - R_n) vanishes"));
    } else {
      Real m = n * (n + a);
      Real rhs = (1 - 2 * R) / den * r * r - (2 * n + a) * R * r / (1 - R) - m * R / (1 - R);
      out.push_back(
          judged("RICCATI_SMALL_R", n, t, relative_residual(t * p.d(kSmallR, n), rhs), tol));
    }
  }
  return out;
}

bool on_singular_locus(const Real& S, const Precision& p) {
  const Real edge = pow10(-(p.digits / 4));
  return abs(S) < edge || abs(1 - S) < edge;
}

ResidualRecord painleve_record(const Probe& p, int n, const Real& tol) {
  const Real& t = p.t;
  const Real a = p.weight.alpha;
  const Real& S = p.v(kS, n);
  Real res = pv_cleared(t, S, p.v(kSPrime, n), p.d(kSPrime, n), n, a);
  ResidualRecord rec;
  if (on_singular_locus(S, p.prec)) {
    rec = skipped("PAINLEVE_V", n, t, "singular-locus: S_n is 0 or 1", res);
  } else {
    rec = judged("PAINLEVE_V", n, t, res, tol);
  }
  Real shifted = p.v(kAlpha, n) - (2 * n + a + 1);
  if (!tiny(shifted, p.prec)) {
    Real rep = relative_residual(S, (shifted - t) / shifted);
    if (!(rep < algebraic_tolerance(p.prec))) {
      rec.status = RecordStatus::failed;
      rec.note = "S_n disagrees with its alpha_n representation";
    }
  }
  return rec;
}

std::vector<ResidualRecord> pv_records(const Probe& p, int n, const Real& tol) {
  std::vector<ResidualRecord> out;
  const Real& t = p.t;
  const Real a = p.weight.alpha;
  const Real& S = p.v(kS, n);
  const Real& R = p.v(kR, n);
  const Real& r = p.v(kSmallR, n);
  const Real alg = algebraic_tolerance(p.prec);
  out.push_back(painleve_record(p, n, tol));
  if (!on_singular_locus(S, p.prec)) {
    out.push_back(flagged_if_off(
        "PAINLEVE_V_PRINTED", n, t,
        pv_cleared(t, S, p.v(kSPrime, n), p.d(kSPrime, n), n, a, true), tol,
        "S'^2 coefficient (3S-1)/(2S(1-S)) fails; (3S-1)/(2S(S-1)) holds"));
  }

  Real shifted = p.v(kAlpha, n) - (2 * n + a + 1);
  if (tiny(shifted, p.prec)) {
    out.push_back(skipped("PV_ALPHA_REP", n, t, "alpha_n - (2n + alpha + 1) vanishes"));
  } else {
    out.push_back(
        judged("PV_ALPHA_REP", n, t, relative_residual(S, (shifted - t) / shifted), alg));
  }

  out.push_back(judged("S_PRIME", n, t, relative_residual(p.d(kS, n), p.v(kSPrime, n)), tol));

  // S'' from differentiating the R-Riccati equation, with r' from the
  // r-Riccati equation.
  if (tiny(R * (1 - R), p.prec) || tiny(1 - R, p.prec)) {
    out.push_back(skipped("PV_RICCATI_ELIM", n, t, "R_n (1 - R_n) vanishes"));
  } else if (on_singular_locus(S, p.prec)) {
    out.push_back(skipped("PV_RICCATI_ELIM", n, t, "singular-locus: S_n is 0 or 1"));
  } else {
    Real m = n * (n + a);
    Real R1 = (2 * r + (2 * n + a - t + t * R) * R) / t;
    Real r1 = ((1 - 2 * R) / (R * (1 - R)) * r * r - (2 * n + a) * R * r / (1 - R) -
               m * R / (1 - R)) /
              t;
    Real R2 = (2 * r1 + (-1 + R + t * R1) * R + (2 * n + a - t + t * R) * R1 - R1) / t;
    Real S1 = R1 / (R * R);
    Real S2 = R2 / (R * R) - 2 * R1 * R1 / (R * R * R);
    out.push_back(judged("PV_RICCATI_ELIM", n, t, pv_cleared(t, S, S1, S2, n, a), alg));
  }
  return out;
}

ResidualRecord sigma_record(const Probe& p, int n, const Real& tol) {
  Real res = sigma_form(p.t, p.v(kH, n), p.v(kSmallR, n), p.d(kSmallR, n), n, p.weight.alpha);
  return judged("SIGMA_FORM", n, p.t, res, tol);
}

std::vector<ResidualRecord> sigma_records(const Probe& p, int n, const Real& tol) {
  std::vector<ResidualRecord> out;
  const Real& t = p.t;
  const Real a = p.weight.alpha;
  const Real m = n * (n + a);
  const Real& H = p.v(kH, n);
  const Real& H1 = p.v(kSmallR, n);
  const Real& H2 = p.d(kSmallR, n);
  const Real& R = p.v(kR, n);
  out.push_back(sigma_record(p, n, tol));
  out.push_back(judged("H_DERIV", n, t, relative_residual(p.d(kH, n), H1), tol));
  out.push_back(judged("BETA_FROM_H", n, t,
                       relative_residual(p.v(kBeta, n), t * p.d(kH, n) - H + m), tol));

  Real lin = (2 * n + a - t) * H1;
  Real den18 = 2 * (H - m - t * H1);
  Real den19 = 2 * H1 * H1;
  bool ok18 = !tiny(den18, p.prec);
  bool ok19 = !tiny(den19, p.prec);
  Real rep18 = ok18 ? Real((t * H2 + lin + H) / den18) : Real(0);
  Real rep19 = ok19 ? Real((t * H2 - lin - H) / den19) : Real(0);
  if (ok18) {
    out.push_back(judged("R_FROM_H", n, t, relative_residual(R, rep18), tol));
  } else {
    out.push_back(skipped("R_FROM_H", n, t, "H_n - n(n+alpha) - t H_n' vanishes"));
  }
  if (ok19) {
    out.push_back(judged("INV_R_FROM_H", n, t, relative_residual(1 / R, rep19), tol));
  } else {
    out.push_back(skipped("INV_R_FROM_H", n, t, "H_n' vanishes"));
  }
  if (ok18 && ok19) {
    out.push_back(judged("RREP_PRODUCT", n, t, relative_residual(rep18 * rep19, Real(1)), tol));
  } else {
    out.push_back(skipped("RREP_PRODUCT", n, t, "a representation denominator vanishes"));
  }

  // t R~(t,t) = H_n against the displayed -t r_n - n(n+alpha) + beta_n.
  Real displayed = -t * H1 - m + p.v(kBeta, n);
  Real direct = relative_residual(H, displayed);
  Real flipped = relative_residual(H, -displayed);
  const Real alg = algebraic_tolerance(p.prec);
  ResidualRecord res = judged("RESOLVENT", n, t, direct, alg);
  if (res.status == RecordStatus::failed && flipped < alg) {
    res.status = RecordStatus::flagged;
    res.note = "displayed form equals -H_n";
  }
  out.push_back(res);
  return out;
}

// One Gragg modified-midpoint pass over [t, t + H] with m substeps.
struct Vec2 {
  Real a;
  Real b;
};

Vec2 field(const Real& t, const Vec2& y, int n, const Real& alpha, const Precision& prec) {
  PVState s{t, y.a, y.b, n, alpha};
  return {y.b, pv_rhs(s, prec)};
}

Vec2 midpoint(const Real& t, const Vec2& y, const Real& H, int m, int n, const Real& alpha,
              const Precision& prec) {
  Real h = H / m;
  Vec2 z0 = y;
  Vec2 f0 = field(t, z0, n, alpha, prec);
  Vec2 z1{z0.a + h * f0.a, z0.b + h * f0.b};
  for (int k = 1; k < m; ++k) {
    Vec2 f = field(t + k * h, z1, n, alpha, prec);
    Vec2 z2{z0.a + 2 * h * f.a, z0.b + 2 * h * f.b};
    z0 = std::move(z1);
    z1 = std::move(z2);
  }
  Vec2 f = field(t + H, z1, n, alpha, prec);
  return {(z1.a + z0.a + h * f.a) / 2, (z1.b + z0.b + h * f.b) / 2};
}

// Bulirsch-Stoer step; returns false when the extrapolation does not settle.
bool bs_step(const Real& t, const Vec2& y, const Real& H, int n, const Real& alpha,
             const Precision& prec, const Real& tol, Vec2& out) {
  constexpr int kMaxColumns = 18;
  std::vector<std::vector<Vec2>> T;
  for (int j = 0; j < kMaxColumns; ++j) {
    const int mj = 2 * (j + 1);
    std::vector<Vec2> row;
    row.push_back(midpoint(t, y, H, mj, n, alpha, prec));
    for (int k = 1; k <= j; ++k) {
      const int mjk = 2 * (j - k + 1);
      Real ratio = Real(mj) / mjk;
      Real denom = ratio * ratio - 1;
      const Vec2& cur = row[k - 1];
      const Vec2& prev = T[j - 1][k - 1];
      row.push_back({cur.a + (cur.a - prev.a) / denom, cur.b + (cur.b - prev.b) / denom});
    }
    if (j >= 2) {
      const Vec2& best = row[j];
      const Vec2& second = row[j - 1];
      Real sa = abs(best.a) > 1 ? Real(abs(best.a)) : Real(1);
      Real sb = abs(best.b) > 1 ? Real(abs(best.b)) : Real(1);
      if (abs(best.a - second.a) <= tol * sa && abs(best.b - second.b) <= tol * sb) {
        out = best;
        return true;
      }
    }
    T.push_back(std::move(row));
  }
  return false;
}

Vec2 advance(const Real& t0, const Vec2& y0, const Real& t1, int n, const Real& alpha,
             const Precision& prec, const Real& tol) {
  Real t = t0;
  Vec2 y = y0;
  Real H = t1 - t0;
  const Real min_step = abs(t1 - t0) * pow10(-12);
  while (t != t1) {
    if ((H > 0 && t + H > t1) || (H < 0 && t + H < t1)) H = t1 - t;
    Vec2 next;
    if (bs_step(t, y, H, n, alpha, prec, tol, next)) {
      t += H;
      y = next;
      if (abs(t1 - t) < min_step) t = t1;
      H *= 2;
    } else {
      H /= 2;
      if (abs(H) < min_step) {
        throw Error(ErrorKind::singularity_encountered,
                    "integrate_pv: step collapsed near t = " + to_decimal(t, 12));
      }
    }
  }
  return y;
}

PVState direct_state(const JumpWeight& w, int n, const Real& t, const Precision& prec) {
  OrthoTable o = build_ortho(w.at(t), n + 1, prec);
  AuxTable a = aux_table(o);
  PrecisionGuard guard(o.precision.digits);
  return PVState{promote(t, o.precision.digits), a.S[n], S_prime(a, o, n), n, a.weight.alpha};
}

}  // namespace

Real differential_tolerance() { return Real(1e-15); }

Real R_prime(const AuxTable& aux, const OrthoTable& ortho, int n) {
  if (n < 0 || n > aux.n_max) throw Error(ErrorKind::index_out_of_range, "R_prime: n out of range");
  PrecisionGuard guard(std::max(aux.precision.digits, ortho.precision.digits));
  const JumpWeight& w = aux.weight;
  const Real& t = w.t;
  const Real& P = ortho.P_at_t[n];
  Real jump = w.B * w.base(t) / ortho.h[n];
  const Real& R = aux.R[n];
  return R * (w.alpha / t - 1 + R + 2 * aux.sumR[n]) + 2 * jump * P * eval_monic_deriv(ortho, n, t);
}

Real S_prime(const AuxTable& aux, const OrthoTable& ortho, int n) {
  PrecisionGuard guard(std::max(aux.precision.digits, ortho.precision.digits));
  const Real& R = aux.R.at(n);
  return R_prime(aux, ortho, n) / (R * R);
}

std::vector<ResidualRecord> check_toda(const JumpWeight& w, int n, const Real& t0,
                                       const Precision& prec, std::optional<Real> tolerance) {
  require_auxiliary(w, t0, "check_toda");
  if (n < 0) throw Error(ErrorKind::index_out_of_range, "check_toda: n must be >= 0");
  Probe p = make_probe(w, n, t0, prec);
  PrecisionGuard guard(p.prec.digits);
  return toda_records(p, n, tol_or_default(tolerance));
}

std::vector<ResidualRecord> check_riccati(const JumpWeight& w, int n, const Real& t0,
                                          const Precision& prec, std::optional<Real> tolerance) {
  require_auxiliary(w, t0, "check_riccati");
  if (n < 0) throw Error(ErrorKind::index_out_of_range, "check_riccati: n must be >= 0");
  Probe p = make_probe(w, n, t0, prec);
  PrecisionGuard guard(p.prec.digits);
  return riccati_records(p, n, tol_or_default(tolerance));
}

ResidualRecord pv_residual(const JumpWeight& w, int n, const Real& t0, const Precision& prec,
                           std::optional<Real> tolerance) {
  require_auxiliary(w, t0, "pv_residual");
  if (n < 0) throw Error(ErrorKind::index_out_of_range, "pv_residual: n must be >= 0");
  Probe p = make_probe(w, n, t0, prec);
  PrecisionGuard guard(p.prec.digits);
  return painleve_record(p, n, tol_or_default(tolerance));
}

std::vector<ResidualRecord> pv_checks(const JumpWeight& w, int n, const Real& t0,
                                      const Precision& prec, std::optional<Real> tolerance) {
  require_auxiliary(w, t0, "pv_checks");
  if (n < 0) throw Error(ErrorKind::index_out_of_range, "pv_checks: n must be >= 0");
  Probe p = make_probe(w, n, t0, prec);
  PrecisionGuard guard(p.prec.digits);
  return pv_records(p, n, tol_or_default(tolerance));
}

ResidualRecord sigma_residual(const JumpWeight& w, int n, const Real& t0, const Precision& prec,
                              std::optional<Real> tolerance) {
  require_auxiliary(w, t0, "sigma_residual");
  if (n < 1) throw Error(ErrorKind::index_out_of_range, "sigma_residual: n must be >= 1");
  Probe p = make_probe(w, n, t0, prec);
  PrecisionGuard guard(p.prec.digits);
  return sigma_record(p, n, tol_or_default(tolerance));
}

std::vector<ResidualRecord> sigma_checks(const JumpWeight& w, int n, const Real& t0,
                                         const Precision& prec, std::optional<Real> tolerance) {
  require_auxiliary(w, t0, "sigma_checks");
  if (n < 1) throw Error(ErrorKind::index_out_of_range, "sigma_checks: n must be >= 1");
  Probe p = make_probe(w, n, t0, prec);
  PrecisionGuard guard(p.prec.digits);
  return sigma_records(p, n, tol_or_default(tolerance));
}

Real pv_rhs(const PVState& st, const Precision& prec) {
  PrecisionGuard guard(prec.digits);
  const Real& S = st.S;
  const Real& S1 = st.S_prime;
  const Real& t = st.t;
  const Real& a = st.alpha;
  if (abs(S) * abs(1 - S) < pow10(-(prec.digits / 4))) {
    throw Error(ErrorKind::singularity_encountered,
                "Painleve V: S reached the singular locus at t = " + to_decimal(t, 12));
  }
  return (3 * S - 1) / (2 * S * (S - 1)) * S1 * S1 - S1 / t -
         a * a / 2 * (S - 1) * (S - 1) / (t * t * S) + (2 * st.n + 1 + a) * S / t -
         S * (S + 1) / (2 * (S - 1));
}

PVIntegration integrate_pv(const JumpWeight& w, int n, const Real& t_start, const Real& t_end,
                           int steps, const Precision& prec, bool round_trip,
                           std::optional<Real> tolerance) {
  require_auxiliary(w, t_start, "integrate_pv");
  require_auxiliary(w, t_end, "integrate_pv");
  if (n < 0) throw Error(ErrorKind::index_out_of_range, "integrate_pv: n must be >= 0");
  if (steps < 1) throw Error(ErrorKind::invalid_parameter, "integrate_pv: steps must be >= 1");
  const Real tol = tolerance ? *tolerance : Real(1e-8);

  PVState start = direct_state(w, n, t_start, prec);
  PVState target = direct_state(w, n, t_end, prec);
  const int digits = std::max(prec.digits, current_digits());
  const Precision work = prec.with_digits(std::max(digits, 30 + 8 * (n + 1)));
  PrecisionGuard guard(work.digits);
  const Real local_tol = pow10(-(prec.target_digits / 2));
  const Real alpha = promote(w.alpha, work.digits);

  PVIntegration out;
  out.trajectory.push_back(start);
  Vec2 y{start.S, start.S_prime};
  Real t = promote(t_start, work.digits);
  const Real t_stop = promote(t_end, work.digits);
  if (t != t_stop) {
    for (int k = 1; k <= steps; ++k) {
      Real next = k == steps ? t_stop : Real(t_start + (t_stop - t_start) * k / steps);
      y = advance(t, y, next, n, alpha, work, local_tol);
      t = next;
      out.trajectory.push_back(PVState{t, y.a, y.b, n, alpha});
    }
  }
  out.final_state = out.trajectory.back();
  out.record = judged("PV_INTEGRATE", n, t_end, relative_residual(y.a, target.S), tol);

  if (round_trip) {
    Vec2 back = y;
    if (t_stop != t_start) back = advance(t_stop, y, promote(t_start, work.digits), n, alpha, work,
                                          local_tol);
    out.round_trip = judged("PV_ROUND_TRIP", n, t_start, relative_residual(back.a, start.S), tol);
  }
  return out;
}

std::vector<HardEdgePoint> hard_edge_scan(const JumpWeight& w_template, const Real& s,
                                          const std::vector<int>& n_list, const Precision& prec) {
  if (!(s > 0)) throw Error(ErrorKind::invalid_parameter, "hard_edge_scan: s must be > 0");
  if (w_template.A != 0 || w_template.B != 1) {
    throw Error(ErrorKind::invalid_parameter, "hard_edge_scan: requires A = 0 and B = 1");
  }
  std::vector<HardEdgePoint> out;
  for (int n : n_list) {
    if (n < 1) throw Error(ErrorKind::invalid_parameter, "hard_edge_scan: n must be >= 1");
    const Real scale = 4 * n;
    const Real t = s / scale;
    OrthoTable o = build_ortho(w_template.at(t), n, prec);
    AuxTable a = aux_table(o);
    const Precision work = prec.with_digits(o.precision.digits);
    PrecisionGuard guard(work.digits);
    const BuildOptions plain{false, 4096, true};
    const Real ss = promote(s, work.digits);
    DerivativeEstimate d2 = fd_derivative(
        [&](const Real& x) {
          OrthoTable ox = build_ortho(w_template.at(x / scale), n, work, plain);
          return Real(aux_table(ox).r[n] / scale);
        },
        ss, 1, work, FdSettings::for_precision(prec));

    HardEdgePoint pt;
    pt.n = n;
    pt.s = ss;
    pt.t = promote(t, work.digits);
    pt.sigma = a.H[n];
    pt.sigma_prime = a.r[n] / scale;
    pt.sigma_second = d2.value;
    const Real& sg = pt.sigma;
    const Real& s1 = pt.sigma_prime;
    const Real& s2 = pt.sigma_second;
    const Real& al = a.weight.alpha;
    Real lhs = (ss * s2) * (ss * s2);
    Real rhs = 4 * sg * s1 * s1 - 4 * ss * s1 * s1 * s1 - ss * s1 * s1 + sg * s1 + al * al * s1 * s1;
    pt.residual = relative_residual(lhs, rhs);
    pt.exact_residual = sigma_form(pt.t, a.H[n], a.r[n], s2 * scale * scale, n, al);
    out.push_back(std::move(pt));
  }
  return out;
}

bool hard_edge_trend(const std::vector<HardEdgePoint>& points) {
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i].residual < points[i - 1].residual)) return false;
  }
  return true;
}

ResidualReport differential_suite(const JumpWeight& w, int n_max, const std::vector<Real>& t_grid,
                                  const Precision& prec, std::optional<Real> tolerance) {
  prec.validate();
  ResidualReport report;
  report.weight = w;
  report.precision = prec;
  report.digits_used = prec.digits;
  const Real tol = tol_or_default(tolerance);
  if (!(w.B > 0)) {
    report.records.push_back(
        errored("CONFIG", 0, w.t, "B must be > 0: R_n and r_n are undefined for this weight"));
    report.finalize();
    return report;
  }
  if (t_grid.empty()) throw Error(ErrorKind::configuration, "differential_suite: empty t grid");

  for (const Real& t : t_grid) {
    if (!(t > 0)) {
      report.records.push_back(errored("CONFIG", 0, t, "t must be > 0"));
      continue;
    }
    try {
      Probe p = make_probe(w, n_max, t, prec);
      PrecisionGuard guard(p.prec.digits);
      report.digits_used = std::max(report.digits_used, p.prec.digits);
      for (int n = 0; n <= n_max; ++n) {
        auto add = [&](std::vector<ResidualRecord> recs) {
          report.records.insert(report.records.end(), std::make_move_iterator(recs.begin()),
                                std::make_move_iterator(recs.end()));
        };
        add(toda_records(p, n, tol));
        add(riccati_records(p, n, tol));
        add(pv_records(p, n, tol));
        if (n >= 1) add(sigma_records(p, n, tol));
      }
    } catch (const Error& e) {
      report.records.push_back(errored("PROBE", 0, t, e));
    }
  }
  report.finalize();
  return report;
}

}  // namespace lue
