#pragma once

#include <optional>
#include <vector>

#include "lue/auxiliary.hpp"
#include "lue/fd.hpp"
#include "lue/records.hpp"

namespace lue {

/// Default tolerance for identities whose left side is a finite difference.
Real differential_tolerance();

/// dR_n/dt from the table at t, without differencing:
///   R_n' = R_n (alpha/t - 1 + R_n + 2 sum_{k<n} R_k) + 2 (B w0(t)/h_n) P_n(t) P_n'(t).
Real R_prime(const AuxTable& aux, const OrthoTable& ortho, int n);
/// S_n' = R_n' / R_n^2.
Real S_prime(const AuxTable& aux, const OrthoTable& ortho, int n);

/// Toda-type relations at (n, t0):
///   LOGH_DERIV      d/dt ln h_n = -R_n
///   P1_DERIV        d/dt p_1(n) = r_n
///   TODA_BETA       beta_n' = (R_{n-1} - R_n) beta_n               (n >= 1)
///   TODA_ALPHA      alpha_n' = r_n - r_{n+1}
///   TODA_ALPHA_PRINTED  alpha_n' = r_n - r_{n-1}  (flagged, never failed; n >= 1)
///   TODA_MOLECULE   t^2 (ln D_n)'' = -n(n+alpha) + D_{n+1} D_{n-1} / D_n^2   (n >= 1)
std::vector<ResidualRecord> check_toda(const JumpWeight& w, int n, const Real& t0,
                                       const Precision& prec,
                                       std::optional<Real> tolerance = std::nullopt);

/// RICCATI_R (n >= 0) and RICCATI_SMALL_R (n >= 1, skipped when R_n(1-R_n) vanishes).
std::vector<ResidualRecord> check_riccati(const JumpWeight& w, int n, const Real& t0,
                                          const Precision& prec,
                                          std::optional<Real> tolerance = std::nullopt);

/// Painleve V for S_n in the cleared form
///   2 t^2 S(1-S) S'' = -t^2 (3S-1) S'^2 - 2t S(1-S) S' - alpha^2 (S-1)^2 (1-S)
///                      + 2(2n+1+alpha) t S^2 (1-S) + t^2 S^2 (S+1)
/// with S' analytic and S'' a finite difference of S'. On the singular locus
/// (|S| or |1-S| below 10^-(digits/4)) the record is skipped-degenerate with
/// a "singular-locus" note and still carries the residual. A mismatch between
/// S_n and its alpha_n representation marks the record failed.
ResidualRecord pv_residual(const JumpWeight& w, int n, const Real& t0, const Precision& prec,
                           std::optional<Real> tolerance = std::nullopt);

/// PAINLEVE_V plus PV_ALPHA_REP (S_n from alpha_n), PV_RICCATI_ELIM (S'' from
/// the two Riccati equations), S_PRIME (analytic S' against a difference) and
/// PAINLEVE_V_PRINTED: the same equation with the S'^2 coefficient written as
/// (3S-1)/(2S(1-S)), flagged rather than failed when it misses.
std::vector<ResidualRecord> pv_checks(const JumpWeight& w, int n, const Real& t0,
                                      const Precision& prec,
                                      std::optional<Real> tolerance = std::nullopt);

/// sigma form (t H'')^2 = 4 H'^2 [H - n(n+alpha) - t H'] + [(2n+alpha-t) H' + H]^2
/// with H' = r_n and H'' a finite difference of r_n (n >= 1).
ResidualRecord sigma_residual(const JumpWeight& w, int n, const Real& t0, const Precision& prec,
                              std::optional<Real> tolerance = std::nullopt);

/// SIGMA_FORM plus H_DERIV (H_n' = r_n), BETA_FROM_H, R_FROM_H, INV_R_FROM_H,
/// RREP_PRODUCT (the two R_n representations multiply to 1), RESOLVENT and
/// RESOLVENT_DERIV.
std::vector<ResidualRecord> sigma_checks(const JumpWeight& w, int n, const Real& t0,
                                         const Precision& prec,
                                         std::optional<Real> tolerance = std::nullopt);

struct PVState {
  Real t;
  Real S;
  Real S_prime;
  int n = 0;
  Real alpha;
};

/// S'' from the Painleve V equation; throws singularity_encountered when
/// |S||1-S| < 10^-(digits/4).
Real pv_rhs(const PVState& state, const Precision& prec);

struct PVIntegration {
  PVState final_state;
  ResidualRecord record;
  std::vector<PVState> trajectory;
  /// Present when a return trip was requested.
  std::optional<ResidualRecord> round_trip;
};

/// Integrates Painleve V from t_start to t_end with a Gragg-Bulirsch-Stoer
/// scheme (adaptive macro step, local tolerance 10^-(target_digits/2)).
/// The initial state is computed directly; the record compares the end state
/// with S_n computed directly at t_end. `steps` fixes the number of
/// trajectory samples. With round_trip the end state is integrated back and
/// compared with the starting S (record PV_ROUND_TRIP).
PVIntegration integrate_pv(const JumpWeight& w, int n, const Real& t_start, const Real& t_end,
                           int steps, const Precision& prec, bool round_trip = false,
                           std::optional<Real> tolerance = std::nullopt);

struct HardEdgePoint {
  int n = 0;
  Real s;
  Real t;
  Real sigma;
  Real sigma_prime;
  Real sigma_second;
  /// Residual of (s sigma'')^2 = 4 sigma sigma'^2 - 4 s sigma'^3 - s sigma'^2
  ///   + sigma sigma' + alpha^2 sigma'^2.
  Real residual;
  /// Residual of the exact sigma form at t = s/(4n).
  Real exact_residual;
};

/// sigma(s) = H_n(s/(4n)) for the weight x^alpha e^{-x} theta(x - t).
/// Requires A = 0, B = 1 and s > 0.
std::vector<HardEdgePoint> hard_edge_scan(const JumpWeight& w_template, const Real& s,
                                          const std::vector<int>& n_list, const Precision& prec);
/// Residuals strictly decrease along the list.
bool hard_edge_trend(const std::vector<HardEdgePoint>& points);

/// All differential checks for n = 0..n_max at each t of the grid, with one
/// shared finite-difference probe per t.
ResidualReport differential_suite(const JumpWeight& w, int n_max, const std::vector<Real>& t_grid,
                                  const Precision& prec,
                                  std::optional<Real> tolerance = std::nullopt);

}  // namespace lue
