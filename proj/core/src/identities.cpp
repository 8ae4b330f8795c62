#include "lue/identities.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "lue/oracle.hpp"

namespace lue {
namespace {

// Outcome of evaluating one identity: either a residual or a degenerate
// denominator.
struct Outcome {
  Real residual;
  bool degenerate = false;
  std::string note;
};

struct Context {
  const AuxTable& aux;
  const OrthoTable& ortho;
  int n;
  Real t;
  Real alpha;
  Real m;  // n(n + alpha)
  Real guard;
  const Precision& prec;

  const Real& R(int k) const { return aux.R.at(k); }
  const Real& r(int k) const { return aux.r.at(k); }
  const Real& H(int k) const { return aux.H.at(k); }
  const Real& beta(int k) const { return ortho.beta.at(k); }
  bool tiny(const Real& den) const { return abs(den) < guard; }
};

Outcome degenerate(std::string why) { return Outcome{Real(0), true, std::move(why)}; }

Outcome rel(const Real& lhs, const Real& rhs) { return Outcome{relative_residual(lhs, rhs), false, {}}; }

Outcome worst(std::initializer_list<Outcome> parts) {
  Outcome out{Real(0), false, {}};
  for (const auto& p : parts) {
    if (p.degenerate) return p;
    if (p.residual > out.residual) out.residual = p.residual;
  }
  return out;
}

// t H_n'' expressed through the tables: r_n^2/R_n - beta_n R_n.
Real t_H2(const Context& c) { return c.r(c.n) * c.r(c.n) / c.R(c.n) - c.beta(c.n) * c.R(c.n); }

// Denominator shared by the discrete representations.
Real discrete_den(const Context& c) {
  return c.t + c.H(c.n + 1) - c.H(c.n - 1) - 2 * c.n - c.alpha;
}

Real t_r_from_H(const Context& c, const Real& den) {
  const Real E = c.t + c.H(c.n + 1) - c.H(c.n - 1);
  return ((c.H(c.n) - c.m) * E + c.t * c.m) / den;
}

using Evaluator = std::function<Outcome(const Context&)>;

struct Algebraic {
  IdentityEntry entry;
  Evaluator eval;
};

const std::vector<Algebraic>& algebraic_table() {
  static const std::vector<Algebraic> table = [] {
    std::vector<Algebraic> v;
    auto add = [&](std::string id, int min_n, std::string anchor, Evaluator f,
                   bool flag_only = false) {
      v.push_back({{std::move(id), Arity::n_t, min_n, false, flag_only, std::move(anchor)},
                   std::move(f)});
    };

    add("ALPHA", 0, "alpha_n = 2n + 1 + alpha + t R_n", [](const Context& c) {
      return rel(c.ortho.alpha[c.n], 2 * c.n + 1 + c.alpha + c.t * c.R(c.n));
    });
    add("STRING", 0, "r_{n+1} + r_n = R_n (t - alpha_n)", [](const Context& c) {
      return rel(c.r(c.n + 1) + c.r(c.n), c.R(c.n) * (c.t - c.ortho.alpha[c.n]));
    });
    add("PROD", 1, "r_n^2 = beta_n R_n R_{n-1}", [](const Context& c) {
      return rel(c.r(c.n) * c.r(c.n), c.beta(c.n) * c.R(c.n) * c.R(c.n - 1));
    });
    add("PROD2", 1, "(n + r_n)(n + alpha + r_n) = beta_n (1 - R_n)(1 - R_{n-1})",
        [](const Context& c) {
          return rel((c.n + c.r(c.n)) * (c.n + c.alpha + c.r(c.n)),
                     c.beta(c.n) * (1 - c.R(c.n)) * (1 - c.R(c.n - 1)));
        });
    add("RES15", 1,
        "sum_{j<n} R_j + r_n [1 - alpha/t - 2(n + r_n)/t] = "
        "(beta_n/t) [(1 - R_n) R_{n-1} + (1 - R_{n-1}) R_n]",
        [](const Context& c) {
          const Real& rn = c.r(c.n);
          Real lhs = c.aux.sumR[c.n] + rn * (1 - c.alpha / c.t - 2 * (c.n + rn) / c.t);
          Real rhs = c.beta(c.n) / c.t *
                     ((1 - c.R(c.n)) * c.R(c.n - 1) + (1 - c.R(c.n - 1)) * c.R(c.n));
          return rel(lhs, rhs);
        });
    add("BETAEXPR", 1, "beta_n = [r_n (2n + alpha) + n(n + alpha) + r_n^2/R_n] / (1 - R_n)",
        [](const Context& c) {
          Real den = 1 - c.R(c.n);
          if (c.tiny(den)) return degenerate("1 - R_n vanishes");
          const Real& rn = c.r(c.n);
          return rel(c.beta(c.n),
                     (rn * (2 * c.n + c.alpha) + c.m + rn * rn / c.R(c.n)) / den);
        });
    add("DIFF1", 0, "r_{n+1} + r_n = R_n (t - 2n - alpha - 1 - t R_n)", [](const Context& c) {
      return rel(c.r(c.n + 1) + c.r(c.n),
                 c.R(c.n) * (c.t - 2 * c.n - c.alpha - 1 - c.t * c.R(c.n)));
    });
    add("DIFF2", 1,
        "r_n^2 (1/(R_n R_{n-1}) - 1/R_n - 1/R_{n-1}) = r_n (2n + alpha) + n(n + alpha)",
        [](const Context& c) {
          if (c.tiny(c.R(c.n)) || c.tiny(c.R(c.n - 1))) return degenerate("R_n vanishes");
          const Real& rn = c.r(c.n);
          Real lhs = rn * rn *
                     (1 / (c.R(c.n) * c.R(c.n - 1)) - 1 / c.R(c.n) - 1 / c.R(c.n - 1));
          return rel(lhs, rn * (2 * c.n + c.alpha) + c.m);
        });
    add("INIT", 0,
        "r_0 = 0, R_0 = B t^alpha e^{-t} / h_0, "
        "h_0 = A Gamma(1 + alpha) + B Gamma(1 + alpha, t)",
        [](const Context& c) {
          const JumpWeight& w = c.aux.weight;
          const Precision p = c.prec.with_digits(c.aux.precision.digits);
          Real s = w.alpha + 1;
          Real h0 = w.B * gamma_upper(s, w.t, p);
          if (w.origin) {
            JumpHeights ab = from_lambda_beta(w.origin->lambda, w.origin->beta);
            h0 = ab.A * gamma_complete(s, p) + ab.B * gamma_upper(s, w.t, p);
          } else if (w.A != 0) {
            h0 += w.A * gamma_complete(s, p);
          }
          Real R0 = w.B * exp(w.alpha * log(w.t) - w.t) / h0;
          return worst({rel(c.r(0), Real(0)), rel(c.ortho.h[0], h0), rel(c.R(0), R0)});
        });
    add("SUMR", 1, "t sum_{j<n} R_j = -t r_n - n(n + alpha) + beta_n", [](const Context& c) {
      return rel(c.t * c.aux.sumR[c.n], -c.t * c.r(c.n) - c.m + c.beta(c.n));
    });
    add("SUMALPHA", 1, "sum_{j<n} alpha_j = -p_1(n) = beta_n - t r_n", [](const Context& c) {
      Real sum = 0;
      for (int j = 0; j < c.n; ++j) sum += c.ortho.alpha[j];
      return worst({rel(sum, -c.ortho.p1[c.n]), rel(sum, c.beta(c.n) - c.t * c.r(c.n))});
    });
    add("SREP9", 0, "S_n = (alpha_n - (2n + alpha + 1) - t) / (alpha_n - (2n + alpha + 1))",
        [](const Context& c) {
          Real shifted = c.ortho.alpha[c.n] - (2 * c.n + c.alpha + 1);
          if (c.tiny(shifted)) return degenerate("alpha_n - (2n + alpha + 1) vanishes");
          return rel(c.aux.S[c.n], (shifted - c.t) / shifted);
        });
    add("HREP13", 0, "H_n = p_1(n) + n(n + alpha) = t r_n - beta_n + n(n + alpha)",
        [](const Context& c) {
          return worst({rel(c.H(c.n), c.ortho.p1[c.n] + c.m),
                        rel(c.H(c.n), c.t * c.r(c.n) - c.beta(c.n) + c.m)});
        });
    add("HREP14", 1, "beta_n = t H_n' - H_n + n(n + alpha), H_n' = r_n", [](const Context& c) {
      return rel(c.beta(c.n), c.t * c.r(c.n) - c.H(c.n) + c.m);
    });
    add("RREP18", 1,
        "R_n = [t H_n'' + (2n + alpha - t) H_n' + H_n] / (2 [H_n - n(n + alpha) - t H_n'])",
        [](const Context& c) {
          Real den = 2 * (c.H(c.n) - c.m - c.t * c.r(c.n));
          if (c.tiny(den)) return degenerate("H_n - n(n+alpha) - t H_n' vanishes");
          Real num = t_H2(c) + (2 * c.n + c.alpha - c.t) * c.r(c.n) + c.H(c.n);
          return rel(c.R(c.n), num / den);
        });
    add("RREP19", 1, "1/R_n = [t H_n'' - (2n + alpha - t) H_n' - H_n] / (2 (H_n')^2)",
        [](const Context& c) {
          Real den = 2 * c.r(c.n) * c.r(c.n);
          if (c.tiny(den)) return degenerate("H_n' vanishes");
          Real num = t_H2(c) - (2 * c.n + c.alpha - c.t) * c.r(c.n) - c.H(c.n);
          return rel(1 / c.R(c.n), num / den);
        });
    add("T8A", 0, "t R_n = H_n - H_{n+1}", [](const Context& c) {
      return rel(c.t * c.R(c.n), c.H(c.n) - c.H(c.n + 1));
    });
    add("T8B", 1,
        "t r_n = {[H_n - n(n+alpha)](t + H_{n+1} - H_{n-1}) + t n(n+alpha)} / "
        "(t + H_{n+1} - H_{n-1} - 2n - alpha)",
        [](const Context& c) {
          Real den = discrete_den(c);
          if (c.tiny(den)) return degenerate("t + H_{n+1} - H_{n-1} - 2n - alpha vanishes");
          return rel(c.t * c.r(c.n), t_r_from_H(c, den));
        });
    add("T8C", 1,
        "(t r_n)^2 = [n(n+alpha) + t r_n - H_n][(t R_n)^2 + t R_n (H_{n+1} + H_{n-1} - 2H_n)]",
        [](const Context& c) {
          Real tr = c.t * c.r(c.n);
          Real tR = c.t * c.R(c.n);
          return rel(tr * tr, (c.m + tr - c.H(c.n)) *
                                  (tR * tR + tR * (c.H(c.n + 1) + c.H(c.n - 1) - 2 * c.H(c.n))));
        });
    add("T9A", 0, "alpha_n - (2n + alpha + 1) = H_n - H_{n+1}", [](const Context& c) {
      return rel(c.ortho.alpha[c.n] - (2 * c.n + c.alpha + 1), c.H(c.n) - c.H(c.n + 1));
    });
    add("T9B", 1,
        "beta_n - n(n+alpha) = [H_n (2n + alpha) - n(n+alpha)(H_{n+1} - H_{n-1})] / "
        "(t + H_{n+1} - H_{n-1} - 2n - alpha)",
        [](const Context& c) {
          Real den = discrete_den(c);
          if (c.tiny(den)) return degenerate("t + H_{n+1} - H_{n-1} - 2n - alpha vanishes");
          Real num = c.H(c.n) * (2 * c.n + c.alpha) - c.m * (c.H(c.n + 1) - c.H(c.n - 1));
          return rel(c.beta(c.n) - c.m, num / den);
        });
    add("DSIGMA", 1,
        "(t r_n)^2 = [n(n+alpha) + t r_n - H_n][(t R_n)^2 + t R_n (H_{n+1} + H_{n-1} - 2H_n)] "
        "with t R_n = H_n - H_{n+1} and t r_n from H_{n-1}, H_n, H_{n+1}",
        [](const Context& c) {
          Real den = discrete_den(c);
          if (c.tiny(den)) return degenerate("t + H_{n+1} - H_{n-1} - 2n - alpha vanishes");
          Real tr = t_r_from_H(c, den);
          Real tR = c.H(c.n) - c.H(c.n + 1);
          return rel(tr * tr, (c.m + tr - c.H(c.n)) *
                                  (tR * tR + tR * (c.H(c.n + 1) + c.H(c.n - 1) - 2 * c.H(c.n))));
        });
    add("DSIGMA_DISPLAYED", 1,
        "{[H_n - n(n+alpha)](t + H_{n+1} - H_{n-1}) + t n(n+alpha)}^2 / D^2 = "
        "{(2n+alpha)[H_n - n(n+alpha)] + t n(n+alpha)} / D (H_n - H_{n+1})(H_{n-1} - H_n), "
        "D = t + H_{n+1} - H_{n-1} - 2n - alpha",
        [](const Context& c) {
          Real den = discrete_den(c);
          if (c.tiny(den)) return degenerate("t + H_{n+1} - H_{n-1} - 2n - alpha vanishes");
          Real tr = t_r_from_H(c, den);
          Real factor = ((2 * c.n + c.alpha) * (c.H(c.n) - c.m) + c.t * c.m) / den;
          return rel(tr * tr,
                     factor * (c.H(c.n) - c.H(c.n + 1)) * (c.H(c.n - 1) - c.H(c.n)));
        },
        true);
    add("DP3A", 0, "r_{n+1} + r_n = R_n (-alpha - 2n - 1 + t - t R_n)", [](const Context& c) {
      return rel(c.r(c.n + 1) + c.r(c.n),
                 c.R(c.n) * (-c.alpha - 2 * c.n - 1 + c.t - c.t * c.R(c.n)));
    });
    return v;
  }();
  return table;
}

const std::vector<IdentityEntry>& z_and_quadrature_entries() {
  static const std::vector<IdentityEntry> entries = {
      {"S1", Arity::n_t_z, 0, false, false,
       "B_{n+1}(z) + B_n(z) = (z - alpha_n) A_n(z) - v0'(z)"},
      {"S2", Arity::n_t_z, 0, true, false,
       "1 + (z - alpha_n)[B_{n+1}(z) - B_n(z)] = beta_{n+1} A_{n+1}(z) - beta_n A_{n-1}(z)"},
      {"S2p", Arity::n_t_z, 1, false, false,
       "B_n(z)^2 + v0'(z) B_n(z) + sum_{j<n} A_j(z) = beta_n A_n(z) A_{n-1}(z)"},
      {"LOWER", Arity::n_t_z, 1, false, false,
       "P_n'(z) = -B_n(z) P_n(z) + beta_n A_n(z) P_{n-1}(z)"},
      {"RAISE", Arity::n_t_z, 1, false, false,
       "P_{n-1}'(z) = [B_n(z) + v0'(z)] P_{n-1}(z) - A_{n-1}(z) P_n(z)"},
      {"ODE2", Arity::n_t_z, 0, false, false,
       "y'' - (v0' + A_n'/A_n) y' + (B_n' - B_n A_n'/A_n + sum_{j<n} A_j) y = 0, y = P_n"},
      {"IBP1", Arity::quadrature, 0, false, false,
       "alpha int y^{alpha-1} e^{-y} w_J P_n^2 dy = h_n - B w0(t) P_n(t)^2"},
      {"IBP2", Arity::quadrature, 1, false, false,
       "alpha int y^{alpha-1} e^{-y} w_J P_n P_{n-1} dy = -n h_{n-1} - B w0(t) P_n(t) P_{n-1}(t)"},
      {"DP3B", Arity::n_t, 1, false, false,
       "(1/R_n - 1)(1/R_{n-1} - 1) = (r_n + n + alpha)(r_n + n) / r_n^2"},
  };
  return entries;
}

const std::vector<IdentityEntry>& build_registry() {
  static const std::vector<IdentityEntry> registry = [] {
    std::vector<IdentityEntry> all;
    for (const auto& a : algebraic_table()) all.push_back(a.entry);
    for (const auto& e : z_and_quadrature_entries()) all.push_back(e);
    std::sort(all.begin(), all.end(),
              [](const IdentityEntry& a, const IdentityEntry& b) { return a.id < b.id; });
    return all;
  }();
  return registry;
}

// Ladder-coefficient pieces at one z, valid for indices 0..aux.n_max.
struct Ladder {
  const AuxTable& aux;
  Real z;
  Real t;
  Real alpha;

  Real A(int k) const {
    if (k < 0) return Real(0);
    return aux.R.at(k) / (z - t) + (1 - aux.R.at(k)) / z;
  }
  Real B(int k) const { return aux.r.at(k) / (z - t) - (k + aux.r.at(k)) / z; }
  Real A_prime(int k) const {
    return -aux.R.at(k) / ((z - t) * (z - t)) - (1 - aux.R.at(k)) / (z * z);
  }
  Real B_prime(int k) const {
    return -aux.r.at(k) / ((z - t) * (z - t)) + (k + aux.r.at(k)) / (z * z);
  }
  Real v0p() const { return 1 - alpha / z; }
  Real sumA(int k, const Real& sum_R) const { return sum_R / (z - t) + (k - sum_R) / z; }
};

Outcome eval_z(std::string_view id, const Context& c, const Real& z) {
  Ladder L{c.aux, z, c.t, c.alpha};
  const int n = c.n;
  const OrthoTable& o = c.ortho;
  if (id == "S1") {
    return rel(L.B(n + 1) + L.B(n), (z - o.alpha[n]) * L.A(n) - L.v0p());
  }
  if (id == "S2") {
    Real rhs = o.beta[n + 1] * L.A(n + 1) - (n == 0 ? Real(0) : Real(o.beta[n] * L.A(n - 1)));
    return rel(1 + (z - o.alpha[n]) * (L.B(n + 1) - L.B(n)), rhs);
  }
  if (id == "S2p") {
    Real Bn = L.B(n);
    Real rhs = o.beta[n] * L.A(n) * L.A(n - 1);
    Real stored = Bn * Bn + L.v0p() * Bn + L.sumA(n, c.aux.sumR[n]);
    // Independent route: the sum of R_j taken from the SUMR relation.
    Real from_sumr = (-c.t * c.r(n) - c.m + o.beta[n]) / c.t;
    Real derived = Bn * Bn + L.v0p() * Bn + L.sumA(n, from_sumr);
    return worst({rel(stored, rhs), rel(derived, rhs)});
  }
  if (id == "LOWER") {
    Real Pn = eval_monic(o, n, z);
    Real Pm = eval_monic(o, n - 1, z);
    return rel(eval_monic_deriv(o, n, z), -L.B(n) * Pn + o.beta[n] * L.A(n) * Pm);
  }
  if (id == "RAISE") {
    Real Pn = eval_monic(o, n, z);
    Real Pm = eval_monic(o, n - 1, z);
    return rel(eval_monic_deriv(o, n - 1, z), (L.B(n) + L.v0p()) * Pm - L.A(n - 1) * Pn);
  }
  if (id == "ODE2") {
    Real An = L.A(n);
    if (c.tiny(An)) return degenerate("A_n(z) vanishes");
    Real ratio = L.A_prime(n) / An;
    Real y = eval_monic(o, n, z);
    Real y1 = eval_monic_deriv(o, n, z);
    Real y2 = eval_monic_deriv2(o, n, z);
    Real coeff = L.B_prime(n) - L.B(n) * ratio + L.sumA(n, c.aux.sumR[n]);
    return rel(y2, (L.v0p() + ratio) * y1 - coeff * y);
  }
  throw Error(ErrorKind::index_out_of_range, "check_identity: unknown z identity");
}

// Samples away from {0, t} and from zeros of P_n, P_{n-1} and A_n.
std::vector<Real> usable_samples(const Context& c, std::vector<Real> candidates) {
  std::vector<Real> out;
  const Real sep = pow10(-6);
  auto ok = [&](const Real& z) {
    if (abs(z) < sep || abs(z - c.t) < sep) return false;
    Ladder L{c.aux, z, c.t, c.alpha};
    if (c.tiny(L.A(c.n))) return false;
    Real scale = pow(abs(z) + 1, c.n);
    if (abs(eval_monic(c.ortho, c.n, z)) < c.guard * scale) return false;
    if (c.n >= 1 && abs(eval_monic(c.ortho, c.n - 1, z)) < c.guard * scale) return false;
    return true;
  };
  for (const auto& z : candidates)
    if (ok(z)) out.push_back(z);
  for (int k = 2; out.size() < 3 && k < 40; ++k) {
    Real z = (k + 2) * c.t + 2 * k + 1;
    if (ok(z)) out.push_back(z);
  }
  return out;
}

void check_range(const IdentityEntry& e, const AuxTable& aux, const OrthoTable& ortho, int n) {
  int top = std::min(aux.n_max, ortho.n_max);
  if (e.needs_next_R) --top;
  if (n < e.min_n || n > top) {
    throw Error(ErrorKind::index_out_of_range,
                "check_identity: n = " + std::to_string(n) + " outside the range of " + e.id);
  }
}

}  // namespace

const std::vector<IdentityEntry>& identity_registry() { return build_registry(); }

const IdentityEntry* find_identity(std::string_view id) {
  for (const auto& e : identity_registry())
    if (e.id == id) return &e;
  return nullptr;
}

Real algebraic_tolerance(const Precision& prec) { return pow10(-(prec.target_digits - 10)); }

std::vector<Real> default_z_samples(const Real& t) { return {t / 2, t + 1, 2 * t + 3}; }

ResidualRecord check_identity(std::string_view id, const AuxTable& aux, const OrthoTable& ortho,
                              int n, const std::optional<std::vector<Real>>& z_samples,
                              const Precision& prec, std::optional<Real> tolerance) {
  const IdentityEntry* entry = find_identity(id);
  if (!entry) {
    throw Error(ErrorKind::index_out_of_range,
                "check_identity: unknown identity '" + std::string(id) + "'");
  }
  check_range(*entry, aux, ortho, n);
  const int digits = std::max({prec.digits, aux.precision.digits, ortho.precision.digits});
  PrecisionGuard guard(digits);
  const Real tol = tolerance ? *tolerance : algebraic_tolerance(prec);
  const Real& t = aux.weight.t;

  if (entry->id == "DP3B") return check_dp3_equivalence(aux, n, prec, tol);

  if (entry->arity == Arity::quadrature) {
    auto recs = ibp_check(aux.weight, ortho, n, prec.with_digits(digits));
    for (auto& rec : recs) {
      if (rec.id == entry->id) {
        rec.tolerance = rec.status == RecordStatus::skipped_degenerate ? Real(0) : tol;
        if (rec.status != RecordStatus::skipped_degenerate)
          rec.status = rec.residual < tol ? RecordStatus::passed : RecordStatus::failed;
        return rec;
      }
    }
    throw Error(ErrorKind::index_out_of_range, "check_identity: no quadrature record");
  }

  Context c{aux, ortho, n, t, aux.weight.alpha, n * (n + aux.weight.alpha),
            pow10(-(digits / 2)), prec};

  if (entry->arity == Arity::n_t_z) {
    std::vector<Real> samples =
        usable_samples(c, z_samples ? *z_samples : default_z_samples(t));
    if (samples.empty()) return skipped(entry->id, n, t, "no usable z samples");
    Real worst_res = 0;
    Real worst_z = samples.front();
    for (const auto& z : samples) {
      Outcome o = eval_z(entry->id, c, z);
      if (o.degenerate) {
        ResidualRecord rec = skipped(entry->id, n, t, o.note);
        rec.z = z;
        return rec;
      }
      if (o.residual >= worst_res) {
        worst_res = o.residual;
        worst_z = z;
      }
    }
    return judged(entry->id, n, t, worst_res, tol, worst_z);
  }

  for (const auto& a : algebraic_table()) {
    if (a.entry.id != entry->id) continue;
    Outcome o = a.eval(c);
    if (o.degenerate) return skipped(entry->id, n, t, o.note);
    if (a.entry.flag_only) {
      return flagged_if_off(entry->id, n, t, o.residual, tol,
                            "displayed discrete sigma form disagrees with the substituted form");
    }
    return judged(entry->id, n, t, o.residual, tol);
  }
  throw Error(ErrorKind::index_out_of_range, "check_identity: no evaluator for " + entry->id);
}

ResidualRecord check_dp3_equivalence(const AuxTable& aux, int n, const Precision& prec,
                                     std::optional<Real> tolerance) {
  if (n < 1 || n > aux.n_max) {
    throw Error(ErrorKind::index_out_of_range, "check_dp3_equivalence: n must be in 1..n_max");
  }
  const int digits = std::max(prec.digits, aux.precision.digits);
  PrecisionGuard guard(digits);
  const Real tol = tolerance ? *tolerance : algebraic_tolerance(prec);
  const Real& t = aux.weight.t;
  const Real& rn = aux.r[n];
  const Real& Rn = aux.R[n];
  const Real& Rm = aux.R[n - 1];
  const Real gd = pow10(-(digits / 2));
  if (abs(rn) < gd) return skipped("DP3B", n, t, "r_n vanishes");
  if (abs(Rn) < gd || abs(Rm) < gd) return skipped("DP3B", n, t, "R_n vanishes");
  const Real a = aux.weight.alpha;

  Real lhs = (1 / Rn - 1) * (1 / Rm - 1);
  Real rhs = (rn + n + a) * (rn + n) / (rn * rn);
  Real stated = relative_residual(lhs, rhs);

  // lhs r^2 - r^2 (1/(R_n R_{n-1}) - 1/R_n - 1/R_{n-1}) = r^2
  Real diff2_lhs = rn * rn * (1 / (Rn * Rm) - 1 / Rn - 1 / Rm);
  Real link = relative_residual(lhs * rn * rn - diff2_lhs, rn * rn);
  return judged("DP3B", n, t, stated > link ? stated : link, tol);
}

ResidualReport verify_suite(const JumpWeight& w, int n_max, const std::vector<Real>& t_grid,
                            const Precision& prec, std::optional<Real> tolerance) {
  prec.validate();
  ResidualReport report;
  report.weight = w;
  report.precision = prec;
  report.digits_used = prec.digits;
  const Real tol = tolerance ? *tolerance : algebraic_tolerance(prec);

  if (!(w.B > 0)) {
    report.records.push_back(
        errored("CONFIG", 0, w.t, "B must be > 0: R_n and r_n are undefined for this weight"));
    report.finalize();
    return report;
  }
  if (t_grid.empty()) {
    throw Error(ErrorKind::configuration, "verify_suite: empty t grid");
  }

  for (const Real& t : t_grid) {
    if (!(t > 0)) {
      report.records.push_back(errored("CONFIG", 0, t, "t must be > 0"));
      continue;
    }
    try {
      JumpWeight wt = w.at(t);
      OrthoTable ortho = build_ortho(wt, n_max + 1, prec);
      AuxTable aux = aux_table(ortho);
      report.digits_used = std::max(report.digits_used, ortho.precision.digits);

      std::optional<QuadratureRule> rule;
      for (const auto& e : identity_registry()) {
        int top = n_max;
        if (e.needs_next_R) top = std::min(top, aux.n_max - 1);
        for (int n = e.min_n; n <= top; ++n) {
          try {
            if (e.arity == Arity::quadrature) {
              if (!rule && wt.alpha > 0) {
                PrecisionGuard g(ortho.precision.digits);
                QuadratureSpec spec = make_quadrature_spec(
                    wt, wt.alpha - 1, 2 * n_max, prec.target_digits + 10,
                    prec.with_digits(ortho.precision.digits));
                rule = build_rule(wt, spec, prec.with_digits(ortho.precision.digits));
              }
              auto recs = ibp_check(wt, ortho, n, rule ? *rule : QuadratureRule{},
                                    prec.with_digits(ortho.precision.digits));
              for (auto& rec : recs) {
                if (rec.id != e.id) continue;
                if (rec.status != RecordStatus::skipped_degenerate) {
                  rec.tolerance = tol;
                  rec.status = rec.residual < tol ? RecordStatus::passed : RecordStatus::failed;
                }
                report.records.push_back(rec);
              }
              continue;
            }
            report.records.push_back(check_identity(e.id, aux, ortho, n, std::nullopt, prec, tol));
          } catch (const Error& err) {
            report.records.push_back(errored(e.id, n, t, err));
          }
        }
      }
    } catch (const Error& err) {
      report.records.push_back(errored("BUILD", 0, t, err));
    }
  }
  report.finalize();
  return report;
}

}  // namespace lue
