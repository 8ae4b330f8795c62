#include "lue/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lue {
namespace {

struct Panel {
  Real a;
  Real b;
  int nodes;
};

// Smallest k with (half_width/2)^k / k! below 10^-digits: the Chebyshev tail
// of e^{-x} over a panel of the given width.
int exponential_terms(double width, int digits) {
  const double target = -digits * std::log(10.0);
  const double q = width / 4.0;
  for (int k = 1; k < 4000; ++k) {
    if (k * std::log(q) - std::lgamma(k + 1.0) < target) return k;
  }
  return 4000;
}

int singular_nodes(int digits) { return static_cast<int>(std::ceil(digits / 1.5)) + 2; }

std::vector<Panel> panel_layout(const QuadratureSpec& spec) {
  std::vector<Panel> panels;
  const int digits = spec.accuracy_digits + 3;
  Real a = spec.split_at;
  while (a < spec.tail_cutoff) {
    Real width = a < spec.max_width ? a : spec.max_width;
    Real b = a + width;
    if (b > spec.tail_cutoff) b = spec.tail_cutoff;
    const double wd = static_cast<double>(b - a);
    int nodes = std::max(singular_nodes(digits),
                         (spec.max_degree + exponential_terms(wd, digits)) / 2 + 2);
    panels.push_back({a, b, nodes});
    a = b;
  }
  return panels;
}

bool uses_jacobi_segment(const JumpWeight& w) { return w.A != 0 || w.t == 0; }

}  // namespace

QuadratureRule gauss_legendre(int nodes, const Precision& prec) {
  if (nodes < 1) throw Error(ErrorKind::invalid_parameter, "gauss_legendre: nodes must be >= 1");
  PrecisionGuard guard(prec.digits);
  QuadratureRule rule;
  rule.nodes.resize(nodes);
  rule.weights.resize(nodes);
  const Real eps = pow10(-(prec.digits - 3));
  for (int i = 0; i < nodes; ++i) {
    Real x = std::cos(std::numbers::pi * (i + 0.75) / (nodes + 0.5));
    Real dp;
    for (int iter = 0; iter < 200; ++iter) {
      Real p0 = 1;
      Real p1 = x;
      for (int k = 1; k < nodes; ++k) {
        Real p2 = ((2 * k + 1) * x * p1 - k * p0) / (k + 1);
        p0 = std::move(p1);
        p1 = std::move(p2);
      }
      Real pn = nodes == 0 ? Real(1) : p1;
      Real pm = nodes == 1 ? Real(1) : p0;
      dp = nodes * (x * pn - pm) / (x * x - 1);
      Real dx = pn / dp;
      x -= dx;
      if (abs(dx) < eps) break;
    }
    // Recompute the derivative at the converged node.
    Real p0 = 1;
    Real p1 = x;
    for (int k = 1; k < nodes; ++k) {
      Real p2 = ((2 * k + 1) * x * p1 - k * p0) / (k + 1);
      p0 = std::move(p1);
      p1 = std::move(p2);
    }
    Real pm = nodes == 1 ? Real(1) : p0;
    dp = nodes * (x * p1 - pm) / (x * x - 1);
    rule.nodes[nodes - 1 - i] = x;
    rule.weights[nodes - 1 - i] = 2 / ((1 - x * x) * dp * dp);
  }
  return rule;
}

QuadratureRule gauss_jacobi(int nodes, const Real& b, const Precision& prec) {
  if (nodes < 1) throw Error(ErrorKind::invalid_parameter, "gauss_jacobi: nodes must be >= 1");
  if (!(b > -1)) throw Error(ErrorKind::invalid_parameter, "gauss_jacobi: exponent must be > -1");
  PrecisionGuard guard(prec.digits);

  // Monic Jacobi recurrence for (1-s)^0 (1+s)^b.
  std::vector<Real> ak(nodes), bk(nodes, Real(0));
  ak[0] = b / (b + 2);
  for (int k = 1; k < nodes; ++k) {
    Real s = 2 * k + b;
    ak[k] = b * b / (s * (s + 2));
    bk[k] = 4 * Real(k) * k * (k + b) * (k + b) / (s * s * (s + 1) * (s - 1));
  }
  const Real mu0 = pow(Real(2), b + 1) / (b + 1);

  std::vector<long double> al(nodes), bl(nodes);
  for (int k = 0; k < nodes; ++k) {
    al[k] = ak[k].convert_to<long double>();
    bl[k] = bk[k].convert_to<long double>();
  }
  auto below = [&](long double x) {
    int count = 0;
    long double q = al[0] - x;
    if (q < 0) ++count;
    for (int k = 1; k < nodes; ++k) {
      if (q == 0) q = 1e-4000L;
      q = (al[k] - x) - bl[k] / q;
      if (q < 0) ++count;
    }
    return count;
  };

  auto monic = [&](const Real& x, Real& p, Real& dp, Real& pm) {
    Real p_prev = 0, p_cur = 1, d_prev = 0, d_cur = 0;
    for (int k = 0; k < nodes; ++k) {
      Real p_next = (x - ak[k]) * p_cur - bk[k] * p_prev;
      Real d_next = p_cur + (x - ak[k]) * d_cur - bk[k] * d_prev;
      p_prev = std::move(p_cur);
      p_cur = std::move(p_next);
      d_prev = std::move(d_cur);
      d_cur = std::move(d_next);
    }
    p = p_cur;
    dp = d_cur;
    pm = p_prev;
  };

  Real h_last = mu0;
  for (int k = 1; k < nodes; ++k) h_last *= bk[k];

  QuadratureRule rule;
  rule.nodes.resize(nodes);
  rule.weights.resize(nodes);
  const Real eps = pow10(-(prec.digits - 3));
  for (int i = 0; i < nodes; ++i) {
    long double lo = -1.0L, hi = 1.0L;
    for (int iter = 0; iter < 90; ++iter) {
      long double mid = (lo + hi) / 2;
      if (below(mid) > i) hi = mid; else lo = mid;
    }
    Real x = (lo + hi) / 2;
    Real p, dp, pm;
    for (int iter = 0; iter < 100; ++iter) {
      monic(x, p, dp, pm);
      Real dx = p / dp;
      x -= dx;
      if (abs(dx) < eps) break;
    }
    monic(x, p, dp, pm);
    rule.nodes[i] = x;
    rule.weights[i] = h_last / (pm * dp);
  }
  return rule;
}

QuadratureSpec make_quadrature_spec(const JumpWeight& w, const Real& gamma, int max_degree,
                                    int accuracy_digits, const Precision& prec) {
  if (max_degree < 0 || accuracy_digits < 1) {
    throw Error(ErrorKind::invalid_parameter, "make_quadrature_spec: bad degree or accuracy");
  }
  if (!(gamma > -1)) {
    throw Error(ErrorKind::invalid_parameter, "make_quadrature_spec: exponent must be > -1");
  }
  PrecisionGuard guard(prec.digits);
  QuadratureSpec spec;
  spec.gamma = gamma;
  spec.max_degree = max_degree;
  spec.accuracy_digits = accuracy_digits;
  spec.split_at = w.t > 0 ? w.t : Real(1);
  spec.max_width = accuracy_digits <= 20 ? 32 : 16;

  const int digits = accuracy_digits + 3;
  const double split = static_cast<double>(spec.split_at);
  spec.jacobi_nodes = uses_jacobi_segment(w)
                          ? std::max(singular_nodes(digits) / 2,
                                     (max_degree + exponential_terms(split, digits)) / 2 + 2)
                          : 0;

  // Tail: 2 X^p e^{-X} (A+B) bounds int_X^inf x^p e^{-x} (A+B) dx once X >= 2p.
  const double p = static_cast<double>(gamma) + max_degree;
  const double mass = std::log(static_cast<double>(w.A + w.B));
  const double limit = -(accuracy_digits + 3) * std::log(10.0);
  double X = std::max(split + 1.0, 2.0 * p + 2.0);
  while (std::log(2.0) + p * std::log(X) - X + mass > limit) X += 1.0;
  spec.tail_cutoff = Real(X);
  spec.remainder_bound = 2 * pow(spec.tail_cutoff, gamma + max_degree) *
                         exp(-spec.tail_cutoff) * (w.A + w.B);

  auto layout = panel_layout(spec);
  spec.panels = static_cast<int>(layout.size());
  for (const auto& pan : layout) spec.nodes_per_panel = std::max(spec.nodes_per_panel, pan.nodes);
  return spec;
}

QuadratureRule build_rule(const JumpWeight& w, const QuadratureSpec& spec, const Precision& prec) {
  PrecisionGuard guard(prec.digits);
  QuadratureRule rule;
  const Real& gamma = spec.gamma;

  if (spec.jacobi_nodes > 0) {
    QuadratureRule gj = gauss_jacobi(spec.jacobi_nodes, gamma, prec);
    const Real half = spec.split_at / 2;
    const Real scale = pow(half, gamma + 1);
    for (std::size_t i = 0; i < gj.size(); ++i) {
      Real x = half * (1 + gj.nodes[i]);
      rule.nodes.push_back(x);
      rule.weights.push_back(scale * gj.weights[i] * exp(-x) * w.jump(x));
    }
  }

  std::vector<std::pair<int, QuadratureRule>> cache;
  for (const auto& pan : panel_layout(spec)) {
    auto it = std::find_if(cache.begin(), cache.end(),
                           [&](const auto& c) { return c.first == pan.nodes; });
    if (it == cache.end()) {
      cache.emplace_back(pan.nodes, gauss_legendre(pan.nodes, prec));
      it = cache.end() - 1;
    }
    const QuadratureRule& gl = it->second;
    const Real mid = (pan.a + pan.b) / 2;
    const Real half = (pan.b - pan.a) / 2;
    for (std::size_t i = 0; i < gl.size(); ++i) {
      Real x = mid + half * gl.nodes[i];
      rule.nodes.push_back(x);
      rule.weights.push_back(half * gl.weights[i] * exp(gamma * log(x) - x) * w.jump(x));
    }
  }
  return rule;
}

Real direct_hankel(const JumpWeight& w, int n, const QuadratureSpec& spec, const Precision& prec) {
  if (n < 1 || n > 3) {
    throw Error(ErrorKind::invalid_parameter, "direct_hankel: n must be 1, 2 or 3");
  }
  PrecisionGuard guard(prec.digits);
  QuadratureRule rule = build_rule(w, spec, prec);
  const std::size_t N = rule.size();
  double evaluations = 1;
  for (int k = 0; k < n; ++k) evaluations *= static_cast<double>(N - k) / (k + 1);
  if (evaluations > kDirectHankelBudget) {
    throw Error(ErrorKind::quadrature_budget_exceeded,
                "direct_hankel: " + std::to_string(static_cast<long long>(evaluations)) +
                    " evaluations exceed the budget");
  }
  const auto& x = rule.nodes;
  const auto& W = rule.weights;
  Real total = 0;
  if (n == 1) {
    for (std::size_t i = 0; i < N; ++i) total += W[i];
    return total;
  }
  // Squared differences, reused across the ordered tuples.
  std::vector<std::vector<Real>> d2(N, std::vector<Real>(N));
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = i + 1; j < N; ++j) {
      Real d = x[i] - x[j];
      d2[i][j] = d * d;
    }
  }
  if (n == 2) {
    for (std::size_t i = 0; i < N; ++i) {
      Real row = 0;
      for (std::size_t j = i + 1; j < N; ++j) row += W[j] * d2[i][j];
      total += W[i] * row;
    }
    return total;
  }
  for (std::size_t i = 0; i < N; ++i) {
    Real outer = 0;
    for (std::size_t j = i + 1; j < N; ++j) {
      Real inner = 0;
      for (std::size_t k = j + 1; k < N; ++k) inner += W[k] * d2[i][k] * d2[j][k];
      outer += W[j] * d2[i][j] * inner;
    }
    total += W[i] * outer;
  }
  return total;
}

Real direct_hankel(const JumpWeight& w, int n, const Precision& prec, int accuracy_digits) {
  QuadratureSpec spec = make_quadrature_spec(w, w.alpha, 2 * (n - 1), accuracy_digits, prec);
  return direct_hankel(w, n, spec, prec);
}

namespace {

Real horner(const std::vector<Real>& c, const Real& x) {
  Real acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace

Real quad_inner_product(const JumpWeight& w, const std::vector<Real>& f,
                        const std::vector<Real>& g, const QuadratureSpec& spec,
                        const Precision& prec) {
  PrecisionGuard guard(prec.digits);
  QuadratureRule rule = build_rule(w, spec, prec);
  Real total = 0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    total += rule.weights[i] * horner(f, rule.nodes[i]) * horner(g, rule.nodes[i]);
  }
  return total;
}

Real quad_inner_product(const JumpWeight& w, const std::vector<Real>& f,
                        const std::vector<Real>& g, const Precision& prec) {
  const int degree = static_cast<int>(f.size() + g.size()) - 2;
  QuadratureSpec spec =
      make_quadrature_spec(w, w.alpha, std::max(degree, 0), prec.target_digits + 10, prec);
  return quad_inner_product(w, f, g, spec, prec);
}

Real moment_determinant(const JumpWeight& w, int n, const Precision& prec) {
  if (n < 0) throw Error(ErrorKind::invalid_parameter, "moment_determinant: n must be >= 0");
  PrecisionGuard guard(prec.digits);
  if (n == 0) return Real(1);
  std::vector<Real> mu(2 * n - 1);
  for (int k = 0; k < 2 * n - 1; ++k) mu[k] = moment(k, w, prec);
  std::vector<std::vector<Real>> m(n, std::vector<Real>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = mu[i + j];
  Real det = 1;
  for (int c = 0; c < n; ++c) {
    int pivot = c;
    for (int r = c + 1; r < n; ++r)
      if (abs(m[r][c]) > abs(m[pivot][c])) pivot = r;
    if (m[pivot][c] == 0) return Real(0);
    if (pivot != c) {
      std::swap(m[pivot], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (int r = c + 1; r < n; ++r) {
      Real f = m[r][c] / m[c][c];
      for (int k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

std::vector<ResidualRecord> ibp_check(const JumpWeight& w, const OrthoTable& ortho, int n,
                                      const Precision& prec) {
  if (!(w.alpha > 0)) return ibp_check(w, ortho, n, QuadratureRule{}, prec);
  QuadratureSpec spec =
      make_quadrature_spec(w, w.alpha - 1, 2 * n, prec.target_digits + 10, prec);
  return ibp_check(w, ortho, n, build_rule(w, spec, prec), prec);
}

std::vector<ResidualRecord> ibp_check(const JumpWeight& w, const OrthoTable& ortho, int n,
                                      const QuadratureRule& rule, const Precision& prec) {
  std::vector<ResidualRecord> out;
  if (!(w.alpha > 0)) {
    out.push_back(skipped("IBP1", n, w.t, "alpha = 0: y^(alpha-1) kernel undefined"));
    if (n >= 1) out.push_back(skipped("IBP2", n, w.t, "alpha = 0: y^(alpha-1) kernel undefined"));
    return out;
  }
  if (n < 0 || n > ortho.n_max) {
    throw Error(ErrorKind::index_out_of_range, "ibp_check: n out of range");
  }
  PrecisionGuard guard(std::max(prec.digits, ortho.precision.digits));
  const Real tol = pow10(-(prec.target_digits - 10));
  const Real jump = w.B * w.base(w.t);
  Real lhs1 = 0;
  Real lhs2 = 0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    Real pn = eval_monic(ortho, n, rule.nodes[i]);
    lhs1 += rule.weights[i] * pn * pn;
    if (n >= 1) lhs2 += rule.weights[i] * pn * eval_monic(ortho, n - 1, rule.nodes[i]);
  }
  lhs1 *= w.alpha;
  lhs2 *= w.alpha;
  const auto& P = ortho.P_at_t;
  Real rhs1 = ortho.h[n] - jump * P[n] * P[n];
  // Both sides are differences of O(h_n) terms; scale by h_n.
  out.push_back(judged("IBP1", n, w.t, abs(lhs1 - rhs1) / ortho.h[n], tol));
  if (n >= 1) {
    Real rhs2 = -n * ortho.h[n - 1] - jump * P[n] * P[n - 1];
    out.push_back(judged("IBP2", n, w.t, abs(lhs2 - rhs2) / ortho.h[n - 1], tol));
  }
  return out;
}

ResidualReport oracle_suite(const JumpWeight& w, int n_max, const std::vector<Real>& t_grid,
                            const Precision& prec) {
  ResidualReport report;
  report.weight = w;
  report.precision = prec;
  report.digits_used = prec.digits;
  PrecisionGuard guard(prec.digits);
  const int n_orth = std::min(n_max, 8);
  const Real hankel_tol = Real(1e-8);
  const Real det_tol = pow10(-(prec.target_digits - 15));
  const Real orth_tol = prec.tolerance();
  for (const Real& t : t_grid) {
    JumpWeight wt;
    try {
      wt = w.at(t);
    } catch (const Error& e) {
      report.records.push_back(errored("ORACLE", 0, t, e));
      continue;
    }
    try {
      OrthoTable ortho = build_ortho(wt, std::max(n_orth, 3), prec);
      report.digits_used = std::max(report.digits_used, ortho.precision.digits);
      for (int n = 1; n <= 3; ++n) {
        Real direct = direct_hankel(wt, n, Precision{40, 15});
        Real product = hankel_det(ortho, n).value;
        report.records.push_back(
            judged("ORACLE_HANKEL", n, t, abs(direct - product) / product, hankel_tol));
      }
      for (int n = 1; n <= 4; ++n) {
        Real det = moment_determinant(wt, n, prec.with_digits(ortho.precision.digits));
        Real product = hankel_det(ortho, n).value;
        report.records.push_back(
            judged("ORACLE_MOMENT_DET", n, t, abs(det - product) / product, det_tol));
      }
      QuadratureSpec spec =
          make_quadrature_spec(wt, wt.alpha, 2 * n_orth, prec.target_digits + 10, prec);
      QuadratureRule rule = build_rule(wt, spec, prec);
      for (int i = 0; i <= n_orth; ++i) {
        Real worst = 0;
        for (int j = 0; j <= i; ++j) {
          Real ip = 0;
          for (std::size_t q = 0; q < rule.size(); ++q) {
            ip += rule.weights[q] * eval_monic(ortho, i, rule.nodes[q]) *
                  eval_monic(ortho, j, rule.nodes[q]);
          }
          Real expected = i == j ? ortho.h[i] : Real(0);
          Real r = abs(ip - expected) / sqrt(ortho.h[i] * ortho.h[j]);
          if (r > worst) worst = r;
        }
        report.records.push_back(judged("ORTHO_QUAD", i, t, worst, orth_tol));
      }
      if (wt.alpha > 0 && wt.B > 0 && t > 0) {
        QuadratureSpec ibp_spec =
            make_quadrature_spec(wt, wt.alpha - 1, 2 * n_orth, prec.target_digits + 10, prec);
        QuadratureRule ibp_rule = build_rule(wt, ibp_spec, prec);
        for (int n = 0; n <= n_orth; ++n) {
          auto recs = ibp_check(wt, ortho, n, ibp_rule, prec);
          report.records.insert(report.records.end(), recs.begin(), recs.end());
        }
      }
    } catch (const Error& e) {
      report.records.push_back(errored("ORACLE", 0, t, e));
    }
  }
  report.finalize();
  return report;
}

}  // namespace lue
