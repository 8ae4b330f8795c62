#include "lue/moments.hpp"

namespace lue {
namespace {

constexpr int kGuardDigits = 20;
constexpr int kMaxIterations = 200000;

void require_positive_s(const Real& s, const char* op) {
  if (!(s > 0)) {
    throw Error(ErrorKind::invalid_parameter, std::string(op) + ": s must be positive");
  }
}

// gamma(s,t) by the power series t^s e^{-t} sum_k t^k / (s (s+1) ... (s+k)).
Real lower_gamma_series(const Real& s, const Real& t, const Real& eps) {
  Real term = 1 / s;
  Real sum = term;
  Real denom = s;
  for (int k = 1; k < kMaxIterations; ++k) {
    denom += 1;
    term *= t / denom;
    sum += term;
    if (abs(term) < abs(sum) * eps) {
      return sum * exp(s * log(t) - t);
    }
  }
  throw Error(ErrorKind::precision_failure, "gamma_upper: series did not converge");
}

// Gamma(s,t) by the Legendre continued fraction, modified Lentz evaluation.
Real upper_gamma_fraction(const Real& s, const Real& t, const Real& eps) {
  const Real tiny = pow10(-(current_digits() * 4));
  Real b = t + 1 - s;
  Real c = 1 / tiny;
  Real d = 1 / b;
  Real h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    Real an = -i * (i - s);
    b += 2;
    d = an * d + b;
    if (abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (abs(c) < tiny) c = tiny;
    d = 1 / d;
    Real delta = d * c;
    h *= delta;
    if (abs(delta - 1) < eps) {
      return exp(s * log(t) - t) * h;
    }
  }
  throw Error(ErrorKind::precision_failure, "gamma_upper: continued fraction did not converge");
}

}  // namespace

JumpWeight JumpWeight::make(const Real& alpha, const Real& A, const Real& B, const Real& t) {
  JumpWeight w{alpha, A, B, t, std::nullopt};
  w.validate();
  return w;
}

JumpWeight JumpWeight::from_lambda_beta(const Real& alpha, const Real& lambda, const Real& beta,
                                        const Real& t) {
  JumpHeights ab = lue::from_lambda_beta(lambda, beta);
  JumpWeight w{alpha, ab.A, ab.B, t, LambdaBeta{lambda, beta}};
  w.validate();
  return w;
}

void JumpWeight::validate() const {
  if (A < 0) throw Error(ErrorKind::invalid_parameter, "weight: A must be >= 0");
  if (!(A + B > 0)) throw Error(ErrorKind::invalid_parameter, "weight: A + B must be > 0");
  if (alpha < 0) throw Error(ErrorKind::invalid_parameter, "weight: alpha must be >= 0");
  if (alpha == 0 && A != 0) {
    throw Error(ErrorKind::invalid_parameter,
                "weight: alpha = 0 requires A = 0 (w(0) must vanish)");
  }
  if (t < 0) throw Error(ErrorKind::invalid_parameter, "weight: t must be >= 0");
}

JumpWeight JumpWeight::at(const Real& new_t) const {
  JumpWeight w = *this;
  w.t = new_t;
  w.validate();
  return w;
}

JumpWeight JumpWeight::promoted(int digits) const {
  JumpWeight w{promote(alpha, digits), promote(A, digits), promote(B, digits), promote(t, digits),
               std::nullopt};
  if (origin) w.origin = LambdaBeta{promote(origin->lambda, digits), promote(origin->beta, digits)};
  return w;
}

Real JumpWeight::base(const Real& x) const {
  if (x <= 0) return alpha == 0 && x == 0 ? Real(1) : Real(0);
  return exp(alpha * log(x) - x);
}

Real JumpWeight::jump(const Real& x) const { return x > t ? A + B : A; }

JumpHeights from_lambda_beta(const Real& lambda, const Real& beta) {
  if (!(abs(beta) < 2)) {
    throw Error(ErrorKind::invalid_parameter, "from_lambda_beta: |beta| must be < 2");
  }
  Real lower = pow(1 - beta / 2, lambda);
  Real upper = pow(1 + beta / 2, lambda);
  return {lower, upper - lower};
}

Real gamma_complete(const Real& s, const Precision& prec) {
  prec.validate();
  require_positive_s(s, "gamma_complete");
  PrecisionGuard guard(prec.digits + kGuardDigits);
  Real g = boost::multiprecision::tgamma(promote(s, prec.digits + kGuardDigits));
  return promote(g, prec.digits);
}

Real gamma_upper(const Real& s, const Real& t, const Precision& prec) {
  prec.validate();
  require_positive_s(s, "gamma_upper");
  if (t < 0) throw Error(ErrorKind::invalid_parameter, "gamma_upper: t must be >= 0");
  Real result;
  {
    const int work = prec.digits + kGuardDigits;
    PrecisionGuard guard(work);
    const Real eps = pow10(-(work - 5));
    Real ss = promote(s, work);
    Real tt = promote(t, work);
    if (tt == 0) {
      result = boost::multiprecision::tgamma(ss);
    } else if (tt < ss + 1) {
      result = boost::multiprecision::tgamma(ss) - lower_gamma_series(ss, tt, eps);
    } else {
      result = upper_gamma_fraction(ss, tt, eps);
    }
  }
  return promote(result, prec.digits);
}

Real moment(int k, const JumpWeight& w, const Precision& prec) {
  if (k < 0) throw Error(ErrorKind::invalid_parameter, "moment: k must be >= 0");
  PrecisionGuard guard(prec.digits);
  const JumpWeight wp = w.promoted(prec.digits);
  const Real s = wp.alpha + k + 1;
  Real mu = 0;
  if (wp.A != 0) mu += wp.A * gamma_complete(s, prec);
  if (wp.B != 0) mu += wp.B * gamma_upper(s, wp.t, prec);
  return promote(mu, prec.digits);
}

MomentTable moment_table(const JumpWeight& w, int k_max, const Precision& prec) {
  if (k_max < 0) throw Error(ErrorKind::invalid_parameter, "moment_table: k_max must be >= 0");
  prec.validate();
  w.validate();
  MomentTable table{w.promoted(prec.digits), k_max, {}, prec};
  table.mu.reserve(k_max + 1);
  std::vector<Real> complete;
  std::vector<Real> upper;
  {
    PrecisionGuard guard(prec.digits + kGuardDigits);
    const JumpWeight wide = w.promoted(prec.digits + kGuardDigits);
    Real s = wide.alpha + 1;
    Real g = gamma_complete(s, prec.with_digits(prec.digits + kGuardDigits));
    Real gu = w.B != 0 ? gamma_upper(s, wide.t, prec.with_digits(prec.digits + kGuardDigits)) : Real(0);
    // t^s e^{-t} is advanced by a factor t per step.
    Real boundary = w.t > 0 ? Real(exp(s * log(wide.t) - wide.t)) : Real(0);
    for (int k = 0; k <= k_max; ++k) {
      complete.push_back(g);
      upper.push_back(gu);
      gu = s * gu + boundary;
      g = s * g;
      boundary *= wide.t;
      s += 1;
    }
  }
  PrecisionGuard guard(prec.digits);
  for (int k = 0; k <= k_max; ++k) {
    table.mu.push_back(promote(table.weight.A * complete[k] + table.weight.B * upper[k],
                               prec.digits));
  }
  return table;
}

}  // namespace lue
