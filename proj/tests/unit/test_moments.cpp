#include "lue/moments.hpp"

#include "frozen.hpp"
#include "reference.hpp"
#include "testing.hpp"

using namespace lue;
using lue::testing::close;
using lue::testing::real;
using lue::testing::Ref;
using lue::testing::rel_close;

namespace {

const Precision kPrec{100, 50};

class Moments : public ::testing::Test {
 protected:
  PrecisionGuard guard_{kPrec.digits};
};

}  // namespace

TEST_F(Moments, GammaUpperAtZeroIsComplete) {
  EXPECT_TRUE(close(gamma_upper(Real(1), Real(0), kPrec), Real(1), kPrec.tolerance()));
  EXPECT_TRUE(close(gamma_upper(Real(2.5), Real(0), kPrec), gamma_complete(Real(2.5), kPrec),
                    kPrec.tolerance()));
}

TEST_F(Moments, GammaUpperOfOneIsExponential) {
  for (int t : {1, 3, 40}) {
    EXPECT_TRUE(rel_close(gamma_upper(Real(1), Real(t), kPrec), exp(Real(-t)), kPrec.tolerance()))
        << "t = " << t;
  }
}

TEST_F(Moments, GammaValuesMatchQuadratureReference) {
  const Real tol = pow10(-40);
  EXPECT_TRUE(rel_close(gamma_complete(real("1.5"), kPrec), real(frozen::gamma_values[0]), tol));
  EXPECT_TRUE(rel_close(gamma_upper(real("2.5"), real("1.3"), kPrec),
                        real(frozen::gamma_values[1]), tol));
  EXPECT_TRUE(rel_close(gamma_upper(real("7.25"), real("3.5"), kPrec),
                        real(frozen::gamma_values[2]), tol));
  EXPECT_TRUE(rel_close(gamma_upper(real("0.75"), real("12"), kPrec),
                        real(frozen::gamma_values[3]), tol));
}

TEST_F(Moments, GammaUpperMatchesBoostMath) {
  // Covers both sides of the series / continued fraction split at t = s + 1.
  const std::pair<const char*, const char*> cases[] = {
      {"0.5", "0.1"}, {"3.5", "2"}, {"3.5", "4.5"}, {"12.25", "30"}, {"1.5", "0.001"}};
  for (const auto& [s, t] : cases) {
    Ref expected = lue::testing::ref_gamma_upper(Ref(s), Ref(t));
    EXPECT_TRUE(rel_close(gamma_upper(real(s), real(t), kPrec),
                          lue::testing::to_real(expected), pow10(-90)))
        << "s = " << s << ", t = " << t;
  }
}

TEST_F(Moments, GammaCompleteFactorials) {
  EXPECT_TRUE(close(gamma_complete(Real(1), kPrec), Real(1), kPrec.tolerance()));
  EXPECT_TRUE(close(gamma_complete(Real(5), kPrec), Real(24), kPrec.tolerance()));
}

TEST_F(Moments, GammaRejectsNonPositiveOrder) {
  for (const char* s : {"0", "-1.5"}) {
    try {
      gamma_upper(real(s), Real(1), kPrec);
      FAIL() << "no error for s = " << s;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::invalid_parameter);
    }
    EXPECT_THROW(gamma_complete(real(s), kPrec), Error);
  }
  EXPECT_THROW(gamma_upper(Real(1), Real(-1), kPrec), Error);
}

TEST_F(Moments, UpperGammaRecurrence) {
  for (const char* s : {"0.25", "1", "3.5", "9.75"}) {
    for (const char* t : {"0.2", "1", "4", "15"}) {
      Real S = real(s);
      Real T = real(t);
      Real lhs = gamma_upper(S + 1, T, kPrec);
      Real rhs = S * gamma_upper(S, T, kPrec) + exp(S * log(T) - T);
      EXPECT_LT(abs(lhs - rhs) / abs(lhs), kPrec.tolerance()) << "s = " << s << ", t = " << t;
    }
  }
}

TEST_F(Moments, LambdaBetaConversion) {
  JumpHeights a = from_lambda_beta(Real(0), real("0.7"));
  EXPECT_TRUE(close(a.A, Real(1), kPrec.tolerance()));
  EXPECT_TRUE(close(a.B, Real(0), kPrec.tolerance()));
  JumpHeights b = from_lambda_beta(Real(1), Real(1));
  EXPECT_TRUE(close(b.A, real("0.5"), kPrec.tolerance()));
  EXPECT_TRUE(close(b.B, Real(1), kPrec.tolerance()));
  JumpHeights c = from_lambda_beta(Real(2), Real(1));
  EXPECT_TRUE(close(c.A, real("0.25"), kPrec.tolerance()));
  EXPECT_TRUE(close(c.B, Real(2), kPrec.tolerance()));
  EXPECT_THROW(from_lambda_beta(Real(1), Real(2)), Error);
  EXPECT_THROW(from_lambda_beta(Real(1), real("-2.5")), Error);
}

TEST_F(Moments, WeightAdmissibility) {
  EXPECT_THROW(JumpWeight::make(Real(1), Real(-1), Real(2), Real(1)), Error);
  EXPECT_THROW(JumpWeight::make(Real(1), Real(1), Real(-1), Real(1)), Error);
  EXPECT_THROW(JumpWeight::make(Real(-1), Real(1), Real(1), Real(1)), Error);
  EXPECT_THROW(JumpWeight::make(Real(0), Real(1), Real(1), Real(1)), Error);
  EXPECT_THROW(JumpWeight::make(Real(1), Real(1), Real(1), Real(-1)), Error);
  EXPECT_NO_THROW(JumpWeight::make(Real(0), Real(0), Real(1), Real(0)));
}

TEST_F(Moments, MomentWithoutJumpIsScaledGamma) {
  auto w = JumpWeight::make(real("1.25"), real("0.75"), Real(0), Real(3));
  for (int k = 0; k < 5; ++k) {
    EXPECT_TRUE(rel_close(moment(k, w, kPrec),
                          real("0.75") * gamma_complete(real("2.25") + k, kPrec),
                          kPrec.tolerance()));
  }
}

TEST_F(Moments, ZerothMomentOfShiftedExponential) {
  auto w = JumpWeight::make(Real(0), Real(0), Real(1), Real(1));
  EXPECT_TRUE(rel_close(moment(0, w, kPrec), exp(Real(-1)), kPrec.tolerance()));
}

TEST_F(Moments, ZerothMomentOfLambdaBetaWeight) {
  auto w = JumpWeight::from_lambda_beta(real("0.5"), real("1.5"), real("0.8"), real("1.2"));
  EXPECT_TRUE(rel_close(moment(0, w, kPrec), real(frozen::lambda_beta_h0[0]), pow10(-40)));
}

TEST_F(Moments, MomentsMatchQuadratureReference) {
  auto generic = JumpWeight::make(real("0.5"), Real(1), Real(1), Real(2));
  auto skewed = JumpWeight::make(real("2.5"), real("0.5"), real("1.5"), Real(5));
  MomentTable a = moment_table(generic, 6, kPrec);
  MomentTable b = moment_table(skewed, 4, kPrec);
  for (int k = 0; k <= 6; ++k) {
    EXPECT_TRUE(rel_close(a.mu[k], real(frozen::generic_mu[k]), pow10(-40))) << "k = " << k;
  }
  for (int k = 0; k <= 4; ++k) {
    EXPECT_TRUE(rel_close(b.mu[k], real(frozen::skewed_mu[k]), pow10(-40))) << "k = " << k;
  }
}

TEST_F(Moments, TableSizes) {
  auto w = JumpWeight::make(real("0.5"), Real(1), Real(1), Real(2));
  MomentTable t0 = moment_table(w, 0, kPrec);
  ASSERT_EQ(t0.mu.size(), 1u);
  EXPECT_TRUE(rel_close(t0.mu[0], moment(0, w, kPrec), kPrec.tolerance()));
  EXPECT_THROW(moment_table(w, -1, kPrec), Error);
  EXPECT_THROW(moment(-1, w, kPrec), Error);
}

TEST_F(Moments, TableMatchesDirectEvaluation) {
  auto w = JumpWeight::make(real("1.75"), real("0.3"), real("2.2"), real("4.5"));
  MomentTable table = moment_table(w, 20, kPrec);
  for (int k = 0; k <= 20; ++k) {
    EXPECT_TRUE(rel_close(table.mu[k], moment(k, w, kPrec), kPrec.tolerance())) << "k = " << k;
  }
}

TEST_F(Moments, TableWithoutJumpIsFactorials) {
  // alpha = 0 needs A = 0, so the factorial case goes through t = 0 instead.
  auto w0 = JumpWeight::make(Real(0), Real(0), real("2.5"), Real(0));
  MomentTable table = moment_table(w0, 10, kPrec);
  Real fact = 1;
  for (int k = 0; k <= 10; ++k) {
    if (k > 0) fact *= k;
    EXPECT_TRUE(rel_close(table.mu[k], real("2.5") * fact, kPrec.tolerance())) << "k = " << k;
  }
}

TEST_F(Moments, MomentsDecreaseInJumpPosition) {
  auto w = JumpWeight::make(real("0.5"), Real(0), Real(1), Real(0));
  const char* grid[] = {"0", "0.25", "1", "2.5", "6", "13"};
  for (int k : {0, 1, 4, 9}) {
    Real prev = moment(k, w.at(real(grid[0])), kPrec);
    for (std::size_t i = 1; i < std::size(grid); ++i) {
      Real cur = moment(k, w.at(real(grid[i])), kPrec);
      EXPECT_GT(prev, cur) << "k = " << k << ", t = " << grid[i];
      prev = cur;
    }
  }
}

TEST_F(Moments, DoublingPrecisionKeepsTargetDigits) {
  auto w = JumpWeight::make(real("2.5"), real("0.5"), real("1.5"), Real(5));
  MomentTable lo = moment_table(w, 12, kPrec);
  MomentTable hi = moment_table(w, 12, kPrec.doubled());
  PrecisionGuard wide(kPrec.doubled().digits);
  for (int k = 0; k <= 12; ++k) {
    EXPECT_LT(abs(promote(lo.mu[k], 200) - hi.mu[k]) / hi.mu[k], kPrec.tolerance()) << k;
  }
}

TEST_F(Moments, LowPrecisionInputsArePromoted) {
  // Parameters created at 40 digits must not cap a 100-digit computation.
  Real s;
  Real t;
  {
    PrecisionGuard narrow(40);
    s = real("3.5");
    t = real("7");
  }
  Real wide = gamma_upper(s, t, kPrec);
  Ref expected = lue::testing::ref_gamma_upper(Ref("3.5"), Ref("7"));
  EXPECT_TRUE(rel_close(wide, lue::testing::to_real(expected), pow10(-90)));
}

TEST_F(Moments, PrecisionValidation) {
  EXPECT_THROW((Precision{20, 5}.validate()), Error);
  EXPECT_THROW((Precision{60, 45}.validate()), Error);
  EXPECT_NO_THROW((Precision{60, 30}.validate()));
}
