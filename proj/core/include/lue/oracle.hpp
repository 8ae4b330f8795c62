#pragma once

#include <vector>

#include "lue/orthopoly.hpp"
#include "lue/records.hpp"

namespace lue {

/// Layout of a piecewise rule for int_0^inf x^gamma e^{-x} w_J(x) f(x) dx with
/// f a polynomial of bounded degree.
///
/// [0, split_at] carries one Gauss-Jacobi panel for the x^gamma endpoint
/// behaviour (omitted when A = 0 and t > 0, where the jump factor vanishes);
/// [split_at, tail_cutoff] carries Gauss-Legendre panels whose widths grow
/// geometrically from split_at and are capped at max_width.
struct QuadratureSpec {
  Real gamma;
  int max_degree = 0;
  int accuracy_digits = 0;
  int jacobi_nodes = 0;
  int panels = 0;
  int nodes_per_panel = 0;
  Real split_at;
  Real tail_cutoff;
  Real max_width;
  /// Bound on the discarded int_X^inf x^{gamma+deg} e^{-x} (A+B) dx.
  Real remainder_bound;
};

struct QuadratureRule {
  std::vector<Real> nodes;
  /// Include x^gamma e^{-x} w_J(x).
  std::vector<Real> weights;
  std::size_t size() const { return nodes.size(); }
};

QuadratureSpec make_quadrature_spec(const JumpWeight& w, const Real& gamma, int max_degree,
                                    int accuracy_digits, const Precision& prec);
QuadratureRule build_rule(const JumpWeight& w, const QuadratureSpec& spec, const Precision& prec);

/// Gauss-Legendre nodes and weights on [-1, 1].
QuadratureRule gauss_legendre(int nodes, const Precision& prec);
/// Gauss-Jacobi rule for the weight (1+s)^b on [-1, 1].
QuadratureRule gauss_jacobi(int nodes, const Real& b, const Precision& prec);

/// D_n[w] = (1/n!) int prod_{j<k} (x_k - x_j)^2 prod w(x_l) dx, n in {1, 2, 3},
/// summed over strictly ordered node tuples of a tensor rule.
Real direct_hankel(const JumpWeight& w, int n, const QuadratureSpec& spec, const Precision& prec);
Real direct_hankel(const JumpWeight& w, int n, const Precision& prec, int accuracy_digits = 12);

/// Cap on integrand evaluations for direct_hankel.
inline constexpr double kDirectHankelBudget = 1e7;

/// int f g w dx for polynomials given by ascending coefficients.
Real quad_inner_product(const JumpWeight& w, const std::vector<Real>& f,
                        const std::vector<Real>& g, const QuadratureSpec& spec,
                        const Precision& prec);
Real quad_inner_product(const JumpWeight& w, const std::vector<Real>& f,
                        const std::vector<Real>& g, const Precision& prec);

/// det(mu_{i+j})_{i,j<n} by Gaussian elimination with partial pivoting.
Real moment_determinant(const JumpWeight& w, int n, const Precision& prec);

/// Integration-by-parts identities behind the ladder residues:
///   alpha int y^{alpha-1} e^{-y} w_J P_n^2 = h_n - B w0(t) P_n(t)^2
///   alpha int y^{alpha-1} e^{-y} w_J P_n P_{n-1} = -n h_{n-1} - B w0(t) P_n(t) P_{n-1}(t)
/// Records IBP1 and (for n >= 1) IBP2; skipped when alpha = 0.
std::vector<ResidualRecord> ibp_check(const JumpWeight& w, const OrthoTable& ortho, int n,
                                      const Precision& prec);
std::vector<ResidualRecord> ibp_check(const JumpWeight& w, const OrthoTable& ortho, int n,
                                      const QuadratureRule& rule, const Precision& prec);

/// Brute-force cross-checks over a t grid: direct_hankel and the moment
/// determinant against prod h_j, and orthogonality by quadrature.
ResidualReport oracle_suite(const JumpWeight& w, int n_max, const std::vector<Real>& t_grid,
                            const Precision& prec);

}  // namespace lue
