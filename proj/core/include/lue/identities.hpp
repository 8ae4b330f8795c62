#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lue/auxiliary.hpp"
#include "lue/records.hpp"

namespace lue {

/// What an identity needs besides the tables at a fixed (n, t).
enum class Arity {
  n_t,
  /// Holds for every complex z; evaluated on a set of real samples.
  n_t_z,
  /// Left-hand side is an integral, evaluated by quadrature.
  quadrature,
};

struct IdentityEntry {
  std::string id;
  Arity arity = Arity::n_t;
  /// Smallest n for which every term is defined.
  int min_n = 0;
  /// Needs R_{n+1} (so n <= n_max - 1 of the tables).
  bool needs_next_R = false;
  /// Reported as flagged instead of failed on a miss.
  bool flag_only = false;
  /// The identity in plain notation.
  std::string anchor;
};

/// Immutable catalogue, ordered by id.
const std::vector<IdentityEntry>& identity_registry();
const IdentityEntry* find_identity(std::string_view id);

/// 10^-(target_digits - 10)
Real algebraic_tolerance(const Precision& prec);

/// {t/2, t+1, 2t+3}
std::vector<Real> default_z_samples(const Real& t);

/// Relative residual of one registry entry at (n, aux.weight.t).
///
/// z-dependent entries take the maximum over the samples that stay away from
/// the poles {0, t} and from zeros of the polynomials involved; when fewer
/// than three samples survive, extra points further out are added.
/// A denominator below 10^-(digits/2) yields a skipped-degenerate record.
/// Throws index_out_of_range for unknown ids or n outside the entry's range.
ResidualRecord check_identity(std::string_view id, const AuxTable& aux, const OrthoTable& ortho,
                              int n, const std::optional<std::vector<Real>>& z_samples,
                              const Precision& prec, std::optional<Real> tolerance = std::nullopt);

/// The d-P_III form (1/R_n - 1)(1/R_{n-1} - 1) = (r_n+n+alpha)(r_n+n)/r_n^2
/// together with its exact relation to the second difference equation:
/// the two sides exceed those of DIFF2 by exactly r_n^2.
/// Skipped-degenerate when r_n vanishes numerically.
ResidualRecord check_dp3_equivalence(const AuxTable& aux, int n, const Precision& prec,
                                     std::optional<Real> tolerance = std::nullopt);

/// Every registry entry for n = 0..n_max at each t of the grid.
///
/// A weight with B <= 0 yields a single configuration-error record; failures
/// at one grid point are recorded there and do not stop the run.
ResidualReport verify_suite(const JumpWeight& w, int n_max, const std::vector<Real>& t_grid,
                            const Precision& prec, std::optional<Real> tolerance = std::nullopt);

}  // namespace lue
