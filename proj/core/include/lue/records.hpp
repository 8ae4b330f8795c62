#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lue/moments.hpp"

namespace lue {

enum class RecordStatus {
  passed,
  failed,
  skipped_degenerate,
  /// Discrepancy with a displayed form that is reported but does not fail a run.
  flagged,
  /// Configuration or build failure for this grid point.
  error,
};

const char* to_string(RecordStatus status);

struct ResidualRecord {
  std::string id;
  int n = 0;
  Real t;
  std::optional<Real> z;
  Real residual;
  Real tolerance;
  RecordStatus status = RecordStatus::passed;
  std::string note;
};

/// Status is passed iff residual < tolerance, failed otherwise.
ResidualRecord judged(std::string id, int n, const Real& t, const Real& residual,
                      const Real& tolerance, std::optional<Real> z = std::nullopt);
ResidualRecord skipped(std::string id, int n, const Real& t, std::string why,
                       const Real& residual = Real(0));
ResidualRecord errored(std::string id, int n, const Real& t, std::string why);
/// Note reads "<kind>: <message>", e.g. "precision-ceiling: ...".
ResidualRecord errored(std::string id, int n, const Real& t, const Error& err);
/// Like judged(), but a miss is reported as flagged instead of failed.
ResidualRecord flagged_if_off(std::string id, int n, const Real& t, const Real& residual,
                              const Real& tolerance, std::string note);

struct ReportSummary {
  int total = 0;
  int passed = 0;
  int failed = 0;
  int skipped = 0;
  int flagged = 0;
  int errors = 0;
};

struct ResidualReport {
  JumpWeight weight;
  Precision precision;
  int digits_used = 0;
  std::string grid;
  std::vector<ResidualRecord> records;
  ReportSummary summary;

  /// Sorts records by (id, n, t, z) and recomputes the summary.
  void finalize();
  void append(const ResidualReport& other);
  bool all_passed() const { return summary.failed == 0 && summary.errors == 0; }
};

}  // namespace lue
