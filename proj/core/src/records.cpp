#include "lue/records.hpp"

#include <algorithm>
#include <tuple>

namespace lue {

const char* to_string(RecordStatus status) {
  switch (status) {
    case RecordStatus::passed: return "passed";
    case RecordStatus::failed: return "failed";
    case RecordStatus::skipped_degenerate: return "skipped-degenerate";
    case RecordStatus::flagged: return "flagged";
    case RecordStatus::error: return "error";
  }
  return "unknown";
}

ResidualRecord judged(std::string id, int n, const Real& t, const Real& residual,
                      const Real& tolerance, std::optional<Real> z) {
  ResidualRecord rec{std::move(id), n, t, std::move(z), residual, tolerance,
                     RecordStatus::passed, {}};
  if (!(residual < tolerance)) rec.status = RecordStatus::failed;
  return rec;
}

ResidualRecord skipped(std::string id, int n, const Real& t, std::string why,
                       const Real& residual) {
  return ResidualRecord{std::move(id), n, t, std::nullopt, residual, Real(0),
                        RecordStatus::skipped_degenerate, std::move(why)};
}

ResidualRecord errored(std::string id, int n, const Real& t, std::string why) {
  return ResidualRecord{std::move(id), n, t, std::nullopt, Real(0), Real(0),
                        RecordStatus::error, std::move(why)};
}

ResidualRecord errored(std::string id, int n, const Real& t, const Error& err) {
  return errored(std::move(id), n, t, std::string(to_string(err.kind())) + ": " + err.what());
}

ResidualRecord flagged_if_off(std::string id, int n, const Real& t, const Real& residual,
                              const Real& tolerance, std::string note) {
  ResidualRecord rec = judged(std::move(id), n, t, residual, tolerance);
  if (rec.status == RecordStatus::failed) {
    rec.status = RecordStatus::flagged;
    rec.note = std::move(note);
  }
  return rec;
}

void ResidualReport::finalize() {
  std::stable_sort(records.begin(), records.end(),
                   [](const ResidualRecord& a, const ResidualRecord& b) {
                     if (a.id != b.id) return a.id < b.id;
                     if (a.n != b.n) return a.n < b.n;
                     if (a.t != b.t) return a.t < b.t;
                     Real za = a.z.value_or(Real(0));
                     Real zb = b.z.value_or(Real(0));
                     return za < zb;
                   });
  summary = {};
  for (const auto& r : records) {
    ++summary.total;
    switch (r.status) {
      case RecordStatus::passed: ++summary.passed; break;
      case RecordStatus::failed: ++summary.failed; break;
      case RecordStatus::skipped_degenerate: ++summary.skipped; break;
      case RecordStatus::flagged: ++summary.flagged; break;
      case RecordStatus::error: ++summary.errors; break;
    }
  }
}

void ResidualReport::append(const ResidualReport& other) {
  records.insert(records.end(), other.records.begin(), other.records.end());
  digits_used = std::max(digits_used, other.digits_used);
  finalize();
}

}  // namespace lue
