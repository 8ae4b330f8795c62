#include "lue/serialize.hpp"

#include <json.hpp>

namespace lue {
namespace {

using Json = nlohmann::ordered_json;

std::string dec(const Real& x, int digits) { return to_decimal(x, digits); }

Json array_of(const std::vector<Real>& xs, int digits) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(dec(x, digits));
  return out;
}

Json weight_json(const JumpWeight& w, int digits) {
  Json j;
  j["alpha"] = dec(w.alpha, digits);
  j["A"] = dec(w.A, digits);
  j["B"] = dec(w.B, digits);
  j["t"] = dec(w.t, digits);
  if (w.origin) {
    j["lambda"] = dec(w.origin->lambda, digits);
    j["beta"] = dec(w.origin->beta, digits);
  }
  return j;
}

Json precision_json(const Precision& p) {
  return Json{{"digits", p.digits}, {"target_digits", p.target_digits}};
}

Json table_json(const TextTable& table) {
  Json rows = Json::array();
  for (const auto& row : table.rows) {
    Json obj = Json::object();
    for (std::size_t i = 0; i < table.header.size() && i < row.size(); ++i) {
      obj[table.header[i]] = row[i];
    }
    rows.push_back(std::move(obj));
  }
  return rows;
}

}  // namespace

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string to_csv(const TextTable& table) {
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += csv_field(cells[i]);
    }
    out += '\n';
  };
  line(table.header);
  for (const auto& row : table.rows) line(row);
  return out;
}

std::string weight_to_json(const JumpWeight& w, int digits) {
  return weight_json(w, digits).dump(2);
}

std::string ortho_to_json(const OrthoTable& table, int digits) {
  Json j;
  j["weight"] = weight_json(table.weight, digits);
  j["n_max"] = table.n_max;
  j["precision"] = precision_json(table.precision);
  j["h"] = array_of(table.h, digits);
  j["alpha"] = array_of(table.alpha, digits);
  j["beta"] = array_of(table.beta, digits);
  j["p1"] = array_of(table.p1, digits);
  j["P_at_t"] = array_of(table.P_at_t, digits);
  Json coeffs = Json::array();
  for (const auto& c : table.coeffs) coeffs.push_back(array_of(c, digits));
  j["coeffs"] = std::move(coeffs);
  return j.dump(2);
}

TextTable aux_rows(const AuxTable& aux, int digits) {
  TextTable table{{"n", "R", "r", "S", "H"}, {}};
  for (int n = 0; n <= aux.n_max; ++n) {
    table.rows.push_back({std::to_string(n), dec(aux.R[n], digits), dec(aux.r[n], digits),
                          dec(aux.S[n], digits), dec(aux.H[n], digits)});
  }
  return table;
}

std::string aux_to_json(const AuxTable& aux, int digits) {
  Json j;
  j["weight"] = weight_json(aux.weight, digits);
  j["n_max"] = aux.n_max;
  j["precision"] = precision_json(aux.precision);
  j["rows"] = table_json(aux_rows(aux, digits));
  return j.dump(2);
}

TextTable report_rows(const ResidualReport& report, int digits) {
  TextTable table{{"id", "n", "t", "z", "residual", "tolerance", "status", "note"}, {}};
  for (const auto& r : report.records) {
    table.rows.push_back({r.id, std::to_string(r.n), dec(r.t, digits),
                          r.z ? dec(*r.z, digits) : std::string(),
                          dec(r.residual, kResidualDigits), dec(r.tolerance, kResidualDigits),
                          to_string(r.status), r.note});
  }
  return table;
}

std::string report_to_json(const ResidualReport& report, int digits,
                           std::string_view config_json) {
  Json j;
  j["config"] = Json::parse(config_json);
  j["weight"] = weight_json(report.weight, digits);
  j["precision"] = precision_json(report.precision);
  j["digits_used"] = report.digits_used;
  j["grid"] = report.grid;
  Json records = Json::array();
  for (const auto& r : report.records) {
    Json rec;
    rec["id"] = r.id;
    rec["n"] = r.n;
    rec["t"] = dec(r.t, digits);
    rec["z"] = r.z ? Json(dec(*r.z, digits)) : Json(nullptr);
    rec["residual"] = dec(r.residual, kResidualDigits);
    rec["tolerance"] = dec(r.tolerance, kResidualDigits);
    rec["status"] = to_string(r.status);
    rec["note"] = r.note;
    records.push_back(std::move(rec));
  }
  j["records"] = std::move(records);
  const auto& s = report.summary;
  j["summary"] = Json{{"total", s.total},     {"passed", s.passed},   {"failed", s.failed},
                      {"skipped", s.skipped}, {"flagged", s.flagged}, {"errors", s.errors}};
  return j.dump(2);
}

TextTable trajectory_rows(const PVIntegration& run, int digits) {
  TextTable table{{"t", "S", "S_prime"}, {}};
  for (const auto& st : run.trajectory) {
    table.rows.push_back({dec(st.t, digits), dec(st.S, digits), dec(st.S_prime, digits)});
  }
  return table;
}

}  // namespace lue
