#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lue/auxiliary.hpp"
#include "lue/dynamics.hpp"
#include "lue/records.hpp"

namespace lue {

// Every number is written as a decimal string. Table values carry `digits`
// significant digits; residuals and tolerances carry kResidualDigits.

inline constexpr int kResidualDigits = 6;

struct TextTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Quotes a field when it contains a comma, a double quote or a line break.
std::string csv_field(std::string_view text);
/// Header row plus one line per row, "\n" terminated.
std::string to_csv(const TextTable& table);

/// {alpha, A, B, t[, lambda, beta]}
std::string weight_to_json(const JumpWeight& w, int digits);

/// Per-degree h, alpha, beta, p1, P_n(t) and coefficient vectors.
std::string ortho_to_json(const OrthoTable& table, int digits);

/// Columns n, R, r, S, H for n = 0..n_max.
TextTable aux_rows(const AuxTable& aux, int digits);
std::string aux_to_json(const AuxTable& aux, int digits);

/// Columns id, n, t, z, residual, tolerance, status, note in record order.
TextTable report_rows(const ResidualReport& report, int digits);
/// {config, weight, precision, grid, records[], summary}; `config_json` must
/// be a JSON object and is embedded as given.
std::string report_to_json(const ResidualReport& report, int digits,
                           std::string_view config_json = "{}");

/// Columns t, S, S_prime of an integrated trajectory.
TextTable trajectory_rows(const PVIntegration& run, int digits);

}  // namespace lue
