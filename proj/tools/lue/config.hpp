#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lue/moments.hpp"

namespace lue::cli {

enum class Format { json, csv };
enum class Suite { algebraic, differential, oracle, all };

/// Raw settings keyed by name, exactly as read from the config file and the
/// command line. Kept sorted so the echo in reports is stable.
using RawConfig = std::map<std::string, std::string>;

/// Keys understood in config files and as --<key> flags.
const std::vector<std::string>& config_keys();

struct RunConfig {
  RawConfig raw;
  /// Weight at the first grid point.
  JumpWeight weight;
  int n_max = 12;
  std::vector<Real> t_grid;
  /// Human-readable grid description.
  std::string grid;
  Precision precision;
  std::optional<Real> tolerance;
  Format format = Format::json;
  /// Empty: no report file; "-": standard output.
  std::string output;
  Suite suite = Suite::all;
};

/// key=value lines ('#' starts a comment) or a JSON object.
RawConfig parse_config_text(const std::string& text);
RawConfig load_config_file(const std::string& path);

/// Later keys win.
RawConfig merged(RawConfig base, const RawConfig& overrides);

/// Validates and converts. Throws Error(configuration) on bad input.
RunConfig resolve(const RawConfig& raw);

/// The raw settings as a JSON object of strings.
std::string config_json(const RawConfig& raw);

}  // namespace lue::cli
