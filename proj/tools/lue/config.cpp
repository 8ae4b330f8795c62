#include "config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace lue::cli {
namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorKind::configuration, msg); }

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

const std::string& value_or(const RawConfig& raw, const std::string& key,
                            const std::string& fallback) {
  auto it = raw.find(key);
  return it == raw.end() ? fallback : it->second;
}

int parse_int(const RawConfig& raw, const std::string& key, int fallback) {
  auto it = raw.find(key);
  if (it == raw.end()) return fallback;
  try {
    std::size_t used = 0;
    int v = std::stoi(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    bad(key + ": expected an integer, got '" + it->second + "'");
  }
}

Real parse_number(const std::string& key, const std::string& text) {
  try {
    return parse_real(text);
  } catch (const Error&) {
    bad(key + ": cannot parse number '" + text + "'");
  }
}

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string out;
    for (const auto& item : v) {
      if (!out.empty()) out += ',';
      out += scalar_text(item);
    }
    return out;
  }
  return v.dump();
}

std::vector<Real> make_grid(const RawConfig& raw, std::string& description) {
  const bool has_list = raw.count("t") > 0;
  const bool has_range = raw.count("t_min") || raw.count("t_max") || raw.count("t_count");
  if (has_list && has_range) bad("t and t_min/t_max/t_count are mutually exclusive");
  std::vector<Real> grid;
  if (has_list) {
    const std::string& text = raw.at("t");
    for (const auto& item : split_list(text)) grid.push_back(parse_number("t", item));
    description = "list: " + text;
  } else if (has_range) {
    if (!raw.count("t_min") || !raw.count("t_max") || !raw.count("t_count")) {
      bad("a t range needs t_min, t_max and t_count");
    }
    Real lo = parse_number("t_min", raw.at("t_min"));
    Real hi = parse_number("t_max", raw.at("t_max"));
    int count = parse_int(raw, "t_count", 0);
    const std::string spacing = value_or(raw, "spacing", "linear");
    if (count < 1) bad("t_count must be >= 1");
    if (hi < lo) bad("t_max must be >= t_min");
    if (spacing == "linear") {
      for (int i = 0; i < count; ++i) {
        grid.push_back(count == 1 ? lo : Real(lo + (hi - lo) * i / (count - 1)));
      }
    } else if (spacing == "log") {
      if (!(lo > 0)) bad("log spacing needs t_min > 0");
      Real llo = log(lo);
      Real lhi = log(hi);
      for (int i = 0; i < count; ++i) {
        grid.push_back(count == 1 ? lo : Real(exp(llo + (lhi - llo) * i / (count - 1))));
      }
    } else {
      bad("spacing must be linear or log");
    }
    description = spacing + ": " + raw.at("t_min") + ".." + raw.at("t_max") + " x" +
                  raw.at("t_count");
  } else {
    for (const char* v : {"0.5", "1", "2", "5", "10"}) grid.push_back(parse_real(v));
    description = "list: 0.5,1,2,5,10";
  }
  if (grid.empty()) bad("t grid is empty");
  for (const auto& t : grid) {
    if (t < 0) bad("t values must be >= 0");
  }
  return grid;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "alpha", "A",       "B",     "lambda",   "beta",   "n_max",  "t",
      "t_min", "t_max",   "t_count", "spacing", "digits", "target_digits",
      "tolerance", "format", "output", "suite"};
  return keys;
}

RawConfig parse_config_text(const std::string& text) {
  RawConfig raw;
  const std::string body = trim(text);
  if (!body.empty() && body.front() == '{') {
    Json j;
    try {
      j = Json::parse(body);
    } catch (const std::exception& e) {
      bad(std::string("config: invalid JSON: ") + e.what());
    }
    for (auto it = j.begin(); it != j.end(); ++it) raw[it.key()] = scalar_text(it.value());
  } else {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      auto eq = line.find('=');
      if (eq == std::string::npos) {
        bad("config line " + std::to_string(lineno) + ": expected key=value");
      }
      raw[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
  }
  const auto& keys = config_keys();
  for (const auto& [k, v] : raw) {
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) bad("unknown config key '" + k + "'");
  }
  return raw;
}

RawConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

RawConfig merged(RawConfig base, const RawConfig& overrides) {
  for (const auto& [k, v] : overrides) base[k] = v;
  return base;
}

RunConfig resolve(const RawConfig& raw) {
  RunConfig cfg;
  cfg.raw = raw;
  cfg.precision.digits = parse_int(raw, "digits", 100);
  cfg.precision.target_digits = parse_int(raw, "target_digits", 50);
  try {
    cfg.precision.validate();
  } catch (const Error& e) {
    bad(e.what());
  }
  PrecisionGuard guard(cfg.precision.digits);

  cfg.n_max = parse_int(raw, "n_max", 12);
  if (cfg.n_max < 0) bad("n_max must be >= 0");
  cfg.t_grid = make_grid(raw, cfg.grid);

  const Real alpha = parse_number("alpha", value_or(raw, "alpha", "0.5"));
  const bool lambda_form = raw.count("lambda") || raw.count("beta");
  try {
    if (lambda_form) {
      if (raw.count("A") || raw.count("B")) bad("give either A, B or lambda, beta, not both");
      if (!raw.count("lambda") || !raw.count("beta")) bad("lambda and beta go together");
      cfg.weight = JumpWeight::from_lambda_beta(alpha, parse_number("lambda", raw.at("lambda")),
                                                parse_number("beta", raw.at("beta")),
                                                cfg.t_grid.front());
    } else {
      cfg.weight = JumpWeight::make(alpha, parse_number("A", value_or(raw, "A", "1")),
                                    parse_number("B", value_or(raw, "B", "1")),
                                    cfg.t_grid.front());
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::configuration) throw;
    bad(e.what());
  }

  if (raw.count("tolerance")) {
    Real tol = parse_number("tolerance", raw.at("tolerance"));
    if (!(tol > 0)) bad("tolerance must be > 0");
    cfg.tolerance = tol;
  }

  const std::string format = value_or(raw, "format", "json");
  if (format == "json") {
    cfg.format = Format::json;
  } else if (format == "csv") {
    cfg.format = Format::csv;
  } else {
    bad("format must be json or csv");
  }
  cfg.output = value_or(raw, "output", "");

  static const std::map<std::string, Suite> suites{{"algebraic", Suite::algebraic},
                                                   {"differential", Suite::differential},
                                                   {"oracle", Suite::oracle},
                                                   {"all", Suite::all}};
  auto it = suites.find(value_or(raw, "suite", "all"));
  if (it == suites.end()) bad("suite must be algebraic, differential, oracle or all");
  cfg.suite = it->second;
  return cfg;
}

std::string config_json(const RawConfig& raw) {
  Json j = Json::object();
  for (const auto& [k, v] : raw) j[k] = v;
  return j.dump();
}

}  // namespace lue::cli
