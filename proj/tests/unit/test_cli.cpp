#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "testing.hpp"

using namespace lue;
using namespace lue::cli;
using lue::testing::close;
using lue::testing::real;
using Json = nlohmann::json;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result lue_run(std::vector<std::string> args) {
  args.insert(args.begin(), "lue");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / ("lue_test_" + name);
  std::ofstream(path) << content;
  return path;
}

// Rows of a CSV body after the "# ..." preamble.
std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::istringstream cl(line);
    std::string cell;
    while (std::getline(cl, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST(Config, KeyValueText) {
  RawConfig raw = parse_config_text("# comment\nalpha = 1.5\n\nB=2  # trailing\n");
  EXPECT_EQ(raw.at("alpha"), "1.5");
  EXPECT_EQ(raw.at("B"), "2");
  EXPECT_EQ(raw.size(), 2u);
  EXPECT_THROW(parse_config_text("gamma = 1\n"), Error);
  EXPECT_THROW(parse_config_text("alpha\n"), Error);
}

TEST(Config, JsonText) {
  RawConfig raw = parse_config_text(R"({"alpha": 2.5, "t": "1,2", "n_max": 4})");
  EXPECT_EQ(real(raw.at("alpha")), real("2.5"));
  EXPECT_EQ(raw.at("t"), "1,2");
  EXPECT_EQ(raw.at("n_max"), "4");
  EXPECT_THROW(parse_config_text(R"({"nope": 1})"), Error);
  EXPECT_THROW(parse_config_text("{not json"), Error);
}

TEST(Config, MergeAndDefaults) {
  RawConfig a{{"alpha", "1"}, {"B", "2"}};
  RawConfig m = merged(a, {{"alpha", "3"}});
  EXPECT_EQ(m.at("alpha"), "3");
  EXPECT_EQ(m.at("B"), "2");

  RunConfig cfg = resolve({});
  PrecisionGuard guard(cfg.precision.digits);
  EXPECT_EQ(cfg.n_max, 12);
  EXPECT_EQ(cfg.precision.digits, 100);
  EXPECT_EQ(cfg.precision.target_digits, 50);
  ASSERT_EQ(cfg.t_grid.size(), 5u);
  EXPECT_EQ(cfg.t_grid.front(), real("0.5"));
  EXPECT_EQ(cfg.t_grid.back(), 10);
  EXPECT_EQ(cfg.weight.alpha, real("0.5"));
  EXPECT_FALSE(cfg.tolerance.has_value());
  EXPECT_EQ(cfg.format, Format::json);
  EXPECT_EQ(cfg.suite, Suite::all);
}

TEST(Config, Grids) {
  RunConfig lin = resolve({{"t_min", "1"}, {"t_max", "2"}, {"t_count", "5"}});
  PrecisionGuard guard(lin.precision.digits);
  ASSERT_EQ(lin.t_grid.size(), 5u);
  EXPECT_TRUE(close(lin.t_grid[1], real("1.25"), pow10(-40)));

  RunConfig lg = resolve({{"t_min", "0.1"}, {"t_max", "10"}, {"t_count", "3"}, {"spacing", "log"}});
  ASSERT_EQ(lg.t_grid.size(), 3u);
  EXPECT_TRUE(close(lg.t_grid[1], Real(1), pow10(-40)));
  EXPECT_TRUE(close(lg.t_grid[2], Real(10), pow10(-40)));

  EXPECT_THROW(resolve({{"t", ""}}), Error);
  EXPECT_THROW(resolve({{"t", "1"}, {"t_min", "1"}}), Error);
  EXPECT_THROW(resolve({{"t_min", "1"}, {"t_max", "2"}}), Error);
  EXPECT_THROW(resolve({{"t_min", "0"}, {"t_max", "2"}, {"t_count", "3"}, {"spacing", "log"}}),
               Error);
  EXPECT_THROW(resolve({{"t", "abc"}}), Error);
}

TEST(Config, JsonEcho) {
  Json j = Json::parse(config_json({{"alpha", "1.5"}, {"t", "1,2"}}));
  EXPECT_EQ(j["alpha"], "1.5");
  EXPECT_EQ(j["t"], "1,2");
}

TEST(Cli, HelpAndParseErrors) {
  EXPECT_EQ(lue_run({"--help"}).code, kPass);
  EXPECT_EQ(lue_run({}).code, kConfigError);
  EXPECT_EQ(lue_run({"compute", "--bogus", "1"}).code, kConfigError);
  EXPECT_EQ(lue_run({"frobnicate"}).code, kConfigError);
}

TEST(Cli, ConfigErrorsExitTwo) {
  Result empty = lue_run({"compute", "--t", ""});
  EXPECT_EQ(empty.code, kConfigError);
  EXPECT_NE(empty.err.find("configuration"), std::string::npos) << empty.err;
  EXPECT_EQ(lue_run({"compute", "--alpha", "-3"}).code, kConfigError);
  EXPECT_EQ(lue_run({"compute", "--config", "/nonexistent/lue.cfg"}).code, kConfigError);
  EXPECT_EQ(lue_run({"sweep", "--t", "1"}).code, kConfigError);
  EXPECT_EQ(lue_run({"verify", "--B", "0", "--n-max", "2", "--t", "1"}).code, kConfigError);
}

TEST(Cli, PrecisionCeilingExitsThree) {
  Result r = lue_run({"compute", "--n-max", "600", "--t", "1"});
  EXPECT_EQ(r.code, kPrecisionCeiling);
  EXPECT_NE(r.err.find("precision"), std::string::npos) << r.err;
  EXPECT_EQ(lue_run({"verify", "--n-max", "600", "--t", "1", "--suite", "algebraic"}).code,
            kPrecisionCeiling);
}

TEST(Cli, GapProbabilityOfShiftedExponential) {
  // alpha = 0: D_n of e^{-x} on [t, inf) is e^{-nt} D_n of e^{-x}.
  Result r = lue_run({"gap", "--alpha", "0", "--n-max", "3", "--t", "1", "--format", "csv",
                      "--target-digits", "30", "--digits", "80"});
  ASSERT_EQ(r.code, kPass) << r.err;
  auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0].back(), "G");
  PrecisionGuard guard(80);
  EXPECT_EQ(rows[1].back(), "1");
  for (int n = 1; n <= 3; ++n) {
    EXPECT_TRUE(close(real(rows[n + 1].back()), exp(Real(-n)), pow10(-28))) << n;
  }
}

TEST(Cli, ClassicalColumnsWithoutJump) {
  Result r = lue_run({"compute", "--B", "0", "--alpha", "1", "--n-max", "2", "--t", "2",
                      "--format", "csv"});
  ASSERT_EQ(r.code, kPass) << r.err;
  auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"n", "t", "alpha_n", "beta_n", "h_n", "R_n", "r_n",
                                               "S_n", "H_n", "G"}));
  PrecisionGuard guard(100);
  // alpha_n = 2n + 2 and beta_n = n(n + 1) for alpha = 1.
  EXPECT_TRUE(close(real(rows[3][2]), Real(6), pow10(-45)));
  EXPECT_TRUE(close(real(rows[3][3]), Real(6), pow10(-45)));
  for (int c = 5; c <= 8; ++c) EXPECT_EQ(rows[3][c], "") << c;
  EXPECT_TRUE(close(real(rows[3][9]), Real(1), pow10(-45)));
}

TEST(Cli, ComputeJsonAndFileOutput) {
  auto path = std::filesystem::temp_directory_path() / "lue_test_compute.json";
  std::filesystem::remove(path);
  Result r = lue_run({"compute", "--n-max", "1", "--t", "1,2", "--output", path.string()});
  ASSERT_EQ(r.code, kPass) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  Json j = Json::parse(in);
  EXPECT_EQ(j["rows"].size(), 4u);
  EXPECT_EQ(j["config"]["t"], "1,2");
  EXPECT_GE(j["digits_used"].get<int>(), 100);
  std::filesystem::remove(path);
}

TEST(Cli, ConfigFileAndFlagOverride) {
  auto kv = temp_file("kv.cfg", "alpha = 2\nn_max = 1\nt = 3\nformat = csv\n");
  auto js = temp_file("cfg.json", R"({"alpha": "2", "n_max": 1, "t": "3", "format": "csv"})");
  Result a = lue_run({"compute", "--config", kv.string()});
  Result b = lue_run({"compute", "--config", js.string()});
  ASSERT_EQ(a.code, kPass) << a.err;
  ASSERT_EQ(b.code, kPass) << b.err;
  EXPECT_EQ(csv_rows(a.out), csv_rows(b.out));

  Result c = lue_run({"compute", "--config", kv.string(), "--alpha", "0.5"});
  ASSERT_EQ(c.code, kPass);
  EXPECT_NE(c.out.find("\"alpha\":\"0.5\""), std::string::npos) << c.out.substr(0, 200);
  EXPECT_NE(csv_rows(a.out), csv_rows(c.out));
  std::filesystem::remove(kv);
  std::filesystem::remove(js);
}

TEST(Cli, ComputeIsDeterministic) {
  std::vector<std::string> args{"compute", "--n-max", "4", "--t", "0.5,5", "--format", "csv"};
  Result a = lue_run(args);
  Result b = lue_run(args);
  ASSERT_EQ(a.code, kPass);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, VerifyDefaultConfigPasses) {
  Result r = lue_run({"verify"});
  EXPECT_EQ(r.code, kPass) << r.out << r.err;
  EXPECT_NE(r.out.find("failed 0"), std::string::npos) << r.out;
}

TEST(Cli, VerifyReportToStdout) {
  Result r = lue_run({"verify", "--n-max", "3", "--t", "1", "--suite", "algebraic", "--output",
                      "-"});
  ASSERT_EQ(r.code, kPass) << r.err;
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["summary"]["failed"], 0);
  EXPECT_GT(j["records"].size(), 50u);
  EXPECT_NE(r.err.find("records"), std::string::npos);
}

TEST(Cli, TightToleranceFails) {
  Result r = lue_run({"verify", "--n-max", "2", "--t", "1", "--suite", "differential",
                      "--tolerance", "1e-95", "--output", "-", "--format", "csv"});
  EXPECT_EQ(r.code, kVerificationFailure);
  EXPECT_NE(r.out.find("fd-limited"), std::string::npos);
}

TEST(Cli, OracleCommand) {
  Result r = lue_run({"oracle", "--n-max", "2", "--t", "1", "--output", "-"});
  ASSERT_EQ(r.code, kPass) << r.err;
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["config"]["suite"], "oracle");
  for (const auto& rec : j["records"]) EXPECT_EQ(rec["status"], "passed") << rec;
}

TEST(Cli, SweepOnShiftedExponential) {
  Result r = lue_run({"sweep", "--alpha", "0", "--A", "0", "--n-max", "2", "--t-min", "0.5",
                      "--t-max", "8", "--t-count", "5", "--spacing", "log", "--format", "csv"});
  ASSERT_EQ(r.code, kPass) << r.err;
  auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 1u + 3 * 5);
  EXPECT_EQ(rows[0][0], "n");
  PrecisionGuard guard(100);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const int n = std::stoi(rows[i][0]);
    EXPECT_EQ(n, static_cast<int>((i - 1) / 5)) << "rows are grouped by n";
    const Real t = real(rows[i][1]);
    EXPECT_TRUE(close(real(rows[i][3]), -n * t, pow10(-45))) << i;
    // S_n = 0 sits on the singular locus of Painleve V.
    EXPECT_EQ(rows[i][5], "skipped-degenerate") << i;
  }
}

TEST(Cli, SweepGenericWeight) {
  Result r = lue_run({"sweep", "--n-max", "2", "--t", "1,2", "--format", "json"});
  ASSERT_EQ(r.code, kPass) << r.err;
  Json j = Json::parse(r.out);
  ASSERT_EQ(j["rows"].size(), 6u);
  for (const auto& row : j["rows"]) EXPECT_EQ(row["pv_status"], "passed") << row;
}
