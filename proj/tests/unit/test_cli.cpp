#include <brp/cli.hpp>
#include <brp/error.hpp>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace brp;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("brk_test_" + name);
  fs::remove_all(p);
  return p;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidArgument;
}

std::string read(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Config, MinimalFillsDefaults) {
  const cli::RunConfig c = cli::parse_config("system = burgers\nproblem = riemann\n[data]\nU_minus = 1\nU_plus = -1\n");
  EXPECT_EQ(c.problem, cli::Problem::Riemann);
  EXPECT_EQ(c.n, 1);
  ASSERT_TRUE(c.u_minus.has_value());
  EXPECT_EQ((*c.u_minus)[0], 1.0);
  EXPECT_EQ(c.riemann.waves.tol_rh, 1e-10);
  const std::string eff = c.effective_text();
  EXPECT_NE(eff.find("[numerics]"), std::string::npos);
  EXPECT_NE(eff.find("tol_rh = 1e-10"), std::string::npos) << eff;
  // the echo parses back to the same configuration
  EXPECT_EQ(cli::parse_config(eff).effective_text(), eff);
}

TEST(Config, NegativeTolerance) {
  try {
    cli::parse_config("[numerics]\ntol_rh = -1\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ValidationError);
    EXPECT_NE(std::string(e.what()).find("numerics.tol_rh must be > 0"), std::string::npos) << e.what();
  }
}

TEST(Config, DimensionMismatch) {
  try {
    cli::parse_config("system = burgers\n[data]\nU_minus = 1 2\nU_plus = 0\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ValidationError);
    EXPECT_NE(std::string(e.what()).find("data.U_minus"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("dimension mismatch"), std::string::npos) << e.what();
  }
}

TEST(Config, UnknownKeyAndParseError) {
  EXPECT_EQ(kind_of([] { cli::parse_config("[numerics]\ntol_xyz = 1\n"); }), ErrorKind::ValidationError);
  EXPECT_EQ(kind_of([] { cli::parse_config("[bogus]\nx = 1\n"); }), ErrorKind::ValidationError);
  try {
    cli::parse_config("[data]\nU_minus = 1\n  = oops\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParseError);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(Config, OverridesWin) {
  const cli::RunConfig c = cli::parse_config("[numerics]\ntol_rh = 1e-9\n", {"numerics.tol_rh=1e-11", "problem=suite"});
  EXPECT_EQ(c.riemann.waves.tol_rh, 1e-11);
  EXPECT_EQ(c.problem, cli::Problem::Suite);
}

TEST(Run, RiemannBurgers) {
  const fs::path dir = scratch("riemann");
  cli::RunConfig c = cli::parse_config("system = burgers\n[data]\nU_minus = 1\nU_plus = -1\n[output]\ndir = " + dir.string() + "\n");
  std::ostringstream log;
  const cli::RunResult r = cli::run(c, log);
  EXPECT_EQ(r.exit_code, 0) << r.summary;
  const auto fan = nlohmann::json::parse(read(dir / "fan.json"));
  ASSERT_EQ(fan["waves"].size(), 1u);
  EXPECT_EQ(fan["waves"][0]["kind"], "shock");
  EXPECT_TRUE(fs::exists(dir / "effective_config.ini"));
  const auto summary = nlohmann::json::parse(read(dir / "summary.json"));
  EXPECT_EQ(summary["status"], "ok");
}

TEST(Run, Reproducible) {
  const fs::path a = scratch("repro_a"), b = scratch("repro_b");
  const std::string text = "system = p-system\nproblem = boundary-riemann\n[data]\nU_0 = 1 0\nU_D = 1.03 -0.02\n";
  std::ostringstream log;
  cli::run(cli::parse_config(text, {"output.dir=" + a.string()}), log);
  cli::run(cli::parse_config(text, {"output.dir=" + b.string()}), log);
  for (const char* f : {"fan.json", "fan_samples.csv", "layer.csv"}) EXPECT_EQ(read(a / f), read(b / f)) << f;
}

TEST(Run, CompareLimitsLinear) {
  const fs::path dir = scratch("compare");
  const std::string text =
      "problem = compare-limits\n[system]\nname = linear2\nmatrix = -1 0 0 1\n"
      "[data]\nU_0 = 1 2\nU_D = 1.03 2.04\n[numerics]\nT = 1\neps_list = 0.08 0.04 0.02\n";
  std::ostringstream log;
  const cli::RunResult r = cli::run(cli::parse_config(text, {"output.dir=" + dir.string()}), log);
  EXPECT_EQ(r.exit_code, 0) << r.summary;
  std::ifstream in(dir / "comparison.csv");
  std::string line;
  int rows = -1;
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  EXPECT_EQ(rows, 3);
}

TEST(Run, BoundaryNoConnection) {
  const fs::path dir = scratch("noconn");
  const std::string text =
      "system = burgers\nproblem = boundary-riemann\n[data]\nU_0 = -1\nU_D = 1.5\n[numerics]\nregime = p=0\n";
  std::ostringstream log;
  const cli::RunResult r = cli::run(cli::parse_config(text, {"output.dir=" + dir.string()}), log);
  EXPECT_NE(r.exit_code, 0);
  const auto summary = nlohmann::json::parse(read(dir / "summary.json"));
  EXPECT_EQ(summary["error"]["kind"], "NoConnection");
}
