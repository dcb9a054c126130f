#include <gtest/gtest.h>

#include <filesystem>
#include <functional>
#include <fstream>
#include <sstream>

#include "config.hpp"
#include "dinls/error.hpp"
#include "run.hpp"

using namespace dinls;
using namespace dinls::app;
namespace fs = std::filesystem;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::IoError;
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("dinls_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const char* kGlobal1 = R"(
mode = "classify"
[params]
N = 3
lambda1 = 1
lambda2 = 1
p1 = 1
p2 = 3
b1 = "1/2"
b2 = 0.5
)";

}  // namespace

TEST(TomlSubset, ParsesScalarsArraysAndComments) {
  const auto t = parse_toml(R"(
top = "x # not a comment"   # a comment
[a]
n = 1_000
f = 2.5e-1
r = "1/2"
flag = true
list = [1, 2,
        3,]
names = ["a", "b"]
)");
  EXPECT_EQ(t.at("").at("top").text, "x # not a comment");
  EXPECT_EQ(t.at("a").at("n").text, "1000");
  EXPECT_EQ(t.at("a").at("f").kind, ConfigValue::Kind::Number);
  EXPECT_TRUE(t.at("a").at("flag").flag);
  ASSERT_EQ(t.at("a").at("list").items.size(), 3u);
  EXPECT_EQ(t.at("a").at("list").items[2].text, "3");
  EXPECT_EQ(t.at("a").at("names").items[1].text, "b");
}

TEST(TomlSubset, ErrorsNameTheLine) {
  const std::string bad = "[grid]\nR = 20\nM = abc\n";
  EXPECT_EQ(code_of([&] { parse_toml(bad); }), ErrorCode::ParseError);
  EXPECT_NE(message_of([&] { parse_toml(bad); }).find("line 3"), std::string::npos);
  EXPECT_EQ(code_of([] { parse_toml("[grid\n"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_toml("a = 1\na = 2\n"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_toml("s = \"open\n"); }), ErrorCode::ParseError);
}

TEST(Config, UnknownKeysAndSectionsAreRejected) {
  EXPECT_EQ(code_of([] { build_config(parse_toml("[grid]\nRR = 3\n")); }), ErrorCode::ParseError);
  EXPECT_NE(message_of([] { build_config(parse_toml("[grid]\nRR = 3\n")); }).find("grid.RR"), std::string::npos);
  EXPECT_EQ(code_of([] { build_config(parse_toml("[gird]\nR = 3\n")); }), ErrorCode::ParseError);
}

TEST(Config, MinimalSimulateGetsDefaults) {
  const auto c = build_config(parse_toml(R"(
[params]
N = 3
lambda1 = 1
lambda2 = -1
p1 = 1
b1 = 0.4
b2 = 0.5
[initial_data]
amplitude = 2
)"));
  EXPECT_EQ(c.mode, Mode::Simulate);
  // p2 defaults to the critical power (4 - 2 b2)/(N - 2) = 3.
  EXPECT_EQ(c.params->p2.to_string(), "3");
  EXPECT_EQ(c.grid.points, 1024);
  EXPECT_DOUBLE_EQ(c.solver.dt0, SolverConfig{}.dt0);
  const auto j = to_json(c);
  for (const char* section : {"params", "grid", "solver", "initial_data", "outputs", "verify", "picard"})
    EXPECT_TRUE(j.contains(section)) << section;
  EXPECT_EQ(j["solver"]["sample_stride"], 10);
  EXPECT_EQ(j["params"]["b1"], "2/5");
}

TEST(Config, InconsistentP2NamesCriticality) {
  auto t = parse_toml(kGlobal1);
  apply_override(t, "params.p2=2.9");
  EXPECT_EQ(code_of([&] { build_config(t); }), ErrorCode::ValidationError);
  EXPECT_NE(message_of([&] { build_config(t); }).find("p2 = (4-2*b2)/(N-2)"), std::string::npos);
}

TEST(Config, FlagOverridesWinAndAreRecorded) {
  const fs::path dir = scratch("override");
  const fs::path file = dir / "run.toml";
  std::ofstream(file) << kGlobal1 << "[solver]\ndt0 = 1e-2\n";
  const auto c = load_config(file, {"solver.dt0=5e-4", "grid.M=256"});
  EXPECT_DOUBLE_EQ(c.solver.dt0, 5e-4);
  EXPECT_EQ(c.grid.points, 256);
  const auto j = to_json(c);
  EXPECT_EQ(j["overrides"][0], "solver.dt0=5e-4");
  EXPECT_DOUBLE_EQ(j["solver"]["dt0"].get<double>(), 5e-4);
}

TEST(Config, JsonConfigMatchesToml) {
  const auto from_toml = build_config(parse_toml(kGlobal1));
  const auto from_json = build_config(parse_json_config(R"({
    "mode": "classify",
    "params": {"N": 3, "lambda1": 1, "lambda2": 1, "p1": 1, "p2": 3, "b1": "1/2", "b2": 0.5}
  })"));
  EXPECT_EQ(to_json(from_toml).dump(), to_json(from_json).dump());
}

TEST(Config, ModuleValidatorsRunUpFront) {
  auto t = parse_toml(kGlobal1);
  apply_override(t, "grid.M=1000");
  EXPECT_EQ(code_of([&] { build_config(t); }), ErrorCode::ValidationError);
  t = parse_toml(kGlobal1);
  apply_override(t, "solver.dt_min=1");
  EXPECT_EQ(code_of([&] { build_config(t); }), ErrorCode::ValidationError);
  t = parse_toml(kGlobal1);
  apply_override(t, "initial_data.kind=snapshot");
  apply_override(t, "initial_data.snapshot=missing.bin");
  EXPECT_EQ(code_of([&] { build_config(t); }), ErrorCode::ValidationError);
  // Simulation modes need parameters.
  EXPECT_EQ(code_of([] { build_config(parse_toml("mode = \"simulate\"\n")); }), ErrorCode::ValidationError);
}

TEST(Run, ClassifyExitCodes) {
  const fs::path dir = scratch("classify");
  std::ostringstream log;
  const auto ok = run_experiment(build_config(parse_toml(kGlobal1)), dir / "g1", log);
  EXPECT_EQ(ok.exit_code, kExitOk);
  EXPECT_EQ(ok.summary["global_verdict"]["regime"], "GlobalCase1");
  EXPECT_TRUE(fs::exists(dir / "g1" / "summary.json"));
  EXPECT_FALSE(fs::exists(dir / "g1" / "summary.json.tmp"));

  auto t = parse_toml(kGlobal1);
  apply_override(t, "params.lambda2=-1");
  const auto un = run_experiment(build_config(t), dir / "un", log);
  EXPECT_EQ(un.exit_code, kExitUnclassified);
}

TEST(Run, ExponentsPrintsPairAndCheck) {
  std::ostringstream log;
  const auto c = config_from_overrides({"mode=exponents", "exponents.p=2", "exponents.b=1/2", "exponents.N=3"});
  const auto r = run_experiment(c, scratch("exponents"), log);
  EXPECT_EQ(r.exit_code, kExitOk);
  EXPECT_NE(log.str().find("(16/3, 8/3)"), std::string::npos) << log.str();
  EXPECT_NE(log.str().find("admissible: yes"), std::string::npos);
  EXPECT_EQ(r.summary["wvz"]["W0"]["gamma"], "8");
}

TEST(Run, SimulateIsReproducibleAndSelfDescribing) {
  const std::vector<std::string> o{"mode=simulate",     "params.N=3",   "params.lambda1=1", "params.lambda2=1",
                                   "params.p1=1",       "params.b1=0.5", "params.b2=0.5",   "grid.R=20",
                                   "grid.M=256",        "solver.t_end=0.1", "initial_data.amplitude=0.5"};
  const fs::path dir = scratch("repro");
  std::ostringstream log;
  const auto a = run_experiment(config_from_overrides(o), dir / "a", log);
  const auto b = run_experiment(config_from_overrides(o), dir / "b", log);
  EXPECT_EQ(a.exit_code, kExitOk);
  for (const char* f : {"summary.json", "diagnostics.csv", "final_state.csv"})
    EXPECT_EQ(slurp(dir / "a" / f), slurp(dir / "b" / f)) << f;
  const std::string csv = slurp(dir / "a" / "diagnostics.csv");
  EXPECT_EQ(csv.rfind("# config: {", 0), 0u);
  EXPECT_NE(csv.find("\nt,mass,energy,kinetic,wn1,wn2,V,y,vpp_formula,max_amp,dt\n"), std::string::npos);
}

TEST(Run, SweepRunsEachConfigInItsOwnDirectory) {
  const fs::path dir = scratch("sweep");
  std::ofstream(dir / "one.toml") << kGlobal1;
  std::ofstream(dir / "two.toml") << "mode = \"exponents\"\n[exponents]\np = 1\nb = \"1/2\"\nN = 3\n";
  std::ofstream(dir / "bad.toml") << "mode = \"classify\"\n[params]\nN = 7\n";
  std::ofstream(dir / "sweep.toml") << "mode = \"sweep\"\n[sweep]\nconfigs = [\"one.toml\", \"two.toml\", "
                                       "\"bad.toml\"]\nworkers = 3\n";
  std::ostringstream log;
  const auto r = run_experiment(load_config(dir / "sweep.toml"), dir / "out", log);
  EXPECT_EQ(r.exit_code, kExitError);
  ASSERT_EQ(r.summary["runs"].size(), 3u);
  EXPECT_EQ(r.summary["runs"][0]["exit_code"], 0);
  EXPECT_EQ(r.summary["runs"][1]["exit_code"], 0);
  EXPECT_EQ(r.summary["runs"][2]["exit_code"], 1);
  EXPECT_TRUE(fs::exists(dir / "out" / "run_0_one" / "summary.json"));
  EXPECT_TRUE(fs::exists(dir / "out" / "run_1_two" / "summary.json"));
}

TEST(Run, AtomicWriteReplacesWholeFile) {
  const fs::path dir = scratch("atomic");
  write_atomic(dir / "f.txt", "first version, longer");
  write_atomic(dir / "f.txt", "second");
  EXPECT_EQ(slurp(dir / "f.txt"), "second");
  EXPECT_EQ(code_of([&] { write_atomic(dir / "missing" / "f.txt", "x"); }), ErrorCode::IoError);
}
