#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "lrc/error.hpp"
#include "lrc/job.hpp"

namespace lrc {
namespace {

namespace fs = std::filesystem;

class JobTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() /
           (std::string("lrc_job_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write_config(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }
  int run(const std::string& command, const std::string& config_text,
          const std::string& out = "out") {
    const fs::path cfg = write_config(command + ".json", config_text);
    std::ostringstream err;
    const int code = run_command(command, cfg, dir_ / out, {}, {}, err);
    last_err_ = err.str();
    return code;
  }
  Json read_json(const std::string& rel) {
    std::ifstream in(dir_ / rel);
    return Json::parse(in);
  }
  std::string read_text(const std::string& rel) {
    std::ifstream in(dir_ / rel);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
  std::string last_err_;
};

const char* kNonlinear =
    R"("map": {"degree": 2, "periodic_part": {"terms": [{"kind": "sin", "k": 1, "amp": 0.1}]}})";

FourierSeries series_at(const Json& j, const char* key) {
  return series_from_json(j.at(key));
}

TEST(JobConfig, ParsePresetsAndTerms) {
  const JobConfig c = parse_job(Json::parse(
      R"({"map": "doubling", "target": "sin",
          "epsilon": {"terms": [{"kind": "cos", "k": 2, "amp": 0.5}]},
          "weights": {"d": 0.01}, "N": 16, "grid": 32,
          "verify": {"delta": 0.002, "bins": 1024}})"));
  EXPECT_EQ(c.map.degree(), 2);
  EXPECT_LT(max_coeff_distance(c.target, FourierSeries::sine(1)), 1e-16);
  ASSERT_TRUE(c.epsilon.has_value());
  EXPECT_LT(max_coeff_distance(*c.epsilon, FourierSeries::cosine(2, 0.5)), 1e-16);
  EXPECT_EQ(c.weights.d, 0.01);
  EXPECT_EQ(c.order, 16);
  EXPECT_EQ(c.grid, 32u);
  ASSERT_TRUE(c.verify.has_value());
  EXPECT_EQ(c.verify->bins, 1024u);
  EXPECT_EQ(c.verify->delta, 0.002);
}

TEST(JobConfig, Defaults) {
  const JobConfig c = parse_job(Json::parse("{}"));
  EXPECT_EQ(c.order, kDefaultOrder);
  EXPECT_GT(c.weights.d, 0.0);
  EXPECT_FALSE(c.verify.has_value());
  EXPECT_FALSE(c.epsilon.has_value());
}

TEST(JobConfig, RoundTripIsIdentity) {
  const JobConfig c = parse_job(Json::parse(
      std::string("{") + kNonlinear +
      R"(, "target": "mixed", "epsilon": "cos2", "weights": {"a": 0.5, "d": 0.1},
          "N": 24, "verify": {"delta": 0.001, "bins": 4096}})"));
  const Json once = to_json(c);
  const Json twice = to_json(parse_job(once));
  EXPECT_EQ(once.dump(), twice.dump());
  EXPECT_EQ(config_hash(c), config_hash(parse_job(once)));
  EXPECT_EQ(config_hash(c).size(), 16u);
}

TEST(JobConfig, Rejections) {
  for (const char* bad :
       {R"([1, 2])", R"({"map": "tent"})", R"({"map": {"degree": 1}})",
        R"({"map": {"degree": 2.5}})", R"({"target": "triangle"})",
        R"({"target": {"terms": [{"kind": "tan", "k": 1}]}})",
        R"({"N": 0})", R"({"N": "8"})", R"({"weights": {"a": -1}})",
        R"({"verify": {"bins": 1}})", R"({"verify": {"delta": -0.1}})",
        R"({"target": {"N": 1, "coeffs": [[0, 1], [0, 0], [0, 1]]}})"}) {
    EXPECT_THROW(parse_job(Json::parse(bad)), Error) << bad;
  }
}

TEST(SeriesPreset, Names) {
  EXPECT_LT(max_coeff_distance(series_preset("cos2"), FourierSeries::cosine(2)),
            1e-16);
  EXPECT_EQ(sup_norm(series_preset("zero")), 0.0);
  EXPECT_THROW(series_preset("nope"), InvalidArgument);
}

TEST_F(JobTest, DensityDoublingIsUniform) {
  ASSERT_EQ(run("density", R"({"map": "doubling", "N": 8, "grid": 16})"), 0);
  const Json j = read_json("out/density.json");
  EXPECT_EQ(j["command"], "density");
  EXPECT_TRUE(j.contains("config_hash"));
  const FourierSeries rho = series_at(j, "density");
  EXPECT_LT(max_coeff_distance(rho, FourierSeries::constant(1.0)), 1e-14);
  std::istringstream csv(read_text("out/density.csv"));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "x,density");
  int rows = 0;
  while (std::getline(csv, line)) {
    const double v = std::stod(line.substr(line.find(',') + 1));
    EXPECT_NEAR(v, 1.0, 1e-14);
    ++rows;
  }
  EXPECT_EQ(rows, 16);
}

TEST_F(JobTest, DensityNonlinearResidual) {
  ASSERT_EQ(run("density", std::string("{") + kNonlinear + "}"), 0);
  const Json j = read_json("out/density.json");
  EXPECT_LT(j["residual"].get<double>(), 1e-10);
  EXPECT_LT(j["pointwise_residual"].get<double>(), 1e-9);
}

TEST_F(JobTest, MalformedConfigIsExitOne) {
  EXPECT_EQ(run("density", "{ not json"), kExitConfig);
  EXPECT_EQ(run("density", R"({"map": "tent"})"), kExitConfig);
  std::ostringstream err;
  EXPECT_EQ(run_command("density", dir_ / "missing.json", dir_ / "o", {}, {}, err),
            kExitConfig);
  EXPECT_EQ(run("respond", R"({"map": "doubling"})"), kExitConfig);
  EXPECT_EQ(run("verify", R"({"map": "doubling", "target": "sin"})"), kExitConfig);
  EXPECT_EQ(run("launch", "{}"), kExitConfig);
}

TEST_F(JobTest, SolverFailureIsExitTwo) {
  // One mode cannot resolve the density of the nonlinear map.
  EXPECT_EQ(run("density", std::string("{") + kNonlinear + R"(, "N": 1})"),
            kExitSolver);
  EXPECT_NE(last_err_.find("solver error"), std::string::npos);
}

TEST_F(JobTest, RespondDoubling) {
  ASSERT_EQ(run("respond", R"({"map": "doubling", "N": 16,
      "epsilon": {"terms": [{"kind": "cos", "k": 2, "amp": 0.15915494309189535}]}})"),
            0);
  const Json j = read_json("out/respond.json");
  EXPECT_LT(max_coeff_distance(series_at(j, "response"), FourierSeries::sine(1)),
            1e-12);
  EXPECT_LT(j["form_agreement"].get<double>(), 1e-9);
  EXPECT_FALSE(j["kernel_direction"].get<bool>());
}

TEST_F(JobTest, RespondZeroAndKernel) {
  ASSERT_EQ(run("respond", R"({"map": "doubling", "N": 16, "epsilon": "zero"})"), 0);
  EXPECT_EQ(sup_norm(series_at(read_json("out/respond.json"), "response")), 0.0);
  ASSERT_EQ(run("respond", R"({"map": "doubling", "N": 16, "epsilon": "sin"})", "k"), 0);
  const Json j = read_json("k/respond.json");
  EXPECT_TRUE(j["kernel_direction"].get<bool>());
  EXPECT_LT(sup_norm(series_at(j, "response")), 1e-12);
}

TEST_F(JobTest, ControlDoublingWorkedExample) {
  ASSERT_EQ(run("control", R"({"map": "doubling", "target": "sin", "N": 32})"), 0);
  const Json j = read_json("out/control.json");
  ASSERT_EQ(j["solutions"].size(), 2u);
  for (const Json& s : j["solutions"]) {
    const FourierSeries eps = series_at(s, "epsilon");
    EXPECT_LT(max_coeff_distance(eps, FourierSeries::cosine(2, 1 / kTwoPi)), 1e-9);
    EXPECT_NEAR(s["l2_norm"].get<double>(), std::sqrt(8.0) / (8 * kPi), 1e-10);
    EXPECT_LT(s["residual"].get<double>(), 1e-8);
    EXPECT_LT(s["round_trip"].get<double>(), 1e-6);
  }
  EXPECT_EQ(j["solutions"][1]["method"], "minimal_norm");
  EXPECT_TRUE(j["norm_convergence"].contains("difference"));
}

TEST_F(JobTest, ControlZeroTarget) {
  ASSERT_EQ(run("control", std::string("{") + kNonlinear +
                               R"(, "target": "zero", "N": 16})"),
            0);
  for (const Json& s : read_json("out/control.json")["solutions"])
    EXPECT_LT(sup_norm(series_at(s, "epsilon")), 1e-15);
}

TEST_F(JobTest, ControlNonlinearRoundTrip) {
  ASSERT_EQ(run("control", std::string("{") + kNonlinear +
                               R"(, "target": "sin", "N": 32})"),
            0);
  for (const Json& s : read_json("out/control.json")["solutions"])
    EXPECT_LT(s["round_trip"].get<double>(), 1e-6);
}

TEST_F(JobTest, ControlInfeasibleIsExitThree) {
  EXPECT_EQ(run("control", R"({"map": "doubling", "N": 8,
      "target": {"terms": [{"kind": "sin", "k": 8}]}})"),
            kExitInfeasible);
  EXPECT_NE(last_err_.find("larger order"), std::string::npos);
}

TEST_F(JobTest, VerifyDoublingPasses) {
  ASSERT_EQ(run("verify", R"({"map": "doubling", "target": "sin", "N": 16,
      "verify": {"delta": 0.001, "bins": 16384}})"),
            0);
  const Json j = read_json("out/verify.json");
  EXPECT_TRUE(j["pass"].get<bool>());
  for (const Json& c : j["checks"]) EXPECT_LT(c["discrepancy"].get<double>(), 5e-2);
  EXPECT_NE(last_err_.find("PASS"), std::string::npos);
  EXPECT_EQ(read_text("out/verify.csv").rfind("bin_midpoint,value\n", 0), 0u);
}

TEST_F(JobTest, VerifyFlippedSignFails) {
  EXPECT_EQ(run("verify", R"({"map": "doubling", "target": "sin", "N": 16,
      "epsilon": {"terms": [{"kind": "cos", "k": 2, "amp": -0.15915494309189535}]},
      "verify": {"delta": 0.001, "bins": 16384}})"),
            kExitBudget);
  EXPECT_FALSE(read_json("out/verify.json")["pass"].get<bool>());
  EXPECT_NE(last_err_.find("FAIL"), std::string::npos);
}

TEST_F(JobTest, VerifyZeroPasses) {
  EXPECT_EQ(run("verify", R"({"map": "doubling", "target": "zero", "epsilon": "zero",
      "N": 8, "verify": {"bins": 1024}})"),
            0);
}

TEST_F(JobTest, OutputIsDeterministic) {
  const std::string cfg = std::string("{") + kNonlinear +
                          R"(, "target": "mixed", "N": 32, "grid": 8})";
  ASSERT_EQ(run("control", cfg, "a"), 0);
  ASSERT_EQ(run("control", cfg, "b"), 0);
  EXPECT_EQ(read_text("a/control.json"), read_text("b/control.json"));
  EXPECT_EQ(read_text("a/control.csv"), read_text("b/control.csv"));
}

TEST_F(JobTest, OverridesApply) {
  const fs::path cfg = write_config("c.json", R"({"map": "doubling", "N": 8})");
  std::ostringstream err;
  ASSERT_EQ(run_command("density", cfg, dir_ / "o", 12, 4, err), 0);
  const Json j = read_json("o/density.json");
  EXPECT_EQ(j["N"], 12);
  EXPECT_EQ(series_at(j, "density").order(), 12);
}

int shell(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST_F(JobTest, BinaryExitCodes) {
  const std::string cli = LRC_CLI_PATH;
  write_config("ok.json", R"({"map": "doubling", "target": "sin", "N": 16})");
  write_config("bad.json", "[");
  const std::string d = dir_.string();
  EXPECT_EQ(shell(cli + " density --config " + d + "/ok.json --out " + d +
                  "/bin --modes 4 --grid 8 2>/dev/null"),
            0);
  EXPECT_TRUE(fs::exists(dir_ / "bin" / "density.csv"));
  EXPECT_EQ(shell(cli + " density --config " + d + "/bad.json --out " + d +
                  "/bin 2>/dev/null"),
            1);
  EXPECT_EQ(shell(cli + " density >/dev/null 2>&1"), 1);
  EXPECT_EQ(shell(cli + " >/dev/null 2>&1"), 1);
  EXPECT_EQ(shell(cli + " --help >/dev/null 2>&1"), 0);
}

}  // namespace
}  // namespace lrc
