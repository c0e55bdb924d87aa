#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli/cli.hpp"
#include "cli/state_io.hpp"
#include "entsep/measures.hpp"
#include "entsep/separability.hpp"
#include "random_states.hpp"

using namespace entsep;
using cli::Json;

namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("entsep_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const Json& doc) {
    const auto path = dir_ / name;
    std::ofstream(path) << doc.dump();
    return path.string();
  }

  struct Result {
    int code;
    std::string out;
    std::string err;
  };

  Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::execute(args, out, err);
    return {code, out.str(), err.str()};
  }

  Json run_json(std::vector<std::string> args) {
    args.push_back("--format");
    args.push_back("json");
    const Result r = run(args);
    EXPECT_EQ(r.code, 0) << r.err;
    return Json::parse(r.out);
  }

  fs::path dir_;
};

Json bell_file() { return cli::state_json(sample::bell(), "bell"); }

}  // namespace

TEST_F(CliTest, AnalyzeBell) {
  const Json r = run_json({"analyze", write("bell.json", bell_file())});
  EXPECT_EQ(r["verdict"], "entangled");
  EXPECT_NEAR(r["max_scaled_minor"].get<double>(), 1.0, 1e-12);
  EXPECT_EQ(r["label"], "bell");
  EXPECT_EQ(r["measures"]["mu"], "infinity");
  EXPECT_EQ(r["measures"]["nonsingular_count"], 2);
  EXPECT_EQ(r["structure"]["blocks"], Json::parse("[[0, 1]]"));
  EXPECT_EQ(r["bloch"]["success"], false);
  EXPECT_EQ(r["tolerances"]["tol"], 1e-8);
  EXPECT_TRUE(r.contains("version"));
}

TEST_F(CliTest, ReportValuesMatchLibrary) {
  sample::Rng rng(4);
  const auto t = sample::random_non_product(3, rng);
  const Json r = run_json({"analyze", write("s.json", cli::state_json(t)), "--tol", "1e-6"});
  const auto v = is_separable_minors(t, 1e-6);
  const auto m = measure_report(t, 1e-6);
  EXPECT_EQ(r["max_scaled_minor"].get<double>(), v.max_scaled_minor);
  EXPECT_EQ(r["measures"]["mu_regularized"].get<double>(), m.mu_regularized);
  EXPECT_EQ(r["tolerances"]["tol"].get<double>(), 1e-6);
}

TEST_F(CliTest, TextAndJsonCarrySameNumbers) {
  const std::string path = write("bell.json", bell_file());
  const Json j = run_json({"measures", path, "--distance"});
  const auto text = run({"measures", path, "--distance"});
  ASSERT_EQ(text.code, 0);
  EXPECT_NE(text.out.find("distance: " + j["distance"].dump()), std::string::npos) << text.out;
  EXPECT_NE(text.out.find("mu_regularized: " + j["mu_regularized"].dump()), std::string::npos);
}

TEST_F(CliTest, LengthMismatchExitsTwo) {
  Json doc = bell_file();
  doc["amplitudes"].erase(3);
  const auto r = run({"analyze", write("bad.json", doc)});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("length mismatch"), std::string::npos) << r.err;
}

TEST_F(CliTest, MalformedFieldsNamed) {
  Json missing = bell_file();
  missing.erase("local_dims");
  auto r = run({"analyze", write("a.json", missing)});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("local_dims"), std::string::npos);

  Json bad_im = bell_file();
  bad_im["amplitudes"][2]["im"] = "zero";
  r = run({"analyze", write("b.json", bad_im)});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("amplitudes[2].im"), std::string::npos) << r.err;

  std::ofstream(dir_ / "c.json") << "{ not json";
  r = run({"analyze", (dir_ / "c.json").string()});
  EXPECT_EQ(r.code, 2);

  r = run({"analyze", (dir_ / "missing.json").string()});
  EXPECT_EQ(r.code, 2);
}

TEST_F(CliTest, UsageErrors) {
  auto r = run({"analyze", "--nope", "x.json"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("Usage"), std::string::npos);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"--format", "xml", "analyze", "x.json"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(CliTest, ResourceGuardExitsThree) {
  const auto r = run({"table", "--parties", "6", "--resolution", "8", "--out", (dir_ / "t.json").string()});
  EXPECT_EQ(r.code, 3);
  EXPECT_FALSE(fs::exists(dir_ / "t.json"));
  EXPECT_FALSE(fs::exists(dir_ / "t.json.tmp"));
  const auto d = run({"measures", write("ghz.json", cli::state_json(sample::ghz3())), "--distance", "--grid", "200"});
  EXPECT_EQ(d.code, 3);
}

TEST_F(CliTest, TableRoundTrip) {
  const auto out = dir_ / "table.json";
  const Json r = run_json({"table", "--parties", "1", "--resolution", "1", "--out", out.string()});
  EXPECT_EQ(r["entries"], 2);

  const Json r2 = run_json({"table", "--parties", "2", "--resolution", "2", "--out", out.string()});
  EXPECT_EQ(r2["entries"], 36);
  const Json analyzed = run_json({"analyze", out.string()});
  ASSERT_EQ(analyzed["states"].size(), 36u);
  for (const auto& s : analyzed["states"]) {
    EXPECT_EQ(s["verdict"], "separable");
    EXPECT_EQ(s["bloch"]["success"], true);
  }
}

TEST_F(CliTest, FactorizeExample) {
  const auto t = sample::from_real({2, 2, 2}, {0.3, 0.3, 0.3, -0.3, 0.4, 0.4, 0.4, -0.4});
  const Json r = run_json({"factorize", write("p.json", cli::state_json(t))});
  EXPECT_EQ(r["blocks"], Json::parse("[[0], [1, 2]]"));
  EXPECT_NEAR(r["factors"][0]["amplitudes"][0]["re"].get<double>(), 0.6, 1e-12);
  EXPECT_NEAR(r["factors"][0]["amplitudes"][1]["re"].get<double>(), 0.8, 1e-12);
  EXPECT_LE(r["reassembly_error"].get<double>(), 1e-10);
  EXPECT_EQ(r["fully_separable"], false);
}

TEST_F(CliTest, BlochCommand) {
  const auto t = sample::from_real({2, 2}, {0.48, 0.36, 0.64, 0.48});
  const Json r = run_json({"bloch", write("p.json", cli::state_json(t))});
  EXPECT_EQ(r["success"], true);
  EXPECT_NEAR(r["angles"][0]["theta"].get<double>(), 1.85459, 1e-5);
  EXPECT_EQ(r["residuals"].size(), 4u);
  const Json strict = run_json({"bloch", write("q.json", cli::state_json(t.scaled(Complex(0, 1)))), "--strict"});
  EXPECT_EQ(strict["success"], false);
}

TEST_F(CliTest, MixAndDensity) {
  Json ens;
  ens["members"] = Json::array();
  ens["members"].push_back({{"p", 0.5}, {"state", cli::state_json(sample::from_real({2, 2}, {1, 0, 0, 0}))}});
  ens["members"].push_back({{"p", 0.5}, {"state", cli::state_json(sample::from_real({2, 2}, {0, 0, 0, 1}))}});
  const std::string path = write("ens.json", ens);

  const Json mix = run_json({"mix", path});
  EXPECT_EQ(mix["verdict"], "entangled");
  EXPECT_EQ(mix["combined"]["amplitudes"][0]["re"], 0.5);
  EXPECT_NEAR(mix["combined_norm"].get<double>(), std::sqrt(0.5), 1e-15);

  const Json rho = run_json({"density", path});
  EXPECT_EQ(rho["source"], "ensemble");
  EXPECT_NEAR(rho["purity"].get<double>(), 0.5, 1e-12);
  EXPECT_EQ(rho["row_ratio"]["verdict"], "violated");

  ens["members"][0]["p"] = 0.4;
  const auto bad = run({"mix", write("bad.json", ens)});
  EXPECT_EQ(bad.code, 2);
}

TEST_F(CliTest, TrajectoryCommand) {
  Json arr = Json::array();
  for (double t : {0.0, 0.785398, 1.5707963267948966})
    arr.push_back(cli::state_json(sample::from_real({2, 2}, {std::cos(t), 0, 0, std::sin(t)})));
  const Json r = run_json({"trajectory", write("traj.json", arr)});
  EXPECT_EQ(r["crossings"], Json::parse("[1, 2]"));
  EXPECT_EQ(r["samples"][1]["verdict"], "entangled");
  EXPECT_EQ(run({"trajectory", write("single.json", bell_file())}).code, 2);
}

TEST_F(CliTest, LoccCheckDeterministic) {
  const std::string path = write("ghz.json", cli::state_json(sample::ghz3()));
  const auto a = run({"locc-check", path, "--seed", "7", "--trials", "10", "--format", "json"});
  const auto b = run({"locc-check", path, "--seed", "7", "--trials", "10", "--format", "json"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const Json r = Json::parse(a.out);
  EXPECT_EQ(r["verdict_changes"], 0);
  EXPECT_EQ(r["steps"], 30);
  EXPECT_LE(r["max_axis_multiset_deviation"].get<double>(), 1e-10);
}

TEST_F(CliTest, StateIoRoundTrip) {
  sample::Rng rng(2);
  const AmplitudeTensor t({3, 2}, sample::haar_vector(6, rng));
  const auto back = cli::parse_state(Json::parse(cli::state_json(t, "x").dump()));
  EXPECT_EQ(back.label, "x");
  for (std::size_t i = 0; i < t.size(); ++i) EXPECT_EQ(back.state[i], t[i]);
}
