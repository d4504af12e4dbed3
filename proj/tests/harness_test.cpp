#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "binpack/errors.hpp"
#include "binpack/harness.hpp"

namespace binpack {
namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult cli(std::vector<std::string> args) {
  args.insert(args.begin(), "binpack");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "binpack_harness_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string write_file(const std::string& name, const std::string& text) {
  const auto path = scratch(name);
  std::ofstream(path) << text;
  return path.string();
}

TEST(RandomInstance, SeedDeterminesStreamAndSizesAreInRange) {
  for (auto model : {SizeModel::Grid, SizeModel::Boundary, SizeModel::Mixed}) {
    RandomInstanceSpec spec;
    spec.n = 40;
    spec.model = model;
    std::mt19937_64 a(5), b(5);
    const Instance x = random_instance(spec, a);
    const Instance y = random_instance(spec, b);
    EXPECT_EQ(x.items(), y.items());
    for (const Size& s : x.items()) {
      EXPECT_GT(s.value(), 0);
      EXPECT_LE(s.value(), 1);
      EXPECT_EQ(2520 % s.value().get_den(), 0) << "grid denominators divide D";
    }
  }
  EXPECT_THROW(parse_size_model("uniform"), ParameterError);
}

TEST(ReportRow, CsvAndJsonRoundTrip) {
  ReportRow row{"random", 7, 3, std::nullopt, "mm_3", 5, 4, make_rational(5, 4), "mm_k_cr", true};
  EXPECT_EQ(to_csv(row), "random,7,3,,mm_3,5,4,5,4,mm_k_cr,true");
  EXPECT_EQ(row_from_csv(to_csv(row)), row);
  EXPECT_EQ(row_from_json(to_json(row)), row);
  EXPECT_EQ(row_from_json(nlohmann::json::parse(to_json(row).dump())), row);
  EXPECT_EQ(to_json(row)["ratio"], "5/4");
  EXPECT_TRUE(to_json(row)["B"].is_null());
  EXPECT_THROW(row_from_csv("a,b,c"), ParseError);
  EXPECT_THROW(row_from_json(nlohmann::json::object()), ParseError);
}

TEST(ReportRow, EveryVerifyRowRoundTrips) {
  VerifyConfig config;
  config.bound = "nf_k";
  config.k = 3;
  config.trials = 50;
  const auto result = run_verify(config);
  for (const auto& row : result.rows) {
    EXPECT_EQ(row_from_csv(to_csv(row)), row);
    EXPECT_EQ(row_from_json(to_json(row)), row);
  }
}

TEST(Verify, BoundsHoldAndOutputIsReproducible) {
  VerifyConfig config;
  config.bound = "tsuchiya";
  config.trials = 100;
  config.max_n = 12;
  config.model = SizeModel::Mixed;
  const auto a = run_verify(config);
  const auto b = run_verify(config);
  EXPECT_EQ(a.violations, 0u);
  EXPECT_EQ(a.rows, b.rows);
  EXPECT_EQ(a.rows.size() + a.skipped, 100u);
  for (const auto& row : a.rows) EXPECT_EQ(row.alg_bins, row.opt_bins);
}

TEST(Verify, OversizedTrialsAreCountedAsSkipped) {
  VerifyConfig config;
  config.trials = 40;
  config.max_n = 12;
  config.oracle_limit = 6;
  const auto result = run_verify(config);
  EXPECT_GT(result.skipped, 0u);
  EXPECT_EQ(result.rows.size() + result.skipped, 40u);
}

TEST(Verify, BoundToAlgorithm) {
  EXPECT_EQ(algorithm_for_bound("mm_cr", std::nullopt).id(), "mm");
  EXPECT_EQ(algorithm_for_bound("tsuchiya", std::nullopt).id(), "mm_2");
  EXPECT_EQ(algorithm_for_bound("mm_k_cr", 4).id(), "mm_4");
  EXPECT_EQ(algorithm_for_bound("nfd_gamma", std::nullopt).id(), "nfd");
  EXPECT_EQ(algorithm_for_bound("nfd_k", 3).id(), "nfd_3");
  EXPECT_EQ(algorithm_for_bound("nf_k", 2).id(), "nf_2");
  EXPECT_THROW(algorithm_for_bound("nf_k", std::nullopt), ParameterError);
  EXPECT_THROW(algorithm_for_bound("maxmin_unit_lb", std::nullopt), ParameterError);
}

TEST(Sweep, MaxMinUnitRatiosMeetTheLowerBound) {
  SweepConfig config;
  config.family = "maxmin-unit";
  config.ms = {12, 4, 8};
  const auto rows = run_sweep(config);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].m, 4u);
  EXPECT_EQ(rows[2].m, 12u);
  for (const auto& row : rows) {
    EXPECT_TRUE(row.satisfied);
    EXPECT_GE(row.ratio, make_rational(5, 4) - make_rational(1, 4 * static_cast<long>(row.m)));
  }
}

TEST(Sweep, PresortedAndOnline) {
  SweepConfig presorted;
  presorted.family = "presorted-bounded";
  presorted.K = 3;
  presorted.ms = {6, 42};
  const auto rows = run_sweep(presorted);
  EXPECT_EQ(rows.back().alg_bins, 70u);
  EXPECT_EQ(rows.back().ratio, make_rational(5, 3));

  SweepConfig online;
  online.family = "online-unit";
  online.k = 2;
  online.ms = {4, 6};
  for (const auto& row : run_sweep(online)) {
    EXPECT_EQ(row.algorithm, "nf_2");
    EXPECT_GE(row.ratio, 2 - make_rational(2, static_cast<long>(row.m)));
  }
}

TEST(Cli, PackOptAndParseErrors) {
  const auto tiny = write_file("tiny.txt", "0.6\n0.5\n0.4\n0.3\n0.2\n");
  EXPECT_EQ(cli({"pack", "--alg", "mm", "--input", tiny}).out, "bins: 3\n");
  EXPECT_EQ(cli({"opt", "--input", tiny}).out, "opt: 2\n");
  const auto traced = cli({"pack", "--alg", "mm", "--input", tiny, "--trace"});
  EXPECT_NE(traced.out.find("tail 5 -> 1"), std::string::npos);

  const auto bad = write_file("bad.txt", "0.5\n# note\nx/y\n");
  const auto r = cli({"pack", "--alg", "mm", "--input", bad});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("3"), std::string::npos);

  EXPECT_EQ(cli({"pack", "--alg", "bf", "--input", tiny}).code, 2);
  EXPECT_EQ(cli({"frobnicate"}).code, 2);
  EXPECT_EQ(cli({}).code, 2);
}

TEST(Cli, GenerateWritesInstanceAndSidecar) {
  const auto prefix = scratch("ps").string();
  const auto r = cli({"generate", "--family", "presorted-bounded", "--K", "3", "--m", "42", "--out", prefix});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("claimed_opt: 42"), std::string::npos);
  std::ifstream sidecar(prefix + ".json");
  const auto j = nlohmann::json::parse(sidecar);
  EXPECT_EQ(j["claimed_opt"], 42);
  EXPECT_EQ(j["params"]["eps"], "1/126");
  EXPECT_EQ(j["certificate"]["assignment"].size(), 126u);

  EXPECT_EQ(cli({"pack", "--alg", "nfd", "--input", prefix + ".txt"}).out, "bins: 70\n");
  const auto bad = cli({"generate", "--family", "kcard-bounded", "--k", "4", "--m", "8", "--out", prefix});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("multiple of 3"), std::string::npos);
}

TEST(Cli, VerifySweepAndAdversary) {
  const auto v = cli({"verify", "--bound", "mm_k_cr", "--k", "3", "--trials", "30", "--format", "json"});
  EXPECT_EQ(v.code, 0);
  EXPECT_EQ(nlohmann::json::parse(v.out).size(), 30u);
  EXPECT_EQ(cli({"verify", "--bound", "mm_k_cr", "--k", "3", "--trials", "30"}).out,
            cli({"verify", "--bound", "mm_k_cr", "--k", "3", "--trials", "30"}).out);

  const auto s = cli({"sweep", "--family", "online-unit", "--k", "2", "--m", "4,6"});
  EXPECT_EQ(s.code, 0);
  EXPECT_EQ(s.out.substr(0, csv_header().size()), csv_header());

  const auto a = cli({"adversary", "--proc", "always-head", "--m", "1"});
  EXPECT_EQ(a.code, 0);
  EXPECT_NE(a.out.find("N1: 4\nN2: 0"), std::string::npos);
  EXPECT_NE(a.out.find("inequality_ok: true"), std::string::npos);
}

}  // namespace
}  // namespace binpack
