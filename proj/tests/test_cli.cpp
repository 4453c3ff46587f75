#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = symq::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json run_json(std::vector<std::string> args) {
  const Result r = run(std::move(args));
  EXPECT_EQ(r.code, 0) << r.err;
  return nlohmann::json::parse(r.out);
}

std::filesystem::path temp_file(const std::string& name, const std::string& contents) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << contents;
  return path;
}

}  // namespace

TEST(Cli, SpectralThreshold) {
  const auto j = run_json({"spectral", "--gen", "threshold:2", "--n", "4"});
  EXPECT_NEAR(j["lambda"].get<double>(), 2.449490, 1e-6);
  EXPECT_NEAR(j["closed_form"].get<double>(), std::sqrt(6.0), 1e-8);
  EXPECT_TRUE(j["ok"].get<bool>());
}

TEST(Cli, AdversaryRelationalGapMaj) {
  const auto j = run_json({"adversary", "--gen", "gapmaj", "--n", "16", "--relational"});
  EXPECT_EQ(j["m"], 495);
  EXPECT_EQ(j["mprime"], 495);
  EXPECT_EQ(j["l"], 330);
  EXPECT_EQ(j["lprime"], 330);
  EXPECT_EQ(j["bound"], 1.5);
}

TEST(Cli, AdversaryLargeCountsAreStrings) {
  const auto j = run_json({"adversary", "--gen", "gapmaj", "--n", "256", "--relational"});
  EXPECT_TRUE(j["m"].is_string());
  EXPECT_EQ(j["bound"], 4.5);
}

TEST(Cli, AdversarySchemes) {
  const auto j = run_json({"adversary", "--gen", "threshold:2", "--n", "4", "--explicit", "--emit"});
  EXPECT_TRUE(j["explicit"]["feasible"].get<bool>());
  EXPECT_NEAR(j["explicit"]["objective"].get<double>(), 4 * std::sqrt(2.0), 1e-8);
  EXPECT_EQ(j["explicit"]["scheme"].size(), 64u);

  // The emitted scheme, fed back as a file, checks the same way.
  const auto path = temp_file("symq_scheme.json", nlohmann::json{{"entries", j["explicit"]["scheme"]}}.dump());
  const auto k = run_json({"adversary", "--gen", "threshold:2", "--n", "4", "--scheme", path.string()});
  EXPECT_TRUE(k["scheme"]["feasible"].get<bool>());

  const Result ec = run({"adversary", "--gen", "threshold:2", "--n", "4", "--explicit", "--mode", "EC"});
  EXPECT_EQ(ec.code, 1);

  const auto u = run_json({"adversary", "--gen", "gapmaj", "--n", "64", "--uniform", "0.125"});
  EXPECT_TRUE(u["uniform"]["feasible"].get<bool>());
  EXPECT_EQ(u["uniform"]["objective"], 8.0);
}

TEST(Cli, Measure) {
  const auto j = run_json({"measure", "--gen", "extremal-c", "--n", "5", "--eps", "0"});
  EXPECT_EQ(j["s"], 4);
  EXPECT_EQ(j["C"], 4);
  EXPECT_EQ(j["C1"], 4);
  EXPECT_EQ(j["approx_degree"], 4);
  const auto t = run_json({"measure", "--gen", "or", "--n", "4", "--table"});
  EXPECT_EQ(t["method"], "table");
  EXPECT_EQ(t["FC"], 4.0);
}

TEST(Cli, MeasureFromFile) {
  const auto path = temp_file("symq_fn.json", R"({"n": 2, "kind": "table", "values": "0110"})");
  const auto j = run_json({"measure", "--file", path.string()});
  EXPECT_EQ(j["s"], 2);
  EXPECT_EQ(j["C"], 2);
}

TEST(Cli, Qcount) {
  const auto d = run_json({"qcount", "--n", "16", "--t", "12", "--decide", "--exact"});
  EXPECT_EQ(d["bit"], 1);
  EXPECT_EQ(d["M"], 16);
  EXPECT_EQ(d["queries"], 15);
  EXPECT_GE(d["success_prob_exact"].get<double>(), 2.0 / 3.0);
  const auto e = run_json({"qcount", "--n", "256", "--t", "144", "--M", "64", "--delta", "0.0625", "--seed", "4"});
  EXPECT_EQ(e["queries"], 63);
  EXPECT_GT(e["success_prob_exact"].get<double>(), 2.0 / 3.0);
  EXPECT_EQ(run({"qcount", "--n", "16", "--t", "12", "--exact", "--sample"}).code, 2);
}

TEST(Cli, ScanAndReport) {
  const Result scan = run({"scan", "--n", "6", "--checks", "all"});
  EXPECT_EQ(scan.code, 0) << scan.err;
  EXPECT_EQ(nlohmann::json::parse(scan.out)["violations"], 0);
  const Result csv = run({"scan", "--n", "4", "--checks", "c2s", "--format", "csv"});
  EXPECT_EQ(csv.out, "check,evaluated,violations\nc2s,32,0\n");
  const auto report = run_json({"report", "--gen", "gapmaj", "--n", "16"});
  EXPECT_TRUE(report["ok"].get<bool>());
}

TEST(Cli, CsvRecord) {
  const Result r = run({"adversary", "--gen", "or", "--n", "2", "--relational", "--format", "csv"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "bound,l,lprime,m,mprime,relation\n1.41421356,1,1,2,1,sensitive-edges\n");
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"measure"}).code, 2);
  EXPECT_EQ(run({"measure", "--gen", "gapmaj", "--n", "15"}).code, 2);
  EXPECT_EQ(run({"measure", "--gen", "threshold", "--n", "4"}).code, 2);
  EXPECT_EQ(run({"measure", "--gen", "or", "--n", "4", "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"adversary", "--gen", "or", "--n", "4"}).code, 2);
  EXPECT_EQ(run({"scan", "--n", "9", "--checks", "bs-formula"}).code, 2);
  EXPECT_EQ(run({"measure", "--file", "/nonexistent/f.json"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, DeterministicOutput) {
  const std::vector<std::string> args{"qcount", "--n", "1024", "--t", "544", "--decide", "--seed", "42", "--trials", "50"};
  EXPECT_EQ(run(args).out, run(args).out);
}
