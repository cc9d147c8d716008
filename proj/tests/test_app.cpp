#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <functional>
#include <numeric>
#include <string>

#include "mixphase/app/commands.hpp"
#include "mixphase/app/descriptors.hpp"
#include "mixphase/app/random.hpp"
#include "mixphase/app/verify.hpp"

using namespace mixphase;
using namespace mixphase::app;
using nlohmann::json;

namespace {

const std::string kData = MIXPHASE_DATA_DIR;

std::string error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const CliError& e) {
    return e.what();
  }
  return "";
}

const CriterionResult& find(const VerifyReport& report, const std::string& id) {
  for (const auto& r : report.results)
    if (r.info.id == id) return r;
  throw std::runtime_error("missing " + id);
}

}  // namespace

TEST(Descriptors, StateWithExplicitBasisAndPairing) {
  const json doc = json::parse(R"({
    "eigenvalues": [0.5, 0.3, 0.2],
    "basis": {"columns": [[0, 1, 0], [[0, 1], 0, 0], [0, 0, 1]]},
    "pairing": [3, 1, 2]
  })");
  const StateDescriptor s = parse_state(doc);
  EXPECT_EQ(s.pairing, (std::vector<int>{2, 0, 1}));
  EXPECT_EQ(s.basis(1, 0), Complex(1.0, 0.0));
  EXPECT_EQ(s.basis(0, 1), Complex(0.0, 1.0));
}

TEST(Descriptors, StateErrorsNameTheField) {
  EXPECT_NE(error_of([] { parse_state(json::parse(R"({"basis": "computational"})")); }).find("eigenvalues"),
            std::string::npos);
  EXPECT_NE(error_of([] { parse_state(json::parse(R"({"eigenvalues": [0.5, 0.5], "basis": "fourier"})")); })
                .find("ValidationError: basis"),
            std::string::npos);
  EXPECT_NE(error_of([] {
              parse_state(json::parse(R"({"eigenvalues": [0.6, 0.4], "basis": "computational", "pairing": [1, 3]})"));
            }).find("pairing[1]"),
            std::string::npos);
  EXPECT_NE(error_of([] {
              parse_state(json::parse(R"({"eigenvalues": [0.6, 0.4], "basis": {"columns": [[1, 0], [1, 0]]}})"));
            }).find("orthonormal"),
            std::string::npos);
}

TEST(Descriptors, PathSegments) {
  const PathDescriptor p = parse_path(json::parse(R"({"segments": [
      {"axis": [0, 0, 2], "angle": 1.0},
      {"generator": [[1, [0, -1]], [[0, 1], -1]], "angle": -0.5, "steps": 7}]})"),
                                      33);
  ASSERT_EQ(p.segments.size(), 2u);
  EXPECT_EQ(p.segments[0].steps, 33);
  EXPECT_EQ(p.segments[1].steps, 7);
  EXPECT_DOUBLE_EQ(p.segments[1].duration, 0.5);
  EXPECT_EQ(p.segments[1].generator(0, 0), Complex(-1.0, 0.0));
  EXPECT_NE(error_of([] { parse_path(json::parse(R"({"segments": [{"angle": 1}]})"), 10); }).find("segments[0]"),
            std::string::npos);
  EXPECT_NE(error_of([] {
              parse_path(json::parse(R"({"segments": [{"axis": [0,0,1], "generator": [[1]], "angle": 1}]})"), 10);
            }).find("exactly one"),
            std::string::npos);
  EXPECT_NE(error_of([] { parse_path(json::parse(R"({"segments": [{"generator": [[0, 1], [0, 0]], "angle": 1}]})"), 10); })
                .find("Hermitian"),
            std::string::npos);
}

TEST(Descriptors, IndexListAndFiles) {
  EXPECT_EQ(parse_index_list("1,3,2", "--indices"), (std::vector<int>{0, 2, 1}));
  EXPECT_NE(error_of([] { parse_index_list("1,x", "--indices"); }).find("--indices"), std::string::npos);
  EXPECT_NE(error_of([] { parse_index_list("0,1", "--indices"); }).find("--indices"), std::string::npos);
  EXPECT_NE(error_of([] { load_json(kData + "/missing.json"); }).find("cannot open"), std::string::npos);
  const std::string bad = ::testing::TempDir() + "/bad.json";
  std::ofstream(bad) << "{ not json";
  EXPECT_EQ(error_of([&] { load_json(bad); }).rfind("ParseError", 0), 0u);
}

TEST(Commands, FlipPathOffdiagIsPi) {
  PhaseCommand cmd;
  cmd.state_file = kData + "/qubit_r06.json";
  cmd.path_file = kData + "/flip_path.json";
  cmd.kind = "offdiag";
  const json out = run_phase(cmd, CommonOptions{});
  EXPECT_NEAR(std::abs(out["phase_angle"].get<double>()), kPi, 1e-9);
  EXPECT_NEAR(out["magnitude"].get<double>(), 1.0, 1e-9);
  for (const char* key : {"tool", "version", "config_hash", "seed", "tol", "steps", "transport_residual"})
    EXPECT_TRUE(out["meta"].contains(key)) << key;
}

TEST(Commands, IdentityPathDiagIsZero) {
  PhaseCommand cmd;
  cmd.state_file = kData + "/qubit_r06.json";
  cmd.path_file = kData + "/identity_path.json";
  cmd.kind = "diag";
  const json out = run_phase(cmd, CommonOptions{});
  EXPECT_EQ(out["phase_angle"].get<double>(), 0.0);
}

TEST(Commands, FullPermutationCycle) {
  PhaseCommand cmd;
  cmd.state_file = kData + "/qutrit_family.json";
  cmd.path_file = kData + "/full_permutation_path.json";
  cmd.kind = "cycle";
  cmd.indices = "1,3,2";
  const json out = run_phase(cmd, CommonOptions{});
  EXPECT_NEAR(out["trace"][0].get<double>(), 3.0 * std::cbrt(0.5 * 0.3 * 0.2), 1e-10);
  EXPECT_NEAR(out["trace"][1].get<double>(), 0.0, 1e-10);
  cmd.indices = "1,2,3";
  EXPECT_NEAR(run_phase(cmd, CommonOptions{})["trace"][0].get<double>(), 1.0, 1e-10);
}

TEST(Commands, DecomposeReportsLabelsAndTerms) {
  DecomposeCommand cmd;
  cmd.state_file = kData + "/qutrit_family.json";
  cmd.path_file = kData + "/full_permutation_path.json";
  const json out = run_decompose(cmd, CommonOptions{});
  EXPECT_TRUE(out["is_permuting"].get<bool>());
  EXPECT_EQ(out["m"].get<int>(), 3);
  EXPECT_EQ(out["cycle_labels"], json::array({1, 2, 3}));
  for (const auto& t : out["terms"]) EXPECT_LT(t["split_residual"].get<double>(), 1e-10);
  EXPECT_EQ(out["terms"].size(), 3u + 3u + 2u);
}

TEST(Commands, ResidualContractIsNumericFailure) {
  PhaseCommand cmd;
  cmd.state_file = kData + "/qutrit_family.json";
  const std::string path = ::testing::TempDir() + "/rough_path.json";
  std::ofstream(path) << R"({"segments": [{"generator": [[1, [0.3, 0.2], 0], [[0.3, -0.2], -0.5, 0.4], [0, 0.4, 0.2]],
                                             "angle": 2.0, "steps": 3}]})";
  cmd.path_file = path;
  cmd.kind = "diag";
  cmd.residual_tol = 1e-12;
  try {
    run_phase(cmd, CommonOptions{});
    FAIL();
  } catch (const CliError& e) {
    EXPECT_EQ(e.code(), ExitCode::Numeric);
  }
  cmd.residual_tol = 1.0;
  EXPECT_NO_THROW(run_phase(cmd, CommonOptions{}));
}

TEST(Commands, OutputsAreDeterministic) {
  CommonOptions common;
  SweepCommand sweep;
  sweep.beta_count = 3;
  sweep.chi_samples = 8;
  EXPECT_EQ(run_franson_sweep(sweep, common), run_franson_sweep(sweep, common));
  ScanCommand scan;
  scan.fb_count = 5;
  scan.omega_count = 5;
  const std::string csv = run_scan_nodal(scan, common);
  EXPECT_EQ(csv, run_scan_nodal(scan, common));
  EXPECT_NE(csv.find("# seed=20021"), std::string::npos);
  EXPECT_NE(csv.find("fb,omega,eta2,status\n"), std::string::npos);
  FitCommand fit;
  fit.shots = 1e6;
  EXPECT_EQ(run_franson_fit(fit, common).dump(), run_franson_fit(fit, common).dump());
  common.seed = 5;
  EXPECT_NE(run_franson_fit(fit, common)["shift"], run_franson_fit(fit, CommonOptions{})["shift"]);
}

TEST(Commands, ConfigHashTracksConfig) {
  const json a{{"x", 1}}, b{{"x", 2}};
  EXPECT_EQ(config_hash(a), config_hash(a));
  EXPECT_NE(config_hash(a), config_hash(b));
  EXPECT_EQ(config_hash(a).rfind("fnv1a64:", 0), 0u);
  EXPECT_EQ(config_hash(a).size(), 8u + 16u);
}

TEST(Commands, CommonValidation) {
  CommonOptions bad;
  bad.tol = 0.0;
  EXPECT_NE(error_of([&] { run_franson_sweep(SweepCommand{}, bad); }).find("--tol"), std::string::npos);
  ScanCommand scan;
  scan.fb_max = 1.5;
  EXPECT_NE(error_of([&] { run_scan_nodal(scan, CommonOptions{}); }).find("ValidationError"), std::string::npos);
  EXPECT_EQ(centered_grid(0.0, 1.0, 4), (std::vector<double>{0.125, 0.375, 0.625, 0.875}));
}

TEST(Verify, OnlyFilterBySlugOrId) {
  VerifyOptions opts;
  opts.only = {"n3-table"};
  const VerifyReport report = run_verify(opts);
  ASSERT_EQ(report.results.size(), 1u);
  EXPECT_EQ(report.results[0].info.id, "A7");
  EXPECT_TRUE(report.all_passed());
  opts.only = {"A9", "rank-rule"};
  EXPECT_EQ(run_verify(opts).results.size(), 1u);
  opts.only = {"nope"};
  EXPECT_THROW(run_verify(opts), std::invalid_argument);
}

TEST(Verify, OffdiagSignCanaryFails) {
  VerifyOptions opts;
  opts.only = {"A1", "A2"};
  opts.canary = Canary::OffdiagClosedSign;
  const VerifyReport report = run_verify(opts);
  EXPECT_FALSE(find(report, "A1").passed);
  EXPECT_TRUE(find(report, "A2").passed);
  EXPECT_FALSE(report.all_passed());
}

TEST(Verify, DiagPhaseSignCanaryFails) {
  VerifyOptions opts;
  opts.only = {"A1", "A2"};
  opts.canary = Canary::DiagClosedPhaseSign;
  const VerifyReport report = run_verify(opts);
  EXPECT_TRUE(find(report, "A1").passed);
  EXPECT_FALSE(find(report, "A2").passed);
}

TEST(Verify, FormatLine) {
  CriterionResult r;
  r.info = criteria()[0];
  r.passed = true;
  r.measured = 1e-13;
  r.threshold = 1e-6;
  EXPECT_EQ(format_line(r).rfind("[PASS] A1 offdiag-closed", 0), 0u);
  EXPECT_EQ(criteria().size(), 12u);
}

TEST(Random, SpectrumHasGapsAndZeros) {
  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const auto w = random_spectrum(4, rng, 1);
    EXPECT_NEAR(std::accumulate(w.begin(), w.end(), 0.0), 1.0, 1e-15);
    EXPECT_EQ(w[3], 0.0);
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) EXPECT_GT(std::abs(w[i] - w[j]), 1e-3);
  }
  EXPECT_TRUE(is_unitary(random_unitary(5, rng), 1e-12));
}
