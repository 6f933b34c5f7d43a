#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "oldroyd/cli.hpp"
#include "oldroyd/config.hpp"
#include "oldroyd/errors.hpp"
#include "oldroyd/experiment.hpp"
#include "oldroyd/generators.hpp"
#include "oldroyd/snapshot.hpp"
#include "oldroyd/spectral_ops.hpp"
#include "support/oracles.hpp"

using namespace oldroyd;

namespace {

constexpr double kPi = std::numbers::pi;

const char* kMinimal =
    "grid.n = 16\n"
    "grid.L = 6.283185307179586\n"
    "initial.generators = taylor_green\n";

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("oldroyd_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

int cli(std::vector<std::string> args, std::string* out_text = nullptr, std::string* err_text = nullptr) {
  args.insert(args.begin(), "oldroyd");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

ParseError parse_error(const std::string& text) {
  try {
    parse_config_text(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no ParseError for:\n" << text;
  return ParseError("", "");
}

}  // namespace

TEST(Config, MinimalParseUsesDefaults) {
  const RunConfig c = parse_config_text(kMinimal);
  EXPECT_EQ(c.grid.n, 16);
  EXPECT_EQ(c.model, ModelParams{});
  EXPECT_EQ(c.stepper, StepperConfig{});
  EXPECT_EQ(c.diagnostics, DiagnosticsConfig{});
  ASSERT_EQ(c.initial.size(), 1u);
  EXPECT_EQ(c.initial[0].name, "taylor_green");
  EXPECT_EQ(c.cadence, 0.0);
}

TEST(Config, ErrorsNameTheKey) {
  const ParseError typo = parse_error(std::string(kMinimal) + "model.alhpa = 0.1\n");
  EXPECT_EQ(typo.key(), "model.alhpa");
  EXPECT_NE(std::string(typo.what()).find("model.alpha"), std::string::npos);

  EXPECT_EQ(parse_error("grid.n = 16\ninitial.generators = taylor_green\n").key(), "grid.L");
  EXPECT_EQ(parse_error(std::string(kMinimal) + "model.a = 1\nmodel.a = 2\n").key(), "model.a");
  EXPECT_EQ(parse_error(std::string(kMinimal) + "stepper.dt = fast\n").key(), "stepper.dt");
  EXPECT_EQ(parse_error(std::string(kMinimal) + "initial.taylor_green.width = 1\n").key(),
            "initial.taylor_green.width");
  EXPECT_EQ(parse_error(std::string(kMinimal) + "model.rotation = sideways\n").key(), "model.rotation");

  EXPECT_EQ(nearest_key("viscocity", {"velocity", "viscosity", "vorticity"}), "viscosity");
}

TEST(Config, EchoRoundTrip) {
  const std::string text =
      "grid.n = 32\n"
      "grid.L = 6.283185307179586\n"
      "# comment line\n"
      "model.rotation = full\n"
      "model.alpha = 2.5   # trailing comment\n"
      "stepper.scheme = IF-SSPRK3\n"
      "diagnostics.p_list = 1.5, 3, inf\n"
      "diagnostics.f_choice = log_power\n"
      "initial.generators = taylor_green, random_band\n"
      "initial.random_band.k_max = 3\n"
      "outputs.snapshot_times = 0.1, 0.3333333333333333\n"
      "checks.fit_window = 1, 2\n";
  const RunConfig c = parse_config_text(text);
  EXPECT_EQ(c.model.alpha, 2.5);
  EXPECT_TRUE(std::isinf(c.diagnostics.p_list.back()));
  EXPECT_EQ(c.initial[1].params.at("k_max"), 3.0);
  EXPECT_EQ(parse_config_text(echo_config(c)), c);
  EXPECT_EQ(echo_config(parse_config_text(echo_config(c))), echo_config(c));
}

TEST(Config, ReferenceListsEveryKey) {
  const std::string echo = echo_config(parse_config_text(kMinimal));
  for (const ConfigKeyInfo& k : config_reference()) {
    if (k.key.rfind("initial.", 0) == 0 && k.key != "initial.generators" &&
        k.key.rfind("initial.taylor_green.", 0) != 0) {
      continue;
    }
    EXPECT_NE(echo.find(k.key + " = "), std::string::npos) << k.key;
    EXPECT_FALSE(k.description.empty());
  }
}

TEST(Generators, TaylorGreenIsDivergenceFree) {
  const GridSpec g{32, 2 * kPi, 2.0 / 3.0};
  const State s = generate_initial(GeneratorSpec{"taylor_green", {{"amplitude", 1.0}, {"k", 2}}}, g);
  EXPECT_LT(oracle::max_abs_value(divergence(s.u)), 1e-13);
  EXPECT_GT(oracle::max_abs_value(s.u.u1), 0.5);
  EXPECT_EQ(oracle::max_abs_value(s.tau.t11), 0.0);
}

TEST(Generators, ConstantTauHasOnlyTheZeroMode) {
  const GridSpec g{16, 3.0, 2.0 / 3.0};
  const State s = generate_initial(GeneratorSpec{"constant_tau", {{"value", 0.7}}}, g);
  const ScalarField t = as_spectral(s.tau.t11);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j <= g.n / 2; ++j) {
      if (i == 0 && j == 0) continue;
      ASSERT_EQ(std::abs(t.mode(i, j)), 0.0);
    }
  EXPECT_NEAR(mean(s.tau.t22), 0.7, 1e-15);
  EXPECT_EQ(oracle::max_abs_value(s.tau.t12), 0.0);
}

TEST(Generators, LocalizedVortexVanishesAtBoundary) {
  const double L = 20.0;
  const GridSpec g{128, L, 2.0 / 3.0};
  const double A = 2.0;
  const State s = generate_initial(GeneratorSpec{"localized_vortex", {{"amplitude", A}, {"width", L / 20}}}, g);
  const ScalarField u1 = as_real(s.u.u1), u2 = as_real(s.u.u2);
  double boundary = 0.0;
  for (int i = 0; i < g.n; ++i) {
    boundary = std::max({boundary, std::abs(u1.at(i, 0)), std::abs(u2.at(i, 0)), std::abs(u1.at(0, i)),
                         std::abs(u2.at(0, i))});
  }
  EXPECT_LE(boundary, 1e-12 * A);
  EXPECT_LT(std::abs(mean(curl2d(s.u))), 1e-14);
  EXPECT_LT(oracle::max_abs_value(divergence(s.u)), 1e-12);
}

TEST(Generators, Errors) {
  const GridSpec g{32, 10.0, 2.0 / 3.0};
  EXPECT_THROW(generate_initial(GeneratorSpec{"localized_vortex", {{"width", 0.5}}}, g), ResolutionError);
  EXPECT_THROW(generate_initial(GeneratorSpec{"localized_vortex", {{"width", 4.0}}}, g), ConfigError);
  EXPECT_THROW(generate_initial(GeneratorSpec{"swirl", {}}, g), ConfigError);
  EXPECT_THROW(generate_initial(GeneratorSpec{"taylor_green", {{"radius", 1.0}}}, g), ConfigError);
  EXPECT_THROW(generate_initial(GeneratorSpec{"random_band", {{"k_max", 14}}}, g), ConfigError);
}

TEST(Generators, RandomBandIsSeeded) {
  const GridSpec g{16, 2 * kPi, 2.0 / 3.0};
  const GeneratorSpec spec{"random_band", {}};
  const State a = generate_initial(spec, g, 4), b = generate_initial(spec, g, 4), c = generate_initial(spec, g, 5);
  EXPECT_EQ(oracle::max_diff(a.tau.t12, b.tau.t12), 0.0);
  EXPECT_GT(oracle::max_diff(a.tau.t12, c.tau.t12), 0.0);
}

TEST(Experiment, ZeroLengthRunWritesArtifacts) {
  RunConfig c = parse_config_text(kMinimal);
  c.stepper.t_end = 0.0;
  c.outputs.directory = scratch("zero");
  c.outputs.snapshot_times = {0.0};
  const ExperimentResult r = run_experiment(c);
  EXPECT_EQ(r.exit_code, kExitOk);
  EXPECT_EQ(r.history.records.size(), 1u);
  for (const char* f : {"config.echo", "diagnostics.csv", "summary.txt", "summary.kv", "snapshot_0.bin"}) {
    EXPECT_TRUE(std::filesystem::exists(c.outputs.directory / f)) << f;
  }
  EXPECT_EQ(parse_config(c.outputs.directory / "config.echo"), c);
  EXPECT_EQ(read_csv(c.outputs.directory / "diagnostics.csv").rows.size(), 1u);
  const Snapshot snap = read_snapshot(c.outputs.directory / "snapshot_0.bin");
  EXPECT_EQ(snap.components.size(), 5u);
  std::filesystem::remove_all(c.outputs.directory);
}

TEST(Experiment, BlowUpExitsWithCodeThree) {
  RunConfig c = parse_config_text(
      "grid.n = 16\ngrid.L = 6.283185307179586\nmodel.a = 0\nmodel.mu = 0\n"
      "initial.generators = random_band\ninitial.random_band.amplitude_u = 1e6\n"
      "initial.random_band.amplitude_tau = 0\nstepper.dt = 0.1\nstepper.t_end = 10\n");
  c.outputs.directory = scratch("blowup");
  const ExperimentResult r = run_experiment(c);
  EXPECT_EQ(r.exit_code, kExitBlowUp);
  EXPECT_EQ(r.report.status, "blowup");
  ASSERT_TRUE(r.report.blowup_time.has_value());
  EXPECT_TRUE(std::filesystem::exists(c.outputs.directory / "summary.kv"));
  std::filesystem::remove_all(c.outputs.directory);
}

TEST(Summary, ZeroCsvAndSyntheticPowerLaw) {
  const auto dir = scratch("summary");
  auto write = [&](const std::string& name, auto fill) {
    std::ofstream os(dir / name);
    write_csv_header(os);
    for (int k = 0; k <= 40; ++k) {
      DiagnosticsRecord r;
      r.t = 0.5 * k;
      fill(r);
      write_csv_row(os, r);
    }
    return dir / name;
  };
  const auto zero = write("zero.csv", [](DiagnosticsRecord&) {});
  ChecksConfig checks;
  checks.fit_window = {0.0, 20.0};
  const Report rz = summarize_csv(read_csv(zero), checks, ModelParams{});
  bool saw_fit = false;
  for (const auto& c : rz.checks) {
    if (c.name == "e_eta_monotonicity") {
      EXPECT_EQ(*c.observed, 0.0);
      EXPECT_EQ(c.verdict, Verdict::pass);
    }
    if (c.name.rfind("decay_exponent", 0) == 0) {
      saw_fit = true;
      EXPECT_EQ(c.verdict, Verdict::insufficient_signal);
    }
  }
  EXPECT_TRUE(saw_fit);

  const auto power = write("power.csv", [](DiagnosticsRecord& r) {
    r.l2_u = std::pow(1 + r.t, -0.5);
    r.l2_tau = 2 * std::pow(1 + r.t, -0.5);
    r.grad_l2_u = std::pow(1 + r.t, -1.0);
    r.grad_l2_tau = 0.5 * std::pow(1 + r.t, -1.0);
    r.e_eta = 1.0 / (1 + r.t);
  });
  const Report rp = summarize_csv(read_csv(power), checks, ModelParams{});
  EXPECT_FALSE(rp.failed());
  for (const auto& c : rp.checks) {
    if (c.name == "decay_exponent_l2") EXPECT_NEAR(*c.observed, -0.5, 1e-10);
    if (c.name == "decay_exponent_grad") EXPECT_NEAR(*c.observed, -1.0, 1e-10);
  }
  std::filesystem::remove_all(dir);
}

TEST(Cli, ExitCodesAndOutputs) {
  const auto dir = scratch("cli");
  std::string out, err;
  EXPECT_EQ(cli({"dispersion", "--kmax", "3"}, &out), kExitOk);
  std::istringstream lines(out);
  std::string header, row;
  std::getline(lines, header);
  EXPECT_EQ(header, "k,re_lambda_plus,im_lambda_plus,re_lambda_minus,im_lambda_minus");
  int rows = 0;
  while (std::getline(lines, row)) ++rows;
  EXPECT_EQ(rows, 3);

  EXPECT_EQ(cli({"dispersion", "--kmax", "-1"}), kExitConfigError);
  EXPECT_EQ(cli({"frobnicate"}), kExitConfigError);
  EXPECT_EQ(cli({"run", (dir / "missing.cfg").string()}), kExitConfigError);

  {
    std::ofstream os(dir / "typo.cfg");
    os << kMinimal << "model.alhpa = 1\n";
  }
  EXPECT_EQ(cli({"run", (dir / "typo.cfg").string()}, &out, &err), kExitConfigError);
  EXPECT_NE(err.find("model.alpha"), std::string::npos);

  {
    std::ofstream os(dir / "ok.cfg");
    os << kMinimal << "stepper.t_end = 0.05\nstepper.dt = 0.01\noutputs.snapshot_times = 0.05\n"
       << "outputs.directory = " << (dir / "run").string() << "\n";
  }
  EXPECT_EQ(cli({"run", (dir / "ok.cfg").string()}, &out), kExitOk);
  EXPECT_NE(out.find("Overall"), std::string::npos);

  EXPECT_EQ(cli({"norms", (dir / "run" / "snapshot_0.bin").string(), "--besov", "0,2,2", "--besov",
                 "-1,2,inf", "--homogeneous", "both"},
                &out),
            kExitOk);
  EXPECT_EQ(std::count(out.begin(), out.end(), '\n'), 5);
  EXPECT_EQ(cli({"norms", (dir / "run" / "snapshot_0.bin").string(), "--besov", "0,0.5,2"}), kExitConfigError);

  EXPECT_EQ(cli({"summarize", (dir / "run" / "diagnostics.csv").string()}, &out), kExitOk);
  EXPECT_NE(out.find("overall = pass"), std::string::npos);
  {
    std::ofstream os(dir / "bad.csv");
    os << "t\n0\n";
  }
  EXPECT_EQ(cli({"summarize", (dir / "bad.csv").string()}), kExitConfigError);
  std::filesystem::remove_all(dir);
}
