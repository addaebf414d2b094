#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aoi/bounds.h"
#include "aoi/config.h"
#include "aoi/errors.h"
#include "aoi/presets.h"
#include "aoi/report.h"
#include "aoi/sim.h"

namespace {

enum Exit { kOk = 0, kFailure = 1, kInput = 2, kNumeric = 3 };

std::vector<aoi::ReportRow> run_spec(const aoi::ExperimentSpec& spec) {
  std::vector<aoi::ReportRow> rows;
  auto one = [&](const aoi::ExperimentSpec& s, std::optional<double> x) {
    aoi::PolicySpec policy;
    policy.kind = s.policy;
    policy.V = s.V;
    const auto report = aoi::run_experiment(s.network, policy, s.replications);
    auto row = aoi::make_row(x, aoi::to_string(s.policy), report);
    aoi::BoundInputs in = aoi::bound_inputs(s.network, s.V);
    bool zero_fb_gaw = true;
    for (const auto& src : s.network.sources)
      zero_fb_gaw = zero_fb_gaw && src.zero_feedback() && src.lambda >= 1.0;
    row.bound_lower = zero_fb_gaw ? aoi::zero_fb_lb(in) : aoi::perfect_fb_lb(in);
    if (s.policy == aoi::PolicyKind::Dpp) row.bound_upper = aoi::dpp_upper_bound(in);
    rows.push_back(row);
  };
  if (!spec.sweep) {
    one(spec, std::nullopt);
  } else {
    for (double v : spec.sweep->values)
      one(aoi::apply_sweep(spec, spec.sweep->parameter, v), v);
  }
  return rows;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Age-of-information scheduling simulator"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  auto* run = app.add_subcommand("run", "simulate the experiment described by a config file");
  run->add_option("--config", config_path, "config file")->required();
  run->add_option("--out", out_path, "CSV output (overrides the config's output key)");

  std::string preset, out_dir = ".";
  aoi::PresetOptions opts;
  auto* pre = app.add_subcommand("preset", "run a canned experiment");
  pre->add_option("name", preset, "gaw-table | bernoulli-imperfect")->required();
  pre->add_option("--out", out_dir, "output directory");
  pre->add_option("--horizon", opts.horizon, "slots per replication");
  pre->add_option("--reps", opts.replications, "replications per point")
      ->check(CLI::PositiveNumber);
  pre->add_option("--seed", opts.seed, "base seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (*run) {
      const auto spec = aoi::load_config(config_path);
      for (const auto& w : spec.warnings) std::cerr << "warning: " << w << '\n';
      const auto rows = run_spec(spec);
      const std::string target = out_path.empty() ? spec.output : out_path;
      if (target.empty())
        aoi::write_csv(std::cout, rows);
      else
        aoi::emit_csv(rows, target);
    } else {
      for (const auto& path : aoi::run_preset(preset, out_dir, opts)) std::cout << path << '\n';
    }
  } catch (const aoi::ParseError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kInput;
  } catch (const aoi::ParameterError& e) {
    std::cerr << "invalid parameter: " << e.what() << '\n';
    return kInput;
  } catch (const aoi::ValidationError& e) {
    std::cerr << "validation failed: " << e.what() << '\n';
    return kInput;
  } catch (const aoi::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kOk;
}
