#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aoi/model.h"
#include "aoi/report.h"
#include "aoi/sim.h"

// Canned experiments: the zero-feedback generate-at-will table for four
// sources and the imperfect-feedback Bernoulli-traffic sweeps for twelve.

namespace aoi {

struct PresetOptions {
  Slot horizon = 1'000'000;
  std::size_t replications = 10;
  std::uint64_t seed = 1;
};

// Four sources, epsilon 0.1, weights 1:4:9:36, fresh packet every slot, no
// feedback.
NetworkConfig gaw_table_network(double rho);
std::vector<double> gaw_table_rhos();

struct PublishedRow {
  double rho;
  double cyclic;
  double lagrange_greedy;
};
// External baselines, copied from the literature; never simulated here.
std::vector<PublishedRow> published_baselines();

std::vector<ReportRow> gaw_table_rows(const PresetOptions& options);

// Twelve sources in four equal groups with weights 1:4:7:10.
NetworkConfig bernoulli_network(double lambda, double epsilon, double sigma, Slot delay,
                                double rho, Mechanism mechanism = Mechanism::AcksNacks);

struct BernoulliSweep {
  std::string name;   // used as the output file stem
  std::string axis;   // delay | sigma | rho | lambda
  std::vector<double> values;
  NetworkConfig base;
  Trend expected;     // direction of EWSAoI along increasing values
};
std::vector<BernoulliSweep> bernoulli_sweeps();

// Policies per point, in this order: dpp_acks, dpp_acks_nacks, randomized,
// randomized_analytic, round_robin.
std::vector<ReportRow> bernoulli_rows(const BernoulliSweep& sweep,
                                      const PresetOptions& options);

std::vector<std::string> preset_names();

// Writes the preset's CSV files into out_dir (created if needed) and
// returns their paths. Throws ParameterError for an unknown name.
std::vector<std::string> run_preset(const std::string& name, const std::string& out_dir,
                                    const PresetOptions& options);

}  // namespace aoi
