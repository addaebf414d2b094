#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "aoi/estimator.h"
#include "aoi/eus.h"
#include "aoi/model.h"
#include "aoi/policy.h"

namespace aoi {

struct PolicySpec {
  PolicyKind kind = PolicyKind::Dpp;
  double V = 1.0;
  // Randomized: scheduling probabilities; empty means the optimal ones.
  std::vector<double> eta;
  // EUS: explicit schedule; when absent it is built from the optimal split
  // and the run fails with ParameterError if no splitting tree exists.
  std::optional<CyclicSchedule> schedule;
};

struct SimOptions {
  AoiEstimator::Mode estimator_mode = AoiEstimator::Mode::Fast;
  // Per-slot, per-source rows "slot,source,a,v,w,hhat,h" when set.
  std::ostream* trace = nullptr;
};

struct SimReport {
  double ewsaoi = 0.0;            // time average of sum_n alpha_n h_n
  double ewsaoi_estimated = 0.0;  // same with the AP's estimates
  double rate = 0.0;              // transmissions per slot
  double q_over_t = 0.0;          // final virtual queue over horizon
  std::uint64_t transmissions = 0;
  std::vector<double> per_source_aoi;
  std::vector<double> per_source_rate;

  bool operator==(const SimReport&) const = default;
};

struct Estimate {
  double mean = 0.0;
  double stderr_ = 0.0;  // sample standard deviation over sqrt(count)
};

Estimate summarize(std::span<const double> values);

struct ExperimentReport {
  std::vector<SimReport> replications;
  Estimate ewsaoi;
  Estimate ewsaoi_estimated;
  Estimate rate;
  Estimate q_over_t;
  std::vector<Estimate> per_source_aoi;
};

// Runs config.horizon slots with the given seed. The config must already be
// normalized; invalid input raises ParameterError before the first slot.
SimReport run_replication(const NetworkConfig& config, const PolicySpec& policy,
                          std::uint64_t seed, const SimOptions& options = {});

// Replication r uses seed config.seed + r. The parallel version distributes
// replications over OpenMP threads; both produce bitwise identical reports.
ExperimentReport run_experiment(const NetworkConfig& config, const PolicySpec& policy,
                                std::size_t replications, const SimOptions& options = {});
ExperimentReport run_experiment_serial(const NetworkConfig& config, const PolicySpec& policy,
                                       std::size_t replications,
                                       const SimOptions& options = {});

ExperimentReport aggregate(std::vector<SimReport> runs);

enum class Trend { NonDecreasing, NonIncreasing };

struct OrderingVerdict {
  bool monotone = true;
  std::size_t worst_step = 0;    // index i of the worst pair (i, i+1)
  double worst_margin = 0.0;     // most negative slack seen; >= 0 when monotone
};

// Consecutive points must follow the trend up to 2 pooled standard errors.
// With strict = true no tolerance is allowed and ties fail.
OrderingVerdict ordering_check(std::span<const Estimate> points, Trend trend,
                               bool strict = false);

}  // namespace aoi
