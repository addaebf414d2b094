#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "aoi/model.h"
#include "aoi/sim.h"

// Line-oriented experiment description:
//
//   rho = 0.5                 # mandatory
//   mechanism = ACKS_NACKS    # or ACKS
//   horizon = 1000000
//   seed = 1
//   policy = dpp              # dpp | randomized | eus | round_robin
//   V = 1
//   replications = 10
//   sweep = delay: 0, 5, 10   # rho | epsilon | sigma | delay | lambda | V
//   output = results.csv
//
//   [source]
//   repeat = 3                # copies of this section, default 1
//   epsilon = 0.2             # mandatory
//   lambda = 0.5
//   sigma = 0.2
//   delay = 10                # or inf
//   alpha = 1

namespace aoi {

struct Sweep {
  std::string parameter;
  std::vector<double> values;

  bool operator==(const Sweep&) const = default;
};

struct ExperimentSpec {
  NetworkConfig network;
  PolicyKind policy = PolicyKind::Dpp;
  double V = 1.0;
  std::size_t replications = 10;
  std::optional<Sweep> sweep;
  std::string output;
  std::vector<std::string> warnings;  // not part of equality

  bool operator==(const ExperimentSpec& o) const {
    return network == o.network && policy == o.policy && V == o.V &&
           replications == o.replications && sweep == o.sweep && output == o.output;
  }
};

// Throws ParseError (with the offending line) on malformed lines, unknown or
// duplicate keys, out-of-range values, or missing mandatory keys. Weights
// that do not sum to one are rescaled and a warning is recorded.
ExperimentSpec parse_config(const std::string& text);
ExperimentSpec load_config(const std::string& path);

// Emits every source as its own section with round-trip precision.
std::string serialize_config(const ExperimentSpec& spec);

// Copy of spec with the sweep parameter set to value (for every source when
// it is a per-source key) and the sweep removed. Throws ParameterError for an
// unknown parameter or an out-of-range value.
ExperimentSpec apply_sweep(const ExperimentSpec& spec, const std::string& parameter,
                           double value);

}  // namespace aoi
