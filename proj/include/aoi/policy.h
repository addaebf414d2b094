#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aoi/bounds.h"
#include "aoi/eus.h"
#include "aoi/model.h"

namespace aoi {

// Source scheduled in a slot (0-based), or none.
struct Decision {
  std::optional<std::size_t> scheduled;

  bool idle() const noexcept { return !scheduled.has_value(); }
  bool operator==(const Decision&) const = default;
};

// Budget-overuse accumulator: max(Q - rho + transmissions, 0).
double virtual_queue_update(double Q, double rho, int transmissions);

// Drift-plus-penalty threshold policy. Each source carries the index
// alpha (hhat - w) / eta*; the best index is scheduled when it reaches V Q.
class DppPolicy {
 public:
  explicit DppPolicy(const BoundInputs& inputs);

  // hhat and w are the per-source estimates and local ages at the decision
  // epoch. Ties go to the lowest source index; V Q == index transmits.
  Decision decide(double Q, std::span<const double> hhat, std::span<const Slot> w) const;

  double V() const noexcept { return V_; }
  const std::vector<double>& eta() const noexcept { return eta_; }
  const std::vector<double>& theta() const noexcept { return theta_; }

 private:
  double V_;
  std::vector<double> eta_;
  std::vector<double> theta_;
  std::vector<double> gain_;  // alpha / eta*
};

// Free-function form of the decision rule with explicit per-source inputs.
Decision dpp_decide(double V, double Q, std::span<const double> alpha,
                    std::span<const double> eta, std::span<const double> hhat,
                    std::span<const Slot> w);

// Schedules source n with probability eta_n using one uniform draw.
Decision randomized_decide(std::span<const double> eta, Rng& rng);

Decision eus_decide(const CyclicSchedule& schedule, Slot t);

// Transmission opportunities are slots where floor((t+1) rho) > floor(t rho);
// the k-th opportunity goes to source k mod N.
Decision round_robin_decide(std::size_t N, double rho, Slot t);

enum class PolicyKind { Dpp, Randomized, Eus, RoundRobin };

std::string to_string(PolicyKind kind);
PolicyKind policy_from_string(const std::string& name);  // throws ParameterError

}  // namespace aoi
