#include "aoi/policy.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "aoi/errors.h"

namespace aoi {

double virtual_queue_update(double Q, double rho, int transmissions) {
  return std::max(Q - rho + static_cast<double>(transmissions), 0.0);
}

namespace {

Decision threshold(double V, double Q, std::size_t best, double best_index) {
  if (V * Q <= best_index) return Decision{best};
  return Decision{};
}

}  // namespace

DppPolicy::DppPolicy(const BoundInputs& inputs) : V_(inputs.V), eta_(eta_star(inputs)) {
  const std::size_t N = inputs.size();
  theta_.resize(N);
  gain_.resize(N);
  for (std::size_t n = 0; n < N; ++n) {
    theta_[n] = aoi::theta(inputs.alphas[n], inputs.epsilons[n], eta_[n]);
    gain_[n] = inputs.alphas[n] / eta_[n];
  }
}

Decision DppPolicy::decide(double Q, std::span<const double> hhat,
                           std::span<const Slot> w) const {
  std::size_t best = 0;
  double best_index = -std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < gain_.size(); ++n) {
    const double index = gain_[n] * (hhat[n] - static_cast<double>(w[n]));
    if (index > best_index) {
      best_index = index;
      best = n;
    }
  }
  return threshold(V_, Q, best, best_index);
}

Decision dpp_decide(double V, double Q, std::span<const double> alpha,
                    std::span<const double> eta, std::span<const double> hhat,
                    std::span<const Slot> w) {
  if (alpha.empty()) return Decision{};
  std::size_t best = 0;
  double best_index = -std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < alpha.size(); ++n) {
    const double index = alpha[n] * (hhat[n] - static_cast<double>(w[n])) / eta[n];
    if (index > best_index) {
      best_index = index;
      best = n;
    }
  }
  return threshold(V, Q, best, best_index);
}

Decision randomized_decide(std::span<const double> eta, Rng& rng) {
  const double u = uniform01(rng);
  double cum = 0.0;
  for (std::size_t n = 0; n < eta.size(); ++n) {
    cum += eta[n];
    if (u < cum) return Decision{n};
  }
  return Decision{};
}

Decision eus_decide(const CyclicSchedule& schedule, Slot t) {
  const int n = scheduled_source(schedule, t);
  if (n < 0) return Decision{};
  return Decision{static_cast<std::size_t>(n)};
}

Decision round_robin_decide(std::size_t N, double rho, Slot t) {
  if (N == 0) return Decision{};
  const double td = static_cast<double>(t);
  const double now = std::floor(td * rho);
  if (!(std::floor((td + 1.0) * rho) > now)) return Decision{};
  const auto k = static_cast<std::uint64_t>(now);
  return Decision{static_cast<std::size_t>(k % N)};
}

std::string to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::Dpp: return "dpp";
    case PolicyKind::Randomized: return "randomized";
    case PolicyKind::Eus: return "eus";
    case PolicyKind::RoundRobin: return "round_robin";
  }
  return "?";
}

PolicyKind policy_from_string(const std::string& name) {
  if (name == "dpp") return PolicyKind::Dpp;
  if (name == "randomized") return PolicyKind::Randomized;
  if (name == "eus") return PolicyKind::Eus;
  if (name == "round_robin") return PolicyKind::RoundRobin;
  throw ParameterError("unknown policy '" + name + "'");
}

}  // namespace aoi
