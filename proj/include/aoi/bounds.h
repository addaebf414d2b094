#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "aoi/model.h"

// Closed-form analytics for the constrained AoI scheduling problem: relaxed
// finite-horizon optimum, zero- and perfect-feedback lower bounds, optimal
// rate splits, and the drift-plus-penalty performance guarantee.
//
// All functions are pure and use double precision.

namespace aoi {

struct BoundInputs {
  std::vector<double> alphas;    // normalized priority weights
  std::vector<double> epsilons;  // downlink error probabilities
  double rho = 1.0;              // transmission budget
  std::vector<double> lambdas;   // generation probabilities; empty means all ones
  double V = 1.0;                // drift-plus-penalty trade-off

  std::size_t size() const noexcept { return alphas.size(); }
};

// Per-source rates rho_n (or randomized scheduling probabilities eta_n).
using RateSplit = std::vector<double>;

BoundInputs bound_inputs(const NetworkConfig& config, double V = 1.0);

// Throws ParameterError on mismatched dimensions, unnormalized weights, or
// probabilities outside their ranges.
void validate(const BoundInputs& in);

// Minimum of the relaxed average-AoI quadratic form over T slots with U
// transmissions spread over U+1 intervals.
double f_star(double T, double U, double epsilon);

// Minimizing interval lengths: the two boundary intervals are longer than the
// interior ones by a factor 1/(1-epsilon). For U = 0 the only interval is T.
std::vector<double> x_star(double T, std::size_t U, double epsilon);

double single_source_lb(double rho_n, double epsilon);

// rho_n proportional to sqrt(alpha_n (1+eps_n)/(1-eps_n)), summing to rho.
RateSplit rate_split(const BoundInputs& in);

// Lower bound on the expected weighted-sum AoI of any policy with zero
// feedback and generate-at-will traffic under rate budget rho.
double zero_fb_lb(const BoundInputs& in);

// Comparison bound for instantaneous error-free feedback.
double perfect_fb_lb(const BoundInputs& in);

struct FiniteHorizonBound {
  double value = 0.0;
  RateSplit rates;          // KKT-optimal split
  double residual = 0.0;    // sum(rates) - rho
  int iterations = 0;
};

// Finite-horizon lower bound. The separable convex program over the split is
// solved by bisection on the multiplier of sum(rho_n) <= rho, with each
// stationarity condition inverted analytically and clipped to [0, rho].
// Throws NumericError when the residual stays above 1e-10 after 200 steps.
FiniteHorizonBound finite_horizon_lb(const BoundInputs& in, double T);

// Scheduling probabilities of the optimal stationary randomized policy,
// proportional to sqrt(alpha_n/(1-eps_n)).
RateSplit eta_star(const BoundInputs& in);

// Lyapunov weight of the AoI term that makes the virtual queue mean-rate stable.
double theta(double alpha, double epsilon, double eta);

// EWSAoI of the stationary randomized policy with probabilities eta.
double randomized_ewsaoi(const BoundInputs& in, std::span<const double> eta);

// V(rho^2+1)/2 + randomized_ewsaoi(eta_star).
double dpp_upper_bound(const BoundInputs& in);

// EWSAoI of an exact uniform scheduler transmitting source n every 1/split_n slots.
double eus_ewsaoi(const BoundInputs& in, std::span<const double> split);

}  // namespace aoi
