#include "aoi/bounds.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "aoi/errors.h"

namespace aoi {

namespace {

void check_epsilon(double eps) {
  if (!(eps >= 0.0 && eps < 1.0))
    throw ParameterError("epsilon must lie in [0,1), got " + std::to_string(eps));
}

double lambda_at(const BoundInputs& in, std::size_t n) {
  return in.lambdas.empty() ? 1.0 : in.lambdas[n];
}

// Normalizes the per-source weights so that they sum to rho.
RateSplit proportional_split(std::vector<double> w, double rho) {
  const double sum = std::accumulate(w.begin(), w.end(), 0.0);
  for (auto& x : w) x = rho * x / sum;
  return w;
}

double sum_sqrt(const BoundInputs& in, bool with_plus) {
  double s = 0.0;
  for (std::size_t n = 0; n < in.size(); ++n) {
    const double e = in.epsilons[n];
    s += std::sqrt(in.alphas[n] * (with_plus ? 1.0 + e : 1.0) / (1.0 - e));
  }
  return s;
}

}  // namespace

BoundInputs bound_inputs(const NetworkConfig& config, double V) {
  BoundInputs in;
  in.rho = config.rho;
  in.V = V;
  for (const auto& s : config.sources) {
    in.alphas.push_back(s.alpha);
    in.epsilons.push_back(s.epsilon);
    in.lambdas.push_back(s.lambda);
  }
  return in;
}

void validate(const BoundInputs& in) {
  if (in.alphas.empty()) throw ParameterError("no sources");
  if (in.epsilons.size() != in.alphas.size())
    throw ParameterError("alphas and epsilons differ in length");
  if (!in.lambdas.empty() && in.lambdas.size() != in.alphas.size())
    throw ParameterError("alphas and lambdas differ in length");
  if (!(in.rho > 0.0 && in.rho <= 1.0))
    throw ParameterError("rho must lie in (0,1], got " + std::to_string(in.rho));
  if (!(in.V >= 0.0 && std::isfinite(in.V))) throw ParameterError("V must be non-negative");
  double sum = 0.0;
  for (std::size_t n = 0; n < in.size(); ++n) {
    if (!(in.alphas[n] > 0.0)) throw ParameterError("alpha must be positive");
    check_epsilon(in.epsilons[n]);
    const double lam = lambda_at(in, n);
    if (!(lam > 0.0 && lam <= 1.0)) throw ParameterError("lambda must lie in (0,1]");
    sum += in.alphas[n];
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw ParameterError("alpha weights must sum to 1, got " + std::to_string(sum));
}

double f_star(double T, double U, double epsilon) {
  if (!(T >= 1.0)) throw ParameterError("T must be at least 1");
  if (!(U >= 0.0)) throw ParameterError("U must be non-negative");
  check_epsilon(epsilon);
  return 0.5 * T * (1.0 + epsilon) / (2.0 + (U - 1.0) * (1.0 - epsilon)) + 0.5;
}

std::vector<double> x_star(double T, std::size_t U, double epsilon) {
  if (!(T >= 1.0)) throw ParameterError("T must be at least 1");
  check_epsilon(epsilon);
  if (U == 0) return {T};
  const double denom = 2.0 + (static_cast<double>(U) - 1.0) * (1.0 - epsilon);
  std::vector<double> x(U + 1, T * (1.0 - epsilon) / denom);
  x.front() = x.back() = T / denom;
  return x;
}

double single_source_lb(double rho_n, double epsilon) {
  if (!(rho_n > 0.0 && rho_n <= 1.0)) throw ParameterError("rate must lie in (0,1]");
  check_epsilon(epsilon);
  return (1.0 + epsilon) / (2.0 * rho_n * (1.0 - epsilon)) + 0.5;
}

RateSplit rate_split(const BoundInputs& in) {
  validate(in);
  std::vector<double> w(in.size());
  for (std::size_t n = 0; n < in.size(); ++n) {
    const double e = in.epsilons[n];
    w[n] = std::sqrt(in.alphas[n] * (1.0 + e) / (1.0 - e));
  }
  return proportional_split(std::move(w), in.rho);
}

double zero_fb_lb(const BoundInputs& in) {
  validate(in);
  const double s = sum_sqrt(in, true);
  return s * s / (2.0 * in.rho) + 0.5;
}

double perfect_fb_lb(const BoundInputs& in) {
  validate(in);
  const double s = sum_sqrt(in, false);
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < in.size(); ++n)
    m = std::min(m, in.alphas[n] * in.epsilons[n] / (1.0 - in.epsilons[n]));
  return s * s / (2.0 * in.rho) + 0.5 * in.rho * m + 0.5;
}

FiniteHorizonBound finite_horizon_lb(const BoundInputs& in, double T) {
  validate(in);
  if (!(T >= 1.0)) throw ParameterError("T must be at least 1");
  const std::size_t N = in.size();

  // Stationarity: alpha T^2 (1-e^2) / (2 (2 + (T r - 1)(1-e))^2) = mu.
  auto rate_at = [&](std::size_t n, double mu) {
    const double e = in.epsilons[n];
    const double r =
        (std::sqrt(in.alphas[n] * T * T * (1.0 - e * e) / (2.0 * mu)) - (1.0 + e)) /
        (T * (1.0 - e));
    return std::clamp(r, 0.0, in.rho);
  };
  auto excess = [&](double mu) {
    double s = 0.0;
    for (std::size_t n = 0; n < N; ++n) s += rate_at(n, mu);
    return s - in.rho;
  };

  // mu_hi drives every rate to zero, mu_lo saturates every rate at rho.
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (std::size_t n = 0; n < N; ++n) {
    const double e = in.epsilons[n];
    const double c = in.alphas[n] * T * T * (1.0 - e * e) / 2.0;
    const double top = T * in.rho * (1.0 - e) + 1.0 + e;
    lo = std::min(lo, c / (top * top));
    hi = std::max(hi, c / ((1.0 + e) * (1.0 + e)));
  }
  double log_lo = std::log(lo) - 1.0;
  double log_hi = std::log(hi) + 1.0;

  FiniteHorizonBound out;
  double mu = std::exp(0.5 * (log_lo + log_hi));
  double res = excess(mu);
  for (out.iterations = 1; out.iterations <= 200; ++out.iterations) {
    mu = std::exp(0.5 * (log_lo + log_hi));
    res = excess(mu);
    if (std::abs(res) < 1e-10) break;
    if (res > 0.0)
      log_lo = std::log(mu);
    else
      log_hi = std::log(mu);
  }
  if (!(std::abs(res) < 1e-10))
    throw NumericError("finite-horizon multiplier search did not converge, residual " +
                       std::to_string(res));

  out.residual = res;
  out.rates.resize(N);
  for (std::size_t n = 0; n < N; ++n) {
    out.rates[n] = rate_at(n, mu);
    const double e = in.epsilons[n];
    out.value += in.alphas[n] * (0.5 * T * (1.0 + e) /
                                     (2.0 + (T * out.rates[n] - 1.0) * (1.0 - e)) +
                                 0.5);
  }
  return out;
}

RateSplit eta_star(const BoundInputs& in) {
  validate(in);
  std::vector<double> w(in.size());
  for (std::size_t n = 0; n < in.size(); ++n)
    w[n] = std::sqrt(in.alphas[n] / (1.0 - in.epsilons[n]));
  return proportional_split(std::move(w), in.rho);
}

double theta(double alpha, double epsilon, double eta) {
  const double s = (1.0 - epsilon) * eta;
  if (!(s > 0.0)) throw ParameterError("theta needs (1-epsilon) eta > 0");
  return alpha * (1.0 - s) / s;
}

double randomized_ewsaoi(const BoundInputs& in, std::span<const double> eta) {
  validate(in);
  if (eta.size() != in.size()) throw ParameterError("eta has the wrong length");
  double j = 0.0;
  for (std::size_t n = 0; n < in.size(); ++n) {
    if (!(eta[n] > 0.0)) throw ParameterError("eta entries must be positive");
    const double lam = lambda_at(in, n);
    j += in.alphas[n] * (1.0 / ((1.0 - in.epsilons[n]) * eta[n]) + (1.0 - lam) / lam);
  }
  return j;
}

double dpp_upper_bound(const BoundInputs& in) {
  const auto eta = eta_star(in);
  return in.V * (in.rho * in.rho + 1.0) / 2.0 + randomized_ewsaoi(in, eta);
}

double eus_ewsaoi(const BoundInputs& in, std::span<const double> split) {
  validate(in);
  if (split.size() != in.size()) throw ParameterError("split has the wrong length");
  double j = 0.0;
  for (std::size_t n = 0; n < in.size(); ++n)
    j += in.alphas[n] * single_source_lb(split[n], in.epsilons[n]);
  return j;
}

}  // namespace aoi
