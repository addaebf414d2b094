#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "aoi/bounds.h"
#include "aoi/model.h"

namespace testing_support {

// Weights 1:4:9:36, epsilon 0.1, four sources.
inline aoi::BoundInputs table_inputs(double rho) {
  aoi::BoundInputs in;
  in.alphas = {1.0 / 50, 4.0 / 50, 9.0 / 50, 36.0 / 50};
  in.epsilons = {0.1, 0.1, 0.1, 0.1};
  in.rho = rho;
  return in;
}

inline aoi::BoundInputs symmetric_inputs(std::size_t N, double eps, double rho) {
  aoi::BoundInputs in;
  in.alphas.assign(N, 1.0 / static_cast<double>(N));
  in.epsilons.assign(N, eps);
  in.rho = rho;
  return in;
}

inline aoi::NetworkConfig single_source(double lambda, double eps, double sigma,
                                        aoi::Slot delay, double rho, aoi::Slot horizon) {
  aoi::NetworkConfig c;
  c.rho = rho;
  c.horizon = horizon;
  c.sources.push_back(aoi::SourceParams{lambda, eps, sigma, delay, 1.0});
  return c;
}

// Relaxed finite-horizon objective, built densely from the Toeplitz matrix
// with entries eps^|i-j|.
inline double quadratic_form(const std::vector<double>& x, double eps, double T) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j)
      s += std::pow(eps, std::abs(static_cast<double>(i) - static_cast<double>(j))) * x[i] * x[j];
  return s / (2.0 * T) + 0.5;
}

// Minimizer of the quadratic form subject only to sum(x) = T, found by
// solving A y = e with Gaussian elimination and rescaling.
inline std::vector<double> equality_constrained_minimizer(std::size_t dim, double eps,
                                                          double T) {
  std::vector<std::vector<double>> a(dim, std::vector<double>(dim + 1, 1.0));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      a[i][j] = std::pow(eps, std::abs(static_cast<double>(i) - static_cast<double>(j)));
  for (std::size_t c = 0; c < dim; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < dim; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    for (std::size_t r = 0; r < dim; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k <= dim; ++k) a[r][k] -= f * a[c][k];
    }
  }
  std::vector<double> y(dim);
  double sum = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    y[i] = a[i][dim] / a[i][i];
    sum += y[i];
  }
  for (auto& v : y) v *= T / sum;
  return y;
}

}  // namespace testing_support
