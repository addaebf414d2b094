#include "aoi/sim.h"

#include <cmath>
#include <numeric>
#include <ostream>

#include "aoi/bounds.h"
#include "aoi/errors.h"

namespace aoi {

namespace {

// Policy state shared read-only across replications.
struct Prepared {
  PolicyKind kind;
  std::optional<DppPolicy> dpp;
  std::vector<double> eta;
  std::optional<CyclicSchedule> schedule;
};

Prepared prepare(const NetworkConfig& config, const PolicySpec& spec) {
  validate(config);
  Prepared p{spec.kind, std::nullopt, {}, std::nullopt};
  const BoundInputs inputs = bound_inputs(config, spec.V);
  switch (spec.kind) {
    case PolicyKind::Dpp:
      p.dpp.emplace(inputs);
      break;
    case PolicyKind::Randomized: {
      p.eta = spec.eta.empty() ? eta_star(inputs) : spec.eta;
      if (p.eta.size() != config.size())
        throw ParameterError("randomized policy needs one probability per source");
      double sum = 0.0;
      for (double e : p.eta) {
        if (!(e >= 0.0)) throw ParameterError("scheduling probabilities must be non-negative");
        sum += e;
      }
      if (sum > 1.0 + 1e-12) throw ParameterError("scheduling probabilities exceed one");
      break;
    }
    case PolicyKind::Eus:
      p.schedule = spec.schedule ? spec.schedule : construct_eus(rate_split(inputs));
      if (!p.schedule) throw ParameterError("no splitting-tree schedule exists for this split");
      if (p.schedule->size() != config.size())
        throw ParameterError("schedule size differs from the number of sources");
      if (!check_eus_condition(p.schedule->offsets, p.schedule->periods))
        throw ValidationError("schedule has colliding sources");
      break;
    case PolicyKind::RoundRobin:
      break;
  }
  return p;
}

SimReport simulate(const NetworkConfig& config, const Prepared& policy, std::uint64_t seed,
                   const SimOptions& options) {
  const std::size_t N = config.size();
  const Slot T = config.horizon;

  std::vector<Rng> gen_rng, chan_rng, fb_rng;
  std::vector<AoiEstimator> est;
  std::vector<std::vector<Feedback>> ring(N);
  gen_rng.reserve(N);
  chan_rng.reserve(N);
  fb_rng.reserve(N);
  est.reserve(N);
  for (std::size_t n = 0; n < N; ++n) {
    gen_rng.push_back(make_stream(seed, n, Stream::Generation));
    chan_rng.push_back(make_stream(seed, n, Stream::Channel));
    fb_rng.push_back(make_stream(seed, n, Stream::Feedback));
    SourceParams p = config.sources[n];
    // Feedback that can never arrive within the horizon is no feedback.
    if (!p.zero_feedback() && p.delay >= T - 1) p.delay = kInfiniteDelay;
    est.emplace_back(p, config.mechanism, options.estimator_mode);
    if (est.back().has_feedback()) ring[n].assign(p.delay + 1, Feedback::None);
  }
  Rng policy_rng = make_stream(seed, 0, Stream::Policy);

  std::vector<Slot> w(N, 0), h(N, 1);
  std::vector<double> hhat(N, 1.0);
  std::vector<std::uint64_t> sum_h(N, 0), tx(N, 0);
  std::vector<double> sum_hhat(N, 0.0);
  double Q = 0.0;
  std::vector<Feedback> released(N, Feedback::None);
  // Slot t reads and then overwrites the same cell, index t mod (D+1).
  std::vector<std::size_t> cell(N, 0);

  for (Slot t = 0; t < T; ++t) {
    // Feedback about slot t-D-1 becomes usable now.
    for (std::size_t n = 0; n < N; ++n) {
      released[n] = Feedback::None;
      if (!est[n].has_feedback()) continue;
      const Slot D = ring[n].size() - 1;
      if (t < D + 1) continue;
      released[n] = ring[n][cell[n]];
      est[n].observe(released[n]);
      hhat[n] = est[n].hhat();
    }

    if (t >= 1)
      for (std::size_t n = 0; n < N; ++n) {
        const double lam = config.sources[n].lambda;
        w[n] = evolve_local_age(w[n], lam >= 1.0 || bernoulli(gen_rng[n], lam));
      }

    Decision d;
    switch (policy.kind) {
      case PolicyKind::Dpp: d = policy.dpp->decide(Q, hhat, w); break;
      case PolicyKind::Randomized: d = randomized_decide(policy.eta, policy_rng); break;
      case PolicyKind::Eus: d = eus_decide(*policy.schedule, t); break;
      case PolicyKind::RoundRobin: d = round_robin_decide(N, config.rho, t); break;
    }
    const std::size_t m = d.scheduled.value_or(N);
    const bool delivered =
        m < N && channel_outcome(true, config.sources[m].epsilon, chan_rng[m]);

    for (std::size_t n = 0; n < N; ++n) {
      const bool a = n == m;
      const bool u = a && delivered;
      sum_h[n] += h[n];
      sum_hhat[n] += hhat[n];
      Feedback v = Feedback::None;
      if (est[n].has_feedback()) {
        if (a) v = feedback_outcome(config.mechanism, true, u, config.sources[n].sigma, fb_rng[n]);
        ring[n][cell[n]] = v;
        if (++cell[n] == ring[n].size()) cell[n] = 0;
      }
      if (options.trace)
        *options.trace << t << ',' << n + 1 << ',' << int{a} << ',' << static_cast<int>(v)
                       << ',' << w[n] << ',' << hhat[n] << ',' << h[n] << '\n';
      h[n] = evolve_aoi(h[n], w[n], u);
      est[n].advance(a, w[n]);
      hhat[n] = est[n].hhat();
    }
    if (m < N) ++tx[m];
    Q = virtual_queue_update(Q, config.rho, m < N ? 1 : 0);
  }

  SimReport r;
  const double Td = static_cast<double>(T);
  r.per_source_aoi.resize(N);
  r.per_source_rate.resize(N);
  for (std::size_t n = 0; n < N; ++n) {
    const double alpha = config.sources[n].alpha;
    r.per_source_aoi[n] = static_cast<double>(sum_h[n]) / Td;
    r.per_source_rate[n] = static_cast<double>(tx[n]) / Td;
    r.ewsaoi += alpha * r.per_source_aoi[n];
    r.ewsaoi_estimated += alpha * sum_hhat[n] / Td;
    r.transmissions += tx[n];
  }
  r.rate = static_cast<double>(r.transmissions) / Td;
  r.q_over_t = Q / Td;
  return r;
}

}  // namespace

SimReport run_replication(const NetworkConfig& config, const PolicySpec& policy,
                          std::uint64_t seed, const SimOptions& options) {
  return simulate(config, prepare(config, policy), seed, options);
}

Estimate summarize(std::span<const double> values) {
  Estimate e;
  if (values.empty()) return e;
  const double k = static_cast<double>(values.size());
  e.mean = std::accumulate(values.begin(), values.end(), 0.0) / k;
  if (values.size() < 2) return e;
  double ss = 0.0;
  for (double x : values) ss += (x - e.mean) * (x - e.mean);
  e.stderr_ = std::sqrt(ss / (k - 1.0)) / std::sqrt(k);
  return e;
}

ExperimentReport aggregate(std::vector<SimReport> runs) {
  ExperimentReport out;
  auto field = [&](auto get) {
    std::vector<double> xs;
    xs.reserve(runs.size());
    for (const auto& r : runs) xs.push_back(get(r));
    return summarize(xs);
  };
  out.ewsaoi = field([](const SimReport& r) { return r.ewsaoi; });
  out.ewsaoi_estimated = field([](const SimReport& r) { return r.ewsaoi_estimated; });
  out.rate = field([](const SimReport& r) { return r.rate; });
  out.q_over_t = field([](const SimReport& r) { return r.q_over_t; });
  const std::size_t N = runs.empty() ? 0 : runs.front().per_source_aoi.size();
  for (std::size_t n = 0; n < N; ++n)
    out.per_source_aoi.push_back(field([n](const SimReport& r) { return r.per_source_aoi[n]; }));
  out.replications = std::move(runs);
  return out;
}

ExperimentReport run_experiment(const NetworkConfig& config, const PolicySpec& policy,
                                std::size_t replications, const SimOptions& options) {
  if (replications == 0) throw ParameterError("replications must be positive");
  if (options.trace) return run_experiment_serial(config, policy, replications, options);
  const Prepared prepared = prepare(config, policy);
  std::vector<SimReport> runs(replications);
  std::exception_ptr failure;
  const auto count = static_cast<std::int64_t>(replications);

#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t r = 0; r < count; ++r) {
    try {
      runs[static_cast<std::size_t>(r)] =
          simulate(config, prepared, config.seed + static_cast<std::uint64_t>(r), options);
    } catch (...) {
#pragma omp critical(aoi_sim_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return aggregate(std::move(runs));
}

ExperimentReport run_experiment_serial(const NetworkConfig& config, const PolicySpec& policy,
                                       std::size_t replications, const SimOptions& options) {
  if (replications == 0) throw ParameterError("replications must be positive");
  const Prepared prepared = prepare(config, policy);
  std::vector<SimReport> runs;
  runs.reserve(replications);
  for (std::size_t r = 0; r < replications; ++r)
    runs.push_back(simulate(config, prepared, config.seed + r, options));
  return aggregate(std::move(runs));
}

OrderingVerdict ordering_check(std::span<const Estimate> points, Trend trend, bool strict) {
  OrderingVerdict v;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const double step = points[i + 1].mean - points[i].mean;
    const double along = trend == Trend::NonDecreasing ? step : -step;
    const double tol =
        strict ? 0.0
               : 2.0 * std::hypot(points[i].stderr_, points[i + 1].stderr_);
    const double margin = along + tol;
    const bool ok = strict ? along > 0.0 : margin >= 0.0;
    if (!ok) v.monotone = false;
    if (i == 0 || margin < v.worst_margin) {
      v.worst_margin = margin;
      v.worst_step = i;
    }
  }
  return v;
}

}  // namespace aoi
