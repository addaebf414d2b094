#include "aoi/presets.h"

#include <filesystem>

#include "aoi/bounds.h"
#include "aoi/config.h"
#include "aoi/errors.h"
#include "aoi/eus.h"

namespace aoi {

namespace {

NetworkConfig with_options(NetworkConfig c, const PresetOptions& o) {
  c.horizon = o.horizon;
  c.seed = o.seed;
  return c;
}

}  // namespace

NetworkConfig gaw_table_network(double rho) {
  NetworkConfig c;
  c.rho = rho;
  for (double w : {1.0, 4.0, 9.0, 36.0}) {
    SourceParams s;
    s.lambda = 1.0;
    s.epsilon = 0.1;
    s.sigma = 1.0;
    s.delay = kInfiniteDelay;
    s.alpha = w / 50.0;
    c.sources.push_back(s);
  }
  return c;
}

std::vector<double> gaw_table_rhos() {
  return {0.1, 1.0 / 6.0, 0.2, 0.25, 0.3, 0.5, 0.8, 1.0};
}

std::vector<PublishedRow> published_baselines() {
  return {{0.1, 18.72, 22.34}, {1.0 / 6.0, 11.42, 13.58}, {0.2, 9.58, 11.40},
          {0.25, 7.79, 9.25},  {0.3, 6.56, 7.88},         {0.5, 4.13, 4.87},
          {0.8, 2.83, 3.02},   {1.0, 2.40, 2.68}};
}

std::vector<ReportRow> gaw_table_rows(const PresetOptions& options) {
  std::vector<ReportRow> rows;
  const auto published = published_baselines();
  for (std::size_t i = 0; i < published.size(); ++i) {
    const double rho = published[i].rho;
    const NetworkConfig net = with_options(gaw_table_network(rho), options);
    const BoundInputs in = bound_inputs(net);
    const double zero = zero_fb_lb(in);
    const double perfect = perfect_fb_lb(in);

    ReportRow row;
    row.sweep_value = rho;
    row.policy = "lower_bound_perfect_feedback";
    row.ewsaoi_mean = perfect;
    rows.push_back(row);
    row.policy = "lower_bound_zero_feedback";
    row.ewsaoi_mean = zero;
    rows.push_back(row);

    const auto split = rate_split(in);
    const auto schedule = construct_eus(split);
    ReportRow eus_analytic{rho, "eus_analytic", std::nullopt, std::nullopt, std::nullopt,
                           std::nullopt, zero, std::nullopt};
    if (schedule) eus_analytic.ewsaoi_mean = eus_ewsaoi(in, split);
    rows.push_back(eus_analytic);

    if (schedule) {
      PolicySpec eus{PolicyKind::Eus, 1.0, {}, schedule};
      auto r = make_row(rho, "eus", run_experiment(net, eus, options.replications));
      r.bound_lower = zero;
      rows.push_back(r);
    } else {
      rows.push_back(ReportRow{rho, "eus", std::nullopt, std::nullopt, std::nullopt,
                               std::nullopt, zero, std::nullopt});
    }

    PolicySpec dpp{PolicyKind::Dpp, 1.0, {}, std::nullopt};
    auto r = make_row(rho, "dpp", run_experiment(net, dpp, options.replications));
    r.bound_lower = zero;
    r.bound_upper = dpp_upper_bound(in);
    rows.push_back(r);

    rows.push_back(ReportRow{rho, "cyclic_published_not_simulated", published[i].cyclic,
                             std::nullopt, std::nullopt, std::nullopt, std::nullopt,
                             std::nullopt});
    rows.push_back(ReportRow{rho, "lagrange_greedy_published_not_simulated",
                             published[i].lagrange_greedy, std::nullopt, std::nullopt,
                             std::nullopt, std::nullopt, std::nullopt});
  }
  return rows;
}

NetworkConfig bernoulli_network(double lambda, double epsilon, double sigma, Slot delay,
                                double rho, Mechanism mechanism) {
  NetworkConfig c;
  c.rho = rho;
  c.mechanism = mechanism;
  for (double w : {1.0, 4.0, 7.0, 10.0})
    for (int k = 0; k < 3; ++k) {
      SourceParams s;
      s.lambda = lambda;
      s.epsilon = epsilon;
      s.sigma = sigma;
      s.delay = delay;
      s.alpha = w / 66.0;
      c.sources.push_back(s);
    }
  normalize_weights(c);
  return c;
}

std::vector<BernoulliSweep> bernoulli_sweeps() {
  std::vector<BernoulliSweep> out;
  for (double eps : {0.1, 0.2, 0.3}) {
    const std::string tag = eps == 0.1 ? "0.1" : eps == 0.2 ? "0.2" : "0.3";
    out.push_back({"bernoulli_delay_eps" + tag, "delay", {0, 2, 5, 10},
                   bernoulli_network(0.5, eps, 0.3, 0, 0.5), Trend::NonDecreasing});
  }
  out.push_back({"bernoulli_sigma", "sigma", {0.0, 0.2, 0.4, 0.6, 0.8, 1.0},
                 bernoulli_network(0.5, 0.2, 0.0, 10, 0.5), Trend::NonDecreasing});
  for (double eps : {0.1, 0.2, 0.3}) {
    const std::string tag = eps == 0.1 ? "0.1" : eps == 0.2 ? "0.2" : "0.3";
    out.push_back({"bernoulli_rho_eps" + tag, "rho", {0.2, 0.4, 0.6, 0.8, 1.0},
                   bernoulli_network(0.5, eps, 0.2, 10, 0.5), Trend::NonIncreasing});
  }
  out.push_back({"bernoulli_lambda", "lambda", {0.2, 0.4, 0.6, 0.8, 1.0},
                 bernoulli_network(0.5, 0.2, 0.2, 10, 0.5), Trend::NonIncreasing});
  return out;
}

std::vector<ReportRow> bernoulli_rows(const BernoulliSweep& sweep,
                                      const PresetOptions& options) {
  std::vector<ReportRow> rows;
  ExperimentSpec base;
  base.network = with_options(sweep.base, options);
  for (double value : sweep.values) {
    const NetworkConfig net = apply_sweep(base, sweep.axis, value).network;
    const BoundInputs in = bound_inputs(net);
    const double lower = perfect_fb_lb(in);
    const double upper = dpp_upper_bound(in);

    for (Mechanism mech : {Mechanism::Acks, Mechanism::AcksNacks}) {
      NetworkConfig m = net;
      m.mechanism = mech;
      PolicySpec dpp{PolicyKind::Dpp, 1.0, {}, std::nullopt};
      auto r = make_row(value, mech == Mechanism::Acks ? "dpp_acks" : "dpp_acks_nacks",
                        run_experiment(m, dpp, options.replications));
      r.bound_lower = lower;
      r.bound_upper = upper;
      rows.push_back(r);
    }

    PolicySpec ran{PolicyKind::Randomized, 1.0, {}, std::nullopt};
    auto r = make_row(value, "randomized", run_experiment(net, ran, options.replications));
    r.bound_lower = lower;
    rows.push_back(r);
    rows.push_back(ReportRow{value, "randomized_analytic",
                             randomized_ewsaoi(in, eta_star(in)), std::nullopt, std::nullopt,
                             std::nullopt, lower, std::nullopt});

    PolicySpec rr{PolicyKind::RoundRobin, 1.0, {}, std::nullopt};
    r = make_row(value, "round_robin", run_experiment(net, rr, options.replications));
    r.bound_lower = lower;
    rows.push_back(r);
  }
  return rows;
}

std::vector<std::string> preset_names() { return {"gaw-table", "bernoulli-imperfect"}; }

std::vector<std::string> run_preset(const std::string& name, const std::string& out_dir,
                                    const PresetOptions& options) {
  namespace fs = std::filesystem;
  if (name != "gaw-table" && name != "bernoulli-imperfect")
    throw ParameterError("unknown preset '" + name + "'");
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw ParameterError("cannot create '" + out_dir + "': " + ec.message());

  std::vector<std::string> written;
  if (name == "gaw-table") {
    const auto path = (fs::path(out_dir) / "gaw_table.csv").string();
    emit_csv(gaw_table_rows(options), path);
    written.push_back(path);
    return written;
  }
  for (const auto& sweep : bernoulli_sweeps()) {
    const auto path = (fs::path(out_dir) / (sweep.name + ".csv")).string();
    emit_csv(bernoulli_rows(sweep, options), path);
    written.push_back(path);
  }
  return written;
}

}  // namespace aoi
