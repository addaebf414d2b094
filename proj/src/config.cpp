#include "aoi/config.h"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "aoi/errors.h"

namespace aoi {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_double(const std::string& text, std::size_t line) {
  double x = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, x);
  if (ec != std::errc() || ptr != end || !std::isfinite(x))
    throw ParseError(line, "expected a number, got '" + text + "'");
  return x;
}

std::uint64_t parse_uint(const std::string& text, std::size_t line) {
  std::uint64_t x = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, x);
  if (ec != std::errc() || ptr != end)
    throw ParseError(line, "expected a non-negative integer, got '" + text + "'");
  return x;
}

Slot parse_delay(const std::string& text, std::size_t line) {
  if (text == "inf" || text == "infinity") return kInfiniteDelay;
  const Slot d = parse_uint(text, line);
  if (d == kInfiniteDelay) throw ParseError(line, "delay too large");
  return d;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void check_range(bool ok, std::size_t line, const std::string& what) {
  if (!ok) throw ParseError(line, what);
}

// Per-source section as read, before expansion by repeat.
struct SourceSection {
  std::size_t line = 0;
  SourceParams params;
  std::size_t repeat = 1;
  bool has_epsilon = false;
  std::set<std::string> seen;
};

void set_source_key(SourceSection& s, const std::string& key, const std::string& value,
                    std::size_t line) {
  if (!s.seen.insert(key).second) throw ParseError(line, "duplicate key '" + key + "'");
  if (key == "lambda") {
    s.params.lambda = parse_double(value, line);
    check_range(s.params.lambda > 0.0 && s.params.lambda <= 1.0, line, "lambda must lie in (0,1]");
  } else if (key == "epsilon") {
    s.params.epsilon = parse_double(value, line);
    check_range(s.params.epsilon >= 0.0 && s.params.epsilon < 1.0, line,
                "epsilon must lie in [0,1)");
    s.has_epsilon = true;
  } else if (key == "sigma") {
    s.params.sigma = parse_double(value, line);
    check_range(s.params.sigma >= 0.0 && s.params.sigma <= 1.0, line, "sigma must lie in [0,1]");
  } else if (key == "delay") {
    s.params.delay = parse_delay(value, line);
  } else if (key == "alpha") {
    s.params.alpha = parse_double(value, line);
    check_range(s.params.alpha > 0.0, line, "alpha must be positive");
  } else if (key == "repeat") {
    s.repeat = parse_uint(value, line);
    check_range(s.repeat >= 1, line, "repeat must be at least 1");
  } else {
    throw ParseError(line, "unknown source key '" + key + "'");
  }
}

Mechanism parse_mechanism(const std::string& v, std::size_t line) {
  if (v == "ACKS") return Mechanism::Acks;
  if (v == "ACKS_NACKS") return Mechanism::AcksNacks;
  throw ParseError(line, "mechanism must be ACKS or ACKS_NACKS");
}

Sweep parse_sweep(const std::string& value, std::size_t line) {
  const auto colon = value.find(':');
  if (colon == std::string::npos) throw ParseError(line, "sweep needs 'parameter: v1, v2, ...'");
  Sweep s;
  s.parameter = trim(value.substr(0, colon));
  std::stringstream rest(value.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) s.values.push_back(parse_double(trim(item), line));
  if (s.values.empty()) throw ParseError(line, "sweep has no values");
  return s;
}

void set_global_key(ExperimentSpec& spec, const std::string& key, const std::string& value,
                    std::size_t line) {
  if (key == "rho") {
    spec.network.rho = parse_double(value, line);
    check_range(spec.network.rho > 0.0 && spec.network.rho <= 1.0, line, "rho must lie in (0,1]");
  } else if (key == "mechanism") {
    spec.network.mechanism = parse_mechanism(value, line);
  } else if (key == "horizon") {
    spec.network.horizon = parse_uint(value, line);
    check_range(spec.network.horizon >= 1, line, "horizon must be at least 1");
  } else if (key == "seed") {
    spec.network.seed = parse_uint(value, line);
  } else if (key == "policy") {
    try {
      spec.policy = policy_from_string(value);
    } catch (const ParameterError& e) {
      throw ParseError(line, e.what());
    }
  } else if (key == "V") {
    spec.V = parse_double(value, line);
    check_range(spec.V >= 0.0, line, "V must be non-negative");
  } else if (key == "replications") {
    spec.replications = parse_uint(value, line);
    check_range(spec.replications >= 1, line, "replications must be at least 1");
  } else if (key == "sweep") {
    spec.sweep = parse_sweep(value, line);
  } else if (key == "output") {
    spec.output = value;
  } else {
    throw ParseError(line, "unknown key '" + key + "'");
  }
}

}  // namespace

ExperimentSpec parse_config(const std::string& text) {
  ExperimentSpec spec;
  std::set<std::string> globals;
  std::vector<SourceSection> sections;
  std::size_t sweep_line = 0;

  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string content = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (content.empty()) continue;
    if (content.front() == '[') {
      if (content != "[source]") throw ParseError(line, "unknown section '" + content + "'");
      sections.push_back(SourceSection{line, {}, 1, false, {}});
      continue;
    }
    const auto eq = content.find('=');
    if (eq == std::string::npos) throw ParseError(line, "expected 'key = value'");
    const std::string key = trim(content.substr(0, eq));
    const std::string value = trim(content.substr(eq + 1));
    if (key.empty() || value.empty()) throw ParseError(line, "expected 'key = value'");

    if (!sections.empty()) {
      set_source_key(sections.back(), key, value, line);
    } else {
      if (!globals.insert(key).second) throw ParseError(line, "duplicate key '" + key + "'");
      set_global_key(spec, key, value, line);
      if (key == "sweep") sweep_line = line;
    }
  }

  if (!globals.count("rho")) throw ParseError(line, "missing mandatory key 'rho'");
  if (sections.empty()) throw ParseError(line, "no [source] section");
  for (const auto& s : sections) {
    if (!s.has_epsilon) throw ParseError(s.line, "source section lacks 'epsilon'");
    for (std::size_t k = 0; k < s.repeat; ++k) spec.network.sources.push_back(s.params);
  }

  double sum = 0.0;
  for (const auto& s : spec.network.sources) sum += s.alpha;
  if (std::abs(sum - 1.0) > 1e-12) {
    normalize_weights(spec.network);
    spec.warnings.push_back("alpha weights summed to " + fmt(sum) + " and were normalized");
  }

  if (spec.sweep) {
    try {
      for (double v : spec.sweep->values) apply_sweep(spec, spec.sweep->parameter, v);
    } catch (const ParameterError& e) {
      throw ParseError(sweep_line, e.what());
    }
  }
  return spec;
}

ExperimentSpec load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParameterError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const ExperimentSpec& spec) {
  std::ostringstream os;
  const auto& net = spec.network;
  os << "rho = " << fmt(net.rho) << '\n';
  os << "mechanism = " << (net.mechanism == Mechanism::Acks ? "ACKS" : "ACKS_NACKS") << '\n';
  os << "horizon = " << net.horizon << '\n';
  os << "seed = " << net.seed << '\n';
  os << "policy = " << to_string(spec.policy) << '\n';
  os << "V = " << fmt(spec.V) << '\n';
  os << "replications = " << spec.replications << '\n';
  if (spec.sweep) {
    os << "sweep = " << spec.sweep->parameter << ':';
    for (std::size_t i = 0; i < spec.sweep->values.size(); ++i)
      os << (i ? ", " : " ") << fmt(spec.sweep->values[i]);
    os << '\n';
  }
  if (!spec.output.empty()) os << "output = " << spec.output << '\n';
  for (const auto& s : net.sources) {
    os << "\n[source]\n";
    os << "lambda = " << fmt(s.lambda) << '\n';
    os << "epsilon = " << fmt(s.epsilon) << '\n';
    os << "sigma = " << fmt(s.sigma) << '\n';
    os << "delay = ";
    if (s.delay == kInfiniteDelay)
      os << "inf";
    else
      os << s.delay;
    os << '\n';
    os << "alpha = " << fmt(s.alpha) << '\n';
  }
  return os.str();
}

ExperimentSpec apply_sweep(const ExperimentSpec& spec, const std::string& parameter,
                           double value) {
  ExperimentSpec out = spec;
  out.sweep.reset();
  auto each = [&](auto set) {
    for (auto& s : out.network.sources) set(s);
  };
  if (parameter == "rho") {
    out.network.rho = value;
  } else if (parameter == "V") {
    if (!(value >= 0.0)) throw ParameterError("V must be non-negative");
    out.V = value;
  } else if (parameter == "epsilon") {
    each([&](SourceParams& s) { s.epsilon = value; });
  } else if (parameter == "sigma") {
    each([&](SourceParams& s) { s.sigma = value; });
  } else if (parameter == "lambda") {
    each([&](SourceParams& s) { s.lambda = value; });
  } else if (parameter == "delay") {
    if (!(value >= 0.0) || std::floor(value) != value || value > 1e15)
      throw ParameterError("delay sweep values must be non-negative integers");
    each([&](SourceParams& s) { s.delay = static_cast<Slot>(value); });
  } else {
    throw ParameterError("cannot sweep over '" + parameter + "'");
  }
  validate(out.network);
  return out;
}

}  // namespace aoi
