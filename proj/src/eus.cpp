#include "aoi/eus.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <numeric>
#include <ostream>
#include <string>

#include "aoi/errors.h"

namespace aoi {

namespace {

constexpr std::int64_t kMaxHyperperiod = std::int64_t{1} << 62;

std::vector<std::int64_t> prime_factors(std::int64_t x) {
  std::vector<std::int64_t> out;
  for (std::int64_t p = 2; p * p <= x; ++p) {
    if (x % p != 0) continue;
    out.push_back(p);
    while (x % p == 0) x /= p;
  }
  if (x > 1) out.push_back(x);
  return out;
}

// Subtree plan for a multiset of period ratios relative to the node modulus.
// A null child is an unused leaf.
struct Plan {
  std::int64_t prime = 0;
  std::vector<std::shared_ptr<const Plan>> children;
};
using PlanPtr = std::shared_ptr<const Plan>;

class TreeSearch {
 public:
  // ratios: sorted ascending, each >= 1. Returns nullptr when infeasible.
  PlanPtr solve(const std::vector<std::int64_t>& ratios) {
    if (auto it = memo_.find(ratios); it != memo_.end()) return it->second;
    PlanPtr result = search(ratios);
    memo_.emplace(ratios, result);
    return result;
  }

 private:
  struct Bucket {
    std::vector<std::int64_t> ratios;
    Rational load{0};
    std::int64_t gcd = 0;
  };

  PlanPtr search(const std::vector<std::int64_t>& ratios) {
    if (ratios.size() == 1 && ratios[0] == 1) return std::make_shared<Plan>();
    if (std::find(ratios.begin(), ratios.end(), 1) != ratios.end()) return nullptr;
    Rational load{0};
    std::int64_t g = 0;
    for (auto r : ratios) {
      load += Rational(1, r);
      g = std::gcd(g, r);
    }
    if (load > 1) return nullptr;

    for (std::int64_t p : prime_factors(g)) {
      std::vector<Bucket> buckets(static_cast<std::size_t>(p));
      std::vector<std::size_t> where(ratios.size());
      PlanPtr plan;
      if (assign(ratios, p, 0, buckets, where, plan)) return plan;
    }
    return nullptr;
  }

  bool assign(const std::vector<std::int64_t>& ratios, std::int64_t p, std::size_t i,
              std::vector<Bucket>& buckets, std::vector<std::size_t>& where, PlanPtr& plan) {
    if (i == ratios.size()) return finish(p, buckets, plan);

    const std::int64_t child = ratios[i] / p;
    std::size_t used = 0;
    while (used < buckets.size() && !buckets[used].ratios.empty()) ++used;
    const std::size_t first = (i > 0 && ratios[i - 1] == ratios[i]) ? where[i - 1] : 0;
    const std::size_t last = std::min(used, buckets.size() - 1);

    for (std::size_t k = first; k <= last; ++k) {
      Bucket& b = buckets[k];
      if (!b.ratios.empty() && (child == 1 || b.ratios.front() == 1)) continue;
      const Rational load = b.load + Rational(1, child);
      if (load > 1) continue;
      const std::int64_t g = std::gcd(b.gcd, child);
      if (!b.ratios.empty() && g == 1) continue;

      const Bucket saved = b;
      b.ratios.push_back(child);
      b.load = load;
      b.gcd = g;
      where[i] = k;
      if (assign(ratios, p, i + 1, buckets, where, plan)) return true;
      b = saved;
    }
    return false;
  }

  bool finish(std::int64_t p, const std::vector<Bucket>& buckets, PlanPtr& plan) {
    auto out = std::make_shared<Plan>();
    out->prime = p;
    out->children.resize(buckets.size());
    for (std::size_t k = 0; k < buckets.size(); ++k) {
      if (buckets[k].ratios.empty()) continue;
      auto sorted = buckets[k].ratios;
      std::sort(sorted.begin(), sorted.end());
      out->children[k] = solve(sorted);
      if (!out->children[k]) return false;
    }
    plan = std::move(out);
    return true;
  }

  std::map<std::vector<std::int64_t>, PlanPtr> memo_;
};

std::size_t materialize(const Plan* plan, std::int64_t modulus, std::int64_t offset,
                        std::int64_t parent, SplittingTree& tree) {
  const std::size_t id = tree.nodes.size();
  tree.nodes.push_back(TreeNode{modulus, offset, 0, parent, {}});
  if (plan == nullptr || plan->prime == 0) return id;
  tree.nodes[id].prime = static_cast<int>(plan->prime);
  for (std::size_t k = 0; k < plan->children.size(); ++k) {
    const std::size_t child =
        materialize(plan->children[k].get(), modulus * plan->prime,
                    offset + static_cast<std::int64_t>(k) * modulus,
                    static_cast<std::int64_t>(id), tree);
    tree.nodes[id].children.push_back(child);
  }
  return id;
}

std::int64_t period_of(const Rational& rate) {
  if (rate <= 0 || rate > 1 || rate.numerator() != 1)
    throw ParameterError("rate must be the reciprocal of a positive integer");
  return rate.denominator();
}

std::int64_t mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

bool fires(const CyclicSchedule& s, std::size_t n, std::int64_t t) {
  return t >= s.offsets[n] && (t - s.offsets[n]) % s.periods[n] == 0;
}

}  // namespace

std::vector<std::size_t> SplittingTree::leaves() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].prime == 0) out.push_back(i);
  return out;
}

std::optional<SplittingTree> build_splitting_tree(std::span<const Rational> rates) {
  std::vector<std::int64_t> ratios;
  ratios.reserve(rates.size());
  for (const auto& r : rates) ratios.push_back(period_of(r));
  if (ratios.empty()) return SplittingTree{{TreeNode{}}};
  std::sort(ratios.begin(), ratios.end());

  TreeSearch search;
  PlanPtr plan = search.solve(ratios);
  if (!plan) return std::nullopt;
  SplittingTree tree;
  materialize(plan.get(), 1, 0, -1, tree);
  return tree;
}

std::vector<std::size_t> assign_leaves(const SplittingTree& tree,
                                       std::span<const Rational> rates) {
  std::map<std::int64_t, std::vector<std::size_t>> free_leaves;
  for (std::size_t id : tree.leaves()) free_leaves[tree.nodes[id].modulus].push_back(id);
  for (auto& [modulus, ids] : free_leaves) {
    std::stable_sort(ids.begin(), ids.end(), [&](std::size_t a, std::size_t b) {
      return tree.nodes[a].offset < tree.nodes[b].offset;
    });
    std::reverse(ids.begin(), ids.end());  // pop_back yields the smallest offset
  }

  std::vector<std::size_t> out;
  out.reserve(rates.size());
  for (const auto& r : rates) {
    auto it = free_leaves.find(period_of(r));
    if (it == free_leaves.end() || it->second.empty())
      throw ParameterError("splitting tree has no free leaf of weight 1/" +
                           std::to_string(r.denominator()));
    out.push_back(it->second.back());
    it->second.pop_back();
  }
  return out;
}

std::vector<std::int64_t> offsets_from_tree(const SplittingTree& tree,
                                            std::span<const std::size_t> assignment) {
  std::vector<std::int64_t> out;
  out.reserve(assignment.size());
  for (std::size_t leaf : assignment) {
    if (leaf >= tree.nodes.size() || tree.nodes[leaf].prime != 0)
      throw ParameterError("assignment refers to a non-leaf node");
    // Recompute along the parent chain instead of trusting the cached offset.
    std::int64_t x = 0;
    for (std::int64_t v = static_cast<std::int64_t>(leaf); tree.nodes[v].parent >= 0;) {
      const auto& parent = tree.nodes[tree.nodes[v].parent];
      const auto& ch = parent.children;
      const auto k = std::find(ch.begin(), ch.end(), static_cast<std::size_t>(v)) - ch.begin();
      x += k * parent.modulus;
      v = tree.nodes[v].parent;
    }
    out.push_back(x);
  }
  return out;
}

CyclicSchedule make_schedule(std::vector<std::int64_t> offsets,
                             std::vector<std::int64_t> periods) {
  if (offsets.size() != periods.size())
    throw ParameterError("offsets and periods differ in length");
  CyclicSchedule s;
  for (std::size_t n = 0; n < periods.size(); ++n) {
    if (periods[n] < 1) throw ParameterError("periods must be positive integers");
    if (offsets[n] < 0) throw ParameterError("offsets must be non-negative");
    const std::int64_t g = std::gcd(s.hyperperiod, periods[n]);
    if (s.hyperperiod / g > kMaxHyperperiod / periods[n])
      throw ParameterError("hyperperiod exceeds 2^62");
    s.hyperperiod = s.hyperperiod / g * periods[n];
  }
  s.offsets = std::move(offsets);
  s.periods = std::move(periods);
  return s;
}

bool check_eus_condition(std::span<const std::int64_t> offsets,
                         std::span<const std::int64_t> periods) {
  if (offsets.size() != periods.size())
    throw ParameterError("offsets and periods differ in length");
  for (auto p : periods)
    if (p < 1) throw ParameterError("periods must be positive integers");
  for (std::size_t n = 0; n < periods.size(); ++n)
    for (std::size_t m = n + 1; m < periods.size(); ++m) {
      const std::int64_t g = std::gcd(periods[n], periods[m]);
      if (mod(offsets[n], g) == mod(offsets[m], g)) return false;
    }
  return true;
}

bool check_eus_condition(std::span<const std::int64_t> offsets,
                         std::span<const double> periods) {
  std::vector<std::int64_t> ints;
  for (double p : periods) {
    if (!(p >= 1.0) || std::floor(p) != p || p > 9.0e15)
      throw ParameterError("period must be a positive integer, got " + std::to_string(p));
    ints.push_back(static_cast<std::int64_t>(p));
  }
  return check_eus_condition(offsets, ints);
}

std::optional<std::vector<std::int64_t>> periods_from_split(std::span<const double> split,
                                                            double rel_tol) {
  std::vector<std::int64_t> out;
  for (double r : split) {
    if (!(r > 0.0 && r <= 1.0)) return std::nullopt;
    const double inv = 1.0 / r;
    const double rounded = std::round(inv);
    if (std::abs(inv - rounded) > rel_tol * inv) return std::nullopt;
    out.push_back(static_cast<std::int64_t>(rounded));
  }
  return out;
}

std::optional<CyclicSchedule> construct_eus_periods(std::span<const std::int64_t> periods) {
  std::vector<Rational> rates;
  for (auto p : periods) {
    if (p < 1) throw ParameterError("periods must be positive integers");
    rates.emplace_back(1, p);
  }
  auto tree = build_splitting_tree(rates);
  if (!tree) return std::nullopt;
  const auto leaves = assign_leaves(*tree, rates);
  auto schedule = make_schedule(offsets_from_tree(*tree, leaves),
                                std::vector<std::int64_t>(periods.begin(), periods.end()));
  if (!check_eus_condition(schedule.offsets, schedule.periods))
    throw ValidationError("splitting tree produced colliding offsets");
  return schedule;
}

std::optional<CyclicSchedule> construct_eus(std::span<const double> split) {
  auto periods = periods_from_split(split);
  if (!periods) return std::nullopt;
  return construct_eus_periods(*periods);
}

int scheduled_source(const CyclicSchedule& schedule, std::uint64_t t) {
  const auto ts = static_cast<std::int64_t>(t);
  for (std::size_t n = 0; n < schedule.size(); ++n)
    if (fires(schedule, n, ts)) return static_cast<int>(n);
  return -1;
}

std::vector<int> generate_schedule(const CyclicSchedule& schedule, std::uint64_t horizon) {
  if (!check_eus_condition(schedule.offsets, schedule.periods))
    throw ValidationError("schedule violates the modular admissibility condition");
  std::vector<int> out(horizon, -1);
  for (std::size_t n = 0; n < schedule.size(); ++n)
    for (auto t = static_cast<std::uint64_t>(schedule.offsets[n]); t < horizon;
         t += static_cast<std::uint64_t>(schedule.periods[n]))
      out[t] = static_cast<int>(n);
  return out;
}

CollisionScan scan_hyperperiod_serial(const CyclicSchedule& schedule) {
  const std::size_t N = schedule.size();
  CollisionScan out;
  out.transmissions.assign(N, 0);
  std::int64_t base = 0;
  for (auto x : schedule.offsets) base = std::max(base, x);
  for (std::int64_t t = base; t < base + schedule.hyperperiod; ++t) {
    int hits = 0;
    for (std::size_t n = 0; n < N; ++n)
      if (fires(schedule, n, t)) {
        ++hits;
        ++out.transmissions[n];
      }
    if (hits > 1) ++out.collisions;
  }
  return out;
}

CollisionScan scan_hyperperiod(const CyclicSchedule& schedule) {
  const std::size_t N = schedule.size();
  std::vector<std::uint64_t> tx(N, 0);
  std::uint64_t* txp = tx.data();
  std::uint64_t collisions = 0;
  std::int64_t base = 0;
  for (auto x : schedule.offsets) base = std::max(base, x);
  const std::int64_t end = base + schedule.hyperperiod;

#pragma omp parallel for schedule(static) reduction(+ : collisions, txp[:N])
  for (std::int64_t t = base; t < end; ++t) {
    int hits = 0;
    for (std::size_t n = 0; n < N; ++n)
      if (fires(schedule, n, t)) {
        ++hits;
        ++txp[n];
      }
    if (hits > 1) ++collisions;
  }
  return CollisionScan{collisions, std::move(tx)};
}

std::uint64_t scan_pairs(const CyclicSchedule& schedule) {
  std::uint64_t bad = 0;
  for (std::size_t n = 0; n < schedule.size(); ++n)
    for (std::size_t m = n + 1; m < schedule.size(); ++m) {
      const std::int64_t pn = schedule.periods[n];
      const std::int64_t pm = schedule.periods[m];
      const std::int64_t span = std::lcm(pn, pm);
      const std::int64_t base = std::max(schedule.offsets[n], schedule.offsets[m]);
      std::int64_t t = schedule.offsets[n] + mod(base - schedule.offsets[n], pn);
      if (t < base) t += pn;
      for (std::int64_t k = 0; k < span / pn; ++k, t += pn)
        if (fires(schedule, m, t)) {
          ++bad;
          break;
        }
    }
  return bad;
}

void write_schedule_csv(std::ostream& os, const CyclicSchedule& schedule,
                        std::uint64_t horizon) {
  const auto slots = generate_schedule(schedule, horizon);
  os << "slot,source\n";
  for (std::uint64_t t = 0; t < horizon; ++t)
    if (slots[t] >= 0) os << t << ',' << slots[t] + 1 << '\n';
}

}  // namespace aoi
