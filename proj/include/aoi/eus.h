#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include <boost/rational.hpp>

// Exact uniform schedulers: periodic, collision-free transmission patterns in
// which source n transmits exactly every P_n slots starting at offset X_n.

namespace aoi {

using Rational = boost::rational<std::int64_t>;

struct TreeNode {
  std::int64_t modulus = 1;     // node weight is 1/modulus
  std::int64_t offset = 0;      // sum of edge weights on the root path
  int prime = 0;                // branching factor; 0 marks a leaf
  std::int64_t parent = -1;
  std::vector<std::size_t> children;  // child k hangs on the edge of weight k*modulus
};

struct SplittingTree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  std::vector<std::size_t> leaves() const;
};

// Searches for a splitting tree whose leaves include every requested rate.
// Each rate must be 1/P for a positive integer P, otherwise ParameterError.
// Returns nullopt when no splitting tree covers the multiset. The search is
// exhaustive over trees up to reordering of children and of equal rates, and
// deterministic: primes are tried in ascending order.
std::optional<SplittingTree> build_splitting_tree(std::span<const Rational> rates);

// Leaf node index per source: sources sharing a period take the leaves of
// that weight in ascending offset order, lowest source index first.
// Throws ParameterError if the tree lacks enough leaves of some weight.
std::vector<std::size_t> assign_leaves(const SplittingTree& tree,
                                       std::span<const Rational> rates);

std::vector<std::int64_t> offsets_from_tree(const SplittingTree& tree,
                                            std::span<const std::size_t> assignment);

struct CyclicSchedule {
  std::vector<std::int64_t> offsets;
  std::vector<std::int64_t> periods;
  std::int64_t hyperperiod = 1;

  std::size_t size() const noexcept { return periods.size(); }
};

// Computes the hyperperiod; throws ParameterError for non-positive periods,
// negative offsets, or a hyperperiod beyond 2^62.
CyclicSchedule make_schedule(std::vector<std::int64_t> offsets,
                             std::vector<std::int64_t> periods);

// Pairwise test X_n != X_m (mod gcd(P_n, P_m)), equivalent to the schedule
// never placing two sources in the same slot.
bool check_eus_condition(std::span<const std::int64_t> offsets,
                         std::span<const std::int64_t> periods);

// Same test for periods given as reals; throws ParameterError unless every
// period is a positive integer.
bool check_eus_condition(std::span<const std::int64_t> offsets,
                         std::span<const double> periods);

// Integer periods 1/rate_n when every reciprocal is within rel_tol of an
// integer, nullopt otherwise.
std::optional<std::vector<std::int64_t>> periods_from_split(std::span<const double> split,
                                                            double rel_tol = 1e-9);

// Tree search, leaf assignment and offset extraction in one step. Returns
// nullopt when the split has non-integer reciprocals or no tree exists.
std::optional<CyclicSchedule> construct_eus(std::span<const double> split);
std::optional<CyclicSchedule> construct_eus_periods(std::span<const std::int64_t> periods);

// Source scheduled in slot t (0-based), or -1.
int scheduled_source(const CyclicSchedule& schedule, std::uint64_t t);

// Per-slot scheduled source over [0, horizon), -1 for idle slots.
// Throws ValidationError when the schedule has collisions.
std::vector<int> generate_schedule(const CyclicSchedule& schedule, std::uint64_t horizon);

struct CollisionScan {
  std::uint64_t collisions = 0;      // slots holding two or more sources
  std::vector<std::uint64_t> transmissions;  // per source, over one hyperperiod
};

// Exhaustive scan of one full cycle. The parallel version splits the cycle
// across OpenMP threads and must agree exactly with the serial one.
CollisionScan scan_hyperperiod(const CyclicSchedule& schedule);
CollisionScan scan_hyperperiod_serial(const CyclicSchedule& schedule);

// Scans every pair over lcm(P_n, P_m); usable when the full hyperperiod is
// too long to enumerate. Returns the number of colliding pairs.
std::uint64_t scan_pairs(const CyclicSchedule& schedule);

// CSV rows "slot,source" (1-based source ids) for the scheduled slots.
void write_schedule_csv(std::ostream& os, const CyclicSchedule& schedule,
                        std::uint64_t horizon);

}  // namespace aoi
