#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace aoi {

using Slot = std::uint64_t;

// Feedback delay sentinel: the AP never hears back from the user.
inline constexpr Slot kInfiniteDelay = std::numeric_limits<Slot>::max();

enum class Mechanism { Acks, AcksNacks };

// Feedback indicator observed by the AP about one past slot.
enum class Feedback : std::int8_t { Nack = -1, None = 0, Ack = 1 };

struct SourceParams {
  double lambda = 1.0;   // packet generation probability per slot, (0,1]; 1 is generate-at-will
  double epsilon = 0.0;  // downlink error probability, [0,1)
  double sigma = 0.0;    // feedback erasure probability, [0,1]
  Slot delay = 0;        // feedback delay in slots, or kInfiniteDelay
  double alpha = 1.0;    // priority weight, > 0

  bool zero_feedback() const noexcept { return sigma >= 1.0 || delay == kInfiniteDelay; }
  bool operator==(const SourceParams&) const = default;
};

struct NetworkConfig {
  std::vector<SourceParams> sources;
  double rho = 1.0;  // long-term transmission budget, (0,1]
  Mechanism mechanism = Mechanism::AcksNacks;
  Slot horizon = 1'000'000;
  std::uint64_t seed = 1;

  std::size_t size() const noexcept { return sources.size(); }
  bool operator==(const NetworkConfig&) const = default;
};

void validate(const SourceParams& source);

// Also requires the weights to be normalized (|sum alpha - 1| <= 1e-12).
void validate(const NetworkConfig& config);

// Rescales the alphas so that they sum to one. Returns the sum before scaling.
double normalize_weights(NetworkConfig& config);

// Single-slot transition kernel.

Slot evolve_local_age(Slot w, bool generated) noexcept;
Slot evolve_aoi(Slot h, Slot w, bool delivered) noexcept;

// Deterministic random streams. Every (replication seed, source, purpose)
// triple owns an independent engine so that policies compared under the same
// seed see identical packet arrivals and channel realizations.

using Rng = std::mt19937_64;

enum class Stream : std::uint32_t { Generation = 1, Channel = 2, Feedback = 3, Policy = 4 };

Rng make_stream(std::uint64_t seed, std::size_t source, Stream purpose);

// Uniform on [0,1) with 53 random bits.
inline double uniform01(Rng& rng) noexcept {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool bernoulli(Rng& rng, double p) noexcept { return uniform01(rng) < p; }

// u = 0 without consuming randomness when nothing is sent.
bool channel_outcome(bool transmitted, double epsilon, Rng& rng);

// One uniform is drawn per transmission under both mechanisms, so ACKs and
// ACKs/NACKs runs with the same seed erase exactly the same signals.
Feedback feedback_outcome(Mechanism mechanism, bool transmitted, bool delivered, double sigma,
                          Rng& rng);

}  // namespace aoi
