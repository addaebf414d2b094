#include "aoi/model.h"

#include <cmath>
#include <string>

#include "aoi/errors.h"

namespace aoi {

void validate(const SourceParams& s) {
  if (!(s.lambda > 0.0 && s.lambda <= 1.0))
    throw ParameterError("lambda must lie in (0,1], got " + std::to_string(s.lambda));
  if (!(s.epsilon >= 0.0 && s.epsilon < 1.0))
    throw ParameterError("epsilon must lie in [0,1), got " + std::to_string(s.epsilon));
  if (!(s.sigma >= 0.0 && s.sigma <= 1.0))
    throw ParameterError("sigma must lie in [0,1], got " + std::to_string(s.sigma));
  if (!(s.alpha > 0.0 && std::isfinite(s.alpha)))
    throw ParameterError("alpha must be positive, got " + std::to_string(s.alpha));
}

void validate(const NetworkConfig& c) {
  if (c.sources.empty()) throw ParameterError("network has no sources");
  if (!(c.rho > 0.0 && c.rho <= 1.0))
    throw ParameterError("rho must lie in (0,1], got " + std::to_string(c.rho));
  if (c.horizon == 0) throw ParameterError("horizon must be at least one slot");
  double sum = 0.0;
  for (const auto& s : c.sources) {
    validate(s);
    sum += s.alpha;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw ParameterError("alpha weights must sum to 1, got " + std::to_string(sum));
}

double normalize_weights(NetworkConfig& c) {
  double sum = 0.0;
  for (const auto& s : c.sources) sum += s.alpha;
  if (!(sum > 0.0)) throw ParameterError("alpha weights must be positive");
  for (auto& s : c.sources) s.alpha /= sum;
  return sum;
}

Slot evolve_local_age(Slot w, bool generated) noexcept { return generated ? 0 : w + 1; }

Slot evolve_aoi(Slot h, Slot w, bool delivered) noexcept { return delivered ? w + 1 : h + 1; }

Rng make_stream(std::uint64_t seed, std::size_t source, Stream purpose) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(source),
                    static_cast<std::uint32_t>(static_cast<std::uint64_t>(source) >> 32),
                    static_cast<std::uint32_t>(purpose)};
  return Rng(seq);
}

bool channel_outcome(bool transmitted, double epsilon, Rng& rng) {
  if (!transmitted) return false;
  return uniform01(rng) >= epsilon;
}

Feedback feedback_outcome(Mechanism mechanism, bool transmitted, bool delivered, double sigma,
                          Rng& rng) {
  if (!transmitted) {
    if (delivered) throw ParameterError("delivery reported for a slot without transmission");
    return Feedback::None;
  }
  const bool reaches_ap = uniform01(rng) >= sigma;
  if (!reaches_ap) return Feedback::None;
  if (delivered) return Feedback::Ack;
  return mechanism == Mechanism::AcksNacks ? Feedback::Nack : Feedback::None;
}

}  // namespace aoi
