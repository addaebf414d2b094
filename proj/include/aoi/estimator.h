#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "aoi/model.h"

// Access-point side conditional expected AoI for one source, given the
// actions taken, the local ages seen, and the (delayed, lossy) feedback.

namespace aoi {

// One unacknowledged slot: action, local age, and the estimate at that slot.
struct SlotRecord {
  bool transmitted = false;
  Slot w = 0;
  double hhat = 1.0;
};

// One-slot prediction with no feedback.
double zero_fb_update(double hhat, Slot w, bool transmitted, double epsilon);

// Corrections of the estimate for a past slot once its feedback arrives.
// Feedback about a slot without transmission must be None; under the ACKs
// mechanism a NACK is impossible. Both raise ProtocolError.
double ack_delayed_update(double hhat, Slot w, bool transmitted, Feedback v, double epsilon,
                          double sigma);
double acknack_delayed_update(double hhat, Slot w, bool transmitted, Feedback v,
                              double epsilon);
double delayed_update(Mechanism mechanism, const SlotRecord& record, double hhat, Feedback v,
                      double epsilon, double sigma);

// Rolls a corrected estimate forward through the still-unacknowledged slots.
double repropagate(std::span<const SlotRecord> window, double corrected, double epsilon);

// Likelihood of feedback v given the transition h -> h_next under action a
// with local age w. A transmission succeeded iff h_next == w + 1.
double observation_probability(Mechanism mechanism, Feedback v, Slot h_next, Slot h, Slot w,
                               bool transmitted, double sigma);

class AoiEstimator {
 public:
  // Fast keeps one anchor value and corrects the head estimate with a
  // precomputed epsilon power; Reference rewrites the whole window on every
  // observation. Both give the same trajectory up to rounding.
  enum class Mode { Fast, Reference };

  AoiEstimator(const SourceParams& params, Mechanism mechanism, Mode mode = Mode::Fast);

  double hhat() const noexcept { return hhat_; }
  bool has_feedback() const noexcept { return !zero_feedback_; }
  std::size_t pending() const noexcept { return size_; }

  // End of slot t: records (a, w, hhat_t) and predicts hhat_{t+1}.
  void advance(bool transmitted, Slot w);

  // Start of slot t+1: feedback about slot t-D, the oldest pending record.
  // Requires D+1 pending records; feedback must be None for zero-feedback
  // sources.
  void observe(Feedback v);

 private:
  SlotRecord& at(std::size_t i) noexcept { return ring_[(head_ + i) % ring_.size()]; }

  double epsilon_;
  double sigma_;
  Mechanism mechanism_;
  Mode mode_;
  bool zero_feedback_;
  double hhat_ = 1.0;

  std::vector<SlotRecord> ring_;
  std::size_t head_ = 0;
  std::size_t size_ = 0;
  std::size_t active_ = 0;          // transmissions among pending records
  double anchor_ = 1.0;             // current estimate for the oldest record
  std::vector<double> eps_pow_;     // eps_pow_[k] = epsilon^k
};

}  // namespace aoi
