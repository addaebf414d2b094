#include "aoi/estimator.h"

#include "aoi/errors.h"

namespace aoi {

namespace {

void check_signal(bool transmitted, Feedback v) {
  if (!transmitted && v != Feedback::None)
    throw ProtocolError("feedback received for a slot without transmission");
}

}  // namespace

double zero_fb_update(double hhat, Slot w, bool transmitted, double epsilon) {
  if (!transmitted) return hhat + 1.0;
  return epsilon * (hhat + 1.0) + (1.0 - epsilon) * (static_cast<double>(w) + 1.0);
}

double ack_delayed_update(double hhat, Slot w, bool transmitted, Feedback v, double epsilon,
                          double sigma) {
  if (v == Feedback::Nack) throw ProtocolError("NACK under the ACKs mechanism");
  check_signal(transmitted, v);
  if (!transmitted) return hhat + 1.0;
  const double fresh = static_cast<double>(w) + 1.0;
  if (v == Feedback::Ack) return fresh;
  // Silence: either a failure, or a success whose ACK was lost.
  return (epsilon * (hhat + 1.0) + (1.0 - epsilon) * sigma * fresh) /
         (1.0 - (1.0 - epsilon) * (1.0 - sigma));
}

double acknack_delayed_update(double hhat, Slot w, bool transmitted, Feedback v,
                              double epsilon) {
  check_signal(transmitted, v);
  if (!transmitted) return hhat + 1.0;
  switch (v) {
    case Feedback::Ack: return static_cast<double>(w) + 1.0;
    case Feedback::Nack: return hhat + 1.0;
    case Feedback::None: break;
  }
  // An erased signal carries no information, whatever the erasure rate.
  return zero_fb_update(hhat, w, true, epsilon);
}

double delayed_update(Mechanism mechanism, const SlotRecord& record, double hhat, Feedback v,
                      double epsilon, double sigma) {
  if (mechanism == Mechanism::Acks)
    return ack_delayed_update(hhat, record.w, record.transmitted, v, epsilon, sigma);
  return acknack_delayed_update(hhat, record.w, record.transmitted, v, epsilon);
}

double repropagate(std::span<const SlotRecord> window, double corrected, double epsilon) {
  double x = corrected;
  for (const auto& r : window) x = zero_fb_update(x, r.w, r.transmitted, epsilon);
  return x;
}

double observation_probability(Mechanism mechanism, Feedback v, Slot h_next, Slot h, Slot w,
                               bool transmitted, double sigma) {
  if (!transmitted) return (v == Feedback::None && h_next == h + 1) ? 1.0 : 0.0;
  const bool success = h_next == w + 1;
  if (!success && h_next != h + 1) return 0.0;
  if (v == Feedback::None) return (success || mechanism == Mechanism::AcksNacks) ? sigma : 1.0;
  if (v == Feedback::Ack) return success ? 1.0 - sigma : 0.0;
  // NACK
  return (mechanism == Mechanism::AcksNacks && !success) ? 1.0 - sigma : 0.0;
}

AoiEstimator::AoiEstimator(const SourceParams& params, Mechanism mechanism, Mode mode)
    : epsilon_(params.epsilon),
      sigma_(params.sigma),
      mechanism_(mechanism),
      mode_(mode),
      zero_feedback_(params.zero_feedback()) {
  validate(params);
  if (zero_feedback_) return;
  const std::size_t cap = static_cast<std::size_t>(params.delay) + 1;
  ring_.resize(cap);
  eps_pow_.resize(cap);
  eps_pow_[0] = 1.0;
  for (std::size_t k = 1; k < cap; ++k) eps_pow_[k] = eps_pow_[k - 1] * epsilon_;
}

void AoiEstimator::advance(bool transmitted, Slot w) {
  if (!zero_feedback_) {
    if (size_ == ring_.size())
      throw ProtocolError("feedback for the oldest pending slot was never observed");
    if (size_ == 0) anchor_ = hhat_;
    std::size_t tail = head_ + size_;
    if (tail >= ring_.size()) tail -= ring_.size();
    ring_[tail] = SlotRecord{transmitted, w, hhat_};
    ++size_;
    active_ += transmitted ? 1 : 0;
  }
  hhat_ = zero_fb_update(hhat_, w, transmitted, epsilon_);
}

void AoiEstimator::observe(Feedback v) {
  if (zero_feedback_) {
    if (v != Feedback::None) throw ProtocolError("feedback for a zero-feedback source");
    return;
  }
  if (size_ != ring_.size()) throw ProtocolError("feedback arrived before its slot was due");

  const SlotRecord oldest = ring_[head_];
  if (++head_ == ring_.size()) head_ = 0;
  --size_;
  active_ -= oldest.transmitted ? 1 : 0;

  if (mode_ == Mode::Reference) {
    double x = delayed_update(mechanism_, oldest, oldest.hhat, v, epsilon_, sigma_);
    for (std::size_t i = 0; i < size_; ++i) {
      at(i).hhat = x;
      x = zero_fb_update(x, at(i).w, at(i).transmitted, epsilon_);
    }
    hhat_ = x;
    return;
  }

  const double corrected = delayed_update(mechanism_, oldest, anchor_, v, epsilon_, sigma_);
  if (size_ == 0) {
    hhat_ = corrected;
  } else {
    const double predicted = zero_fb_update(anchor_, oldest.w, oldest.transmitted, epsilon_);
    hhat_ += eps_pow_[active_] * (corrected - predicted);
  }
  anchor_ = corrected;
}

}  // namespace aoi
