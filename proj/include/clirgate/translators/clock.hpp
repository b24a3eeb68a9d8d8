#pragma once

#include <atomic>
#include <chrono>
#include <memory>

namespace clirgate::translators {

/// Time source for latency accounting. A virtual clock only moves when told
/// to; a wall clock really sleeps.
class Clock {
 public:
  virtual ~Clock() = default;

  virtual double now_ms() const = 0;
  /// Spends `ms` of this clock's time: advances a virtual clock, sleeps on a wall clock.
  virtual void wait_ms(double ms) = 0;
  virtual bool is_virtual() const noexcept = 0;
  /// An independent clock starting at now(); background work uses one so it
  /// does not move the serving timeline.
  virtual std::unique_ptr<Clock> fork() const = 0;
};

class VirtualClock final : public Clock {
 public:
  explicit VirtualClock(double start_ms = 0.0) : now_(start_ms) {}

  double now_ms() const override { return now_.load(std::memory_order_acquire); }
  void wait_ms(double ms) override { now_.fetch_add(ms, std::memory_order_acq_rel); }
  bool is_virtual() const noexcept override { return true; }
  std::unique_ptr<Clock> fork() const override { return std::make_unique<VirtualClock>(now_ms()); }

  void set_ms(double ms) { now_.store(ms, std::memory_order_release); }

 private:
  std::atomic<double> now_;
};

class WallClock final : public Clock {
 public:
  WallClock() : origin_(std::chrono::steady_clock::now()) {}

  double now_ms() const override;
  void wait_ms(double ms) override;
  bool is_virtual() const noexcept override { return false; }
  std::unique_ptr<Clock> fork() const override { return std::make_unique<WallClock>(*this); }

 private:
  std::chrono::steady_clock::time_point origin_;
};

}  // namespace clirgate::translators
