#pragma once

#include <chrono>
#include <optional>
#include <string>

#include "artin/error.hpp"

namespace artin {

/// Wall-clock deadline polled by long computations. A default-constructed
/// budget never expires.
class Budget {
 public:
  using Clock = std::chrono::steady_clock;

  Budget() = default;
  explicit Budget(double seconds)
      : deadline_(Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(seconds))),
        seconds_(seconds) {}

  bool expired() const { return deadline_ && Clock::now() > *deadline_; }
  /// Throws BudgetExceeded naming `what` once the deadline has passed.
  void check(const char* what) const {
    if (expired()) throw BudgetExceeded(std::string(what) + ": budget of " + std::to_string(seconds_) + " s exceeded");
  }

 private:
  std::optional<Clock::time_point> deadline_;
  double seconds_ = 0;
};

}  // namespace artin
