#include "clirgate/translators/clock.hpp"

#include <thread>

namespace clirgate::translators {

double WallClock::now_ms() const {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - origin_).count();
}

void WallClock::wait_ms(double ms) {
  if (ms > 0) std::this_thread::sleep_for(std::chrono::duration<double, std::milli>(ms));
}

}  // namespace clirgate::translators
