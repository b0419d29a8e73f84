#pragma once

#include <algorithm>

namespace platoon {

// Controlled deceleration: walks a velocity reference down to zero at a
// fixed rate, one controller tick at a time.
inline double graceful_stop_ref(double prev_ref, double decel, double ts) {
  return std::max(0.0, prev_ref - decel * ts);
}

}  // namespace platoon
