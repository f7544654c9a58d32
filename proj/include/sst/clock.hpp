#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sst/types.hpp"

namespace sst {

/// Modular tick counter, Z_{t_max}. Advanced explicitly; never reads wall time.
struct EpochClock {
  Tick t = 0;
  Tick t_max = Tick{1} << 32;

  bool operator==(const EpochClock&) const = default;
};

/// (t + 1) mod t_max. Throws invalid_input if t_max <= 1.
EpochClock tick(EpochClock clock);

/// Ticks elapsed from `then` to `now` on a clock that wraps at `t_max`.
Tick elapsed(Tick then, Tick now, Tick t_max);

/// Cylindrical decomposition of `t` over nested bucket sizes, e.g. hours
/// within a week for period {24, 7}: key[i] = (t / prod(size[j<i])) mod size[i].
std::vector<Tick> time_key(Tick t, std::span<const Tick> period);

}  // namespace sst
