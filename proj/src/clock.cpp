#include "sst/clock.hpp"

#include "sst/error.hpp"

namespace sst {

EpochClock tick(EpochClock clock) {
  if (clock.t_max <= 1) throw Error(ErrorKind::invalid_input, "clock modulus must exceed 1");
  clock.t = (clock.t + 1) % clock.t_max;
  return clock;
}

Tick elapsed(Tick then, Tick now, Tick t_max) {
  if (t_max == 0) return now - then;
  return (now % t_max + t_max - then % t_max) % t_max;
}

std::vector<Tick> time_key(Tick t, std::span<const Tick> period) {
  std::vector<Tick> key;
  key.reserve(period.size());
  Tick stride = 1;
  for (Tick size : period) {
    if (size == 0) throw Error(ErrorKind::invalid_input, "bucket size must be at least 1");
    key.push_back((t / stride) % size);
    stride *= size;
  }
  return key;
}

}  // namespace sst
