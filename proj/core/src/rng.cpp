#include "planegap/rng.hpp"

#include <cmath>
#include <limits>

namespace planegap {

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed),
      stream_(stream),
      engine_(SplitMix64(SplitMix64(seed) ^ (stream * 0xd1342543de82ef95ULL +
                                             0x632be59bd9b4e019ULL))) {}

Rng Rng::Substream(std::uint64_t index) const {
  return Rng(SplitMix64(seed_ ^ SplitMix64(stream_ + 0x5851f42d4c957f2dULL)),
             index);
}

double Rng::Uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::int64_t Rng::UniformInt(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(engine_());
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t draw;
  do {
    draw = engine_();
  } while (draw >= limit);
  return lo + static_cast<std::int64_t>(draw % span);
}

double Rng::Exponential(double rate) {
  if (rate <= 0) return std::numeric_limits<double>::infinity();
  // 1 - U lies in (0, 1], so the log is finite.
  return -std::log(1.0 - Uniform()) / rate;
}

}  // namespace planegap
