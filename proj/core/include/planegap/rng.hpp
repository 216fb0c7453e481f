#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace planegap {

std::uint64_t SplitMix64(std::uint64_t x);

// Seeded generator addressed by (seed, stream). Two generators with the same
// address produce identical sequences, so a Monte Carlo draw keyed by its
// sample index is reproducible no matter which worker runs it.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  // Child stream derived from this generator's address, not its state.
  Rng Substream(std::uint64_t index) const;

  std::uint64_t NextU64() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double Uniform();
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  // Uniform on [lo, hi], inclusive.
  std::int64_t UniformInt(std::int64_t lo, std::int64_t hi);
  // Exponential with the given rate; rate 0 yields +infinity.
  double Exponential(double rate);
  bool Coin() { return (NextU64() >> 63) != 0; }

  template <typename T>
  void Shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      auto j = static_cast<std::size_t>(
          UniformInt(0, static_cast<std::int64_t>(i) - 1));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

}  // namespace planegap
