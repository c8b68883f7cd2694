#pragma once

#include <cstdint>

namespace vspiker {

/// Stateless counter-based generator: every draw is a pure function of
/// (seed, stream, counter), so values do not depend on draw order.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) : seed_(seed), stream_(stream) {}

  std::uint64_t bits(std::uint64_t counter) const noexcept;
  /// Uniform on (0, 1).
  double uniform(std::uint64_t counter) const noexcept;
  /// Standard normal (Box-Muller over two uniforms derived from `counter`).
  double normal(std::uint64_t counter) const noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

  friend bool operator==(const CounterRng&, const CounterRng&) = default;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
};

std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace vspiker
