#include "vspiker/rng.hpp"

#include <cmath>
#include <numbers>

namespace vspiker {

// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t CounterRng::bits(std::uint64_t counter) const noexcept {
  return mix64(mix64(mix64(seed_) ^ stream_) ^ counter);
}

double CounterRng::uniform(std::uint64_t counter) const noexcept {
  // 53 random mantissa bits, offset by half an ulp to exclude 0 and 1.
  return (static_cast<double>(bits(counter) >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal(std::uint64_t counter) const noexcept {
  const double u1 = uniform(2 * counter);
  const double u2 = uniform(2 * counter + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace vspiker
