#include "nullmodel/random.hpp"

#include <utility>

namespace nullmodel {

std::uint64_t mix64(std::uint64_t z) noexcept {
  // splitmix64 finalizer
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_key(const SeedSpec& seed, Purpose purpose) noexcept {
  std::uint64_t k = mix64(seed.master_seed);
  k = mix64(k ^ (seed.stream_id * 0xd1b54a32d192ed03ULL));
  return mix64(k ^ (static_cast<std::uint64_t>(purpose) * 0xaef17502108ef2d9ULL));
}

std::uint64_t KeyedStream::at(std::uint64_t index) const noexcept {
  return mix64(key_ ^ mix64(index));
}

std::uint64_t KeyedStream::below(std::uint64_t bound) noexcept {
  std::uint64_t x = (*this)();
  __uint128_t m = static_cast<__uint128_t>(x) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      x = (*this)();
      m = static_cast<__uint128_t>(x) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double pair_uniform(std::uint64_t key, std::uint64_t u, std::uint64_t v) noexcept {
  if (u > v) std::swap(u, v);
  return to_unit(mix64(key ^ mix64((u << 32) | v)));
}

} // namespace nullmodel
