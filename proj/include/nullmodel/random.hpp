#pragma once

#include <cstdint>
#include <limits>

namespace nullmodel {

// Identifies one realization: all of its randomness derives from this pair.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;
};

// Independent sub-streams of one realization.
enum class Purpose : std::uint64_t {
  degrees = 1,
  matching = 2,
  weights = 3,
  irg_pairs = 4,
  irg_skip = 5,
  radii = 6,
  angles = 7,
  stable = 8,
};

std::uint64_t mix64(std::uint64_t z) noexcept;

// 64-bit key for (seed, purpose).
std::uint64_t derive_key(const SeedSpec& seed, Purpose purpose) noexcept;

// Uniform in [0,1) with 53 random bits.
inline double to_unit(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Uniform in (0,1].
inline double to_unit_open_low(std::uint64_t bits) noexcept {
  return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

// Counter-based generator: draw i is a pure function of (key, i), so the
// i-th value never depends on how many threads produced the others.
class KeyedStream {
public:
  using result_type = std::uint64_t;

  KeyedStream(const SeedSpec& seed, Purpose purpose) : key_(derive_key(seed, purpose)) {}
  explicit KeyedStream(std::uint64_t key) : key_(key) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept { return at(counter_++); }
  result_type at(std::uint64_t index) const noexcept;

  double uniform() noexcept { return to_unit((*this)()); }
  double uniform_open_low() noexcept { return to_unit_open_low((*this)()); }
  // Uniform integer in [0, bound), Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t bound) noexcept;

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t position() const noexcept { return counter_; }

private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Per-pair uniform in [0,1), symmetric in (u,v). Ids must fit in 32 bits.
double pair_uniform(std::uint64_t key, std::uint64_t u, std::uint64_t v) noexcept;

} // namespace nullmodel
