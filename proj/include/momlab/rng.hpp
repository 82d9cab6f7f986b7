#pragma once

#include <cstdint>
#include <random>

namespace momlab {

// SplitMix64 finalizer (Steele, Lea & Flood). Bijective on 64-bit words.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Engine seed for stream (base_seed, stream_index):
//   seed = splitmix64(base_seed ^ splitmix64(stream_index))
// The inner hash spreads consecutive indices over the whole word before they
// meet the base seed, so neighbouring streams do not start from related seeds.
constexpr std::uint64_t stream_seed(std::uint64_t base_seed, std::uint64_t stream_index) noexcept {
  return splitmix64(base_seed ^ splitmix64(stream_index));
}

// An independent random stream identified by (base_seed, stream_index).
//
// Each stream owns its engine; copying a stream copies its position, so two
// copies replay the same variates. Child streams for separate purposes (noise,
// arm generation, ...) are obtained with derive(), which applies the same
// mixing function with the parent's engine seed as the new base.
class RngStream {
 public:
  using engine_type = std::mt19937_64;

  RngStream(std::uint64_t base_seed, std::uint64_t stream_index)
      : base_seed_(base_seed),
        stream_index_(stream_index),
        seed_(stream_seed(base_seed, stream_index)),
        engine_(seed_) {}

  [[nodiscard]] RngStream derive(std::uint64_t tag) const { return RngStream(seed_, tag); }

  [[nodiscard]] std::uint64_t base_seed() const noexcept { return base_seed_; }
  [[nodiscard]] std::uint64_t stream_index() const noexcept { return stream_index_; }
  [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

  engine_type& engine() noexcept { return engine_; }

  // Uniform on [0, 1).
  double uniform() { return unit_(engine_); }

  friend bool operator==(const RngStream& a, const RngStream& b) {
    return a.seed_ == b.seed_ && a.engine_ == b.engine_;
  }

 private:
  std::uint64_t base_seed_;
  std::uint64_t stream_index_;
  std::uint64_t seed_;
  engine_type engine_;
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
};

// Fixed tags for the child streams used by a simulation path.
namespace stream_tag {
inline constexpr std::uint64_t instance = 0;
inline constexpr std::uint64_t noise = 1;
inline constexpr std::uint64_t arms = 2;
}  // namespace stream_tag

}  // namespace momlab
