#pragma once

#include <array>
#include <cstdint>

namespace spa {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Stateless:
/// every output block is a pure function of (counter, key).
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter generate(Counter counter, Key key) noexcept;
};

/// Random streams of the generation process, keyed by seed.
///
/// The position of vertex t draws from lane 0 at counter (t, coordinate);
/// the coin for the candidate pair (t, u) draws from lane 1 at counter (t, u).
/// Draws are addressed, not sequenced, so any discovery order of candidates
/// consumes exactly the same randomness.
class StepStreams {
 public:
  explicit StepStreams(std::uint64_t seed) noexcept;

  // Uniform in [0,1) with 53 random bits.
  double position_uniform(std::uint64_t step, std::uint32_t coordinate) const noexcept;
  double coin_uniform(std::uint64_t step, std::uint32_t candidate) const noexcept;

  // Bernoulli(p) trial for the candidate pair; p = 0 never fires, p = 1 always does.
  bool coin(std::uint64_t step, std::uint32_t candidate, double p) const noexcept {
    return coin_uniform(step, candidate) < p;
  }

 private:
  double uniform(std::uint32_t lane, std::uint64_t step, std::uint32_t index) const noexcept;

  Philox4x32::Key key_;
};

/// Converts the top 53 bits of a 64-bit word to a double in [0,1).
inline double to_unit_double(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace spa
