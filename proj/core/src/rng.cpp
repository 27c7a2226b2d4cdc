#include "spa/rng.hpp"

namespace spa {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(product >> 32);
  lo = static_cast<std::uint32_t>(product);
}

inline Philox4x32::Counter round(Philox4x32::Counter c, Philox4x32::Key k) {
  std::uint32_t hi0, lo0, hi1, lo1;
  mulhilo(kMul0, c[0], hi0, lo0);
  mulhilo(kMul1, c[2], hi1, lo1);
  return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

}  // namespace

Philox4x32::Counter Philox4x32::generate(Counter counter, Key key) noexcept {
  for (int r = 0; r < 10; ++r) {
    if (r > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    counter = round(counter, key);
  }
  return counter;
}

StepStreams::StepStreams(std::uint64_t seed) noexcept
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

double StepStreams::uniform(std::uint32_t lane, std::uint64_t step,
                            std::uint32_t index) const noexcept {
  const Philox4x32::Counter ctr{index, lane, static_cast<std::uint32_t>(step),
                                static_cast<std::uint32_t>(step >> 32)};
  const auto out = Philox4x32::generate(ctr, key_);
  const std::uint64_t bits = (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
  return to_unit_double(bits);
}

double StepStreams::position_uniform(std::uint64_t step, std::uint32_t coordinate) const noexcept {
  return uniform(0, step, coordinate);
}

double StepStreams::coin_uniform(std::uint64_t step, std::uint32_t candidate) const noexcept {
  return uniform(1, step, candidate);
}

}  // namespace spa
