#include <set>

#include "doctest.h"
#include "spa/rng.hpp"

using namespace spa;

TEST_CASE("philox4x32-10 known-answer vectors") {
  using C = Philox4x32::Counter;
  using K = Philox4x32::Key;
  CHECK(Philox4x32::generate(C{0, 0, 0, 0}, K{0, 0}) ==
        C{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
  CHECK(Philox4x32::generate(C{0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                             K{0xffffffffu, 0xffffffffu}) ==
        C{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
  CHECK(Philox4x32::generate(C{0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                             K{0xa4093822u, 0x299f31d0u}) ==
        C{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("streams are addressed, not sequenced") {
  const StepStreams s(42);
  const double a = s.coin_uniform(10, 3);
  (void)s.coin_uniform(10, 4);
  (void)s.position_uniform(10, 0);
  CHECK(s.coin_uniform(10, 3) == a);
  CHECK(StepStreams(42).coin_uniform(10, 3) == a);
  CHECK(StepStreams(43).coin_uniform(10, 3) != a);
}

TEST_CASE("lanes and counters are distinct") {
  const StepStreams s(1);
  std::set<double> seen;
  for (std::uint64_t t = 1; t <= 200; ++t) {
    for (std::uint32_t k = 0; k < 4; ++k) {
      seen.insert(s.position_uniform(t, k));
      seen.insert(s.coin_uniform(t, k));
    }
  }
  CHECK(seen.size() == 200 * 8);
}

TEST_CASE("uniforms lie in [0,1) and have sensible mean") {
  const StepStreams s(99);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = s.coin_uniform(static_cast<std::uint64_t>(i), 7);
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.005));
}

TEST_CASE("coin extremes") {
  const StepStreams s(5);
  for (std::uint32_t u = 1; u < 1000; ++u) {
    REQUIRE_FALSE(s.coin(77, u, 0.0));
    REQUIRE(s.coin(77, u, 1.0));
  }
  CHECK(to_unit_double(~std::uint64_t{0}) < 1.0);
  CHECK(to_unit_double(0) == 0.0);
}
