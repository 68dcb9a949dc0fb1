#include "rcs/rng.hpp"

#include <array>
#include <cstdint>
#include <set>

#include <gtest/gtest.h>

#include "rcs/spoof.hpp"
#include "rcs/xeb.hpp"

namespace rcs {
namespace {

// Expected values below come from an independent Python transcription of
// the generator and substream rule.

TEST(Xoshiro256, ReferenceSequenceForSeedZero) {
  Xoshiro256 rng(0);
  EXPECT_EQ(rng.next(), 0x99ec5f36cb75f2b4ULL);
  EXPECT_EQ(rng.next(), 0xbf6e1f784956452aULL);
  EXPECT_EQ(rng.next(), 0x1a5f849d4933e6e0ULL);
  EXPECT_EQ(rng.next(), 0x6aa594f1262d2d2cULL);
}

TEST(Xoshiro256, SubstreamDerivation) {
  EXPECT_EQ(stream_seed(42, {1, 2}), 0xec94b527c144155bULL);
  EXPECT_NE(stream_seed(42, {1, 2}), stream_seed(42, {2, 1}));
  EXPECT_EQ(stream_seed(9, {}), 9u);
}

TEST(Xoshiro256, BoundedDraws) {
  Xoshiro256 rng(7);
  const std::array<std::uint64_t, 6> expected = {2, 0, 2, 2, 2, 2};
  for (auto e : expected) EXPECT_EQ(rng.below(3), e);
}

TEST(Xoshiro256, UniformInUnitInterval) {
  Xoshiro256 rng(123);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(Xoshiro256, SamplersFollowTheStreamContract) {
  ProbabilityTable uniform{2, {0.25, 0.25, 0.25, 0.25}};
  const SampleSet s = sample_from_distribution(uniform, 8, 42);
  EXPECT_EQ(s.bitstrings, (std::vector<Bitstring>{3, 3, 0, 0, 3, 0, 3, 2}));

  const SampleSet coins = coin_toss_sampler(10, 4, 3);
  EXPECT_EQ(coins.bitstrings, (std::vector<Bitstring>{457, 668, 556, 316}));
}

TEST(Xoshiro256, DistinctStreamsDiffer) {
  std::set<std::uint64_t> firsts;
  for (std::uint64_t c = 0; c < 50; ++c)
    for (std::uint64_t q = 0; q < 50; ++q) firsts.insert(make_stream(1, {c, q}).next());
  EXPECT_EQ(firsts.size(), 2500u);
}

}  // namespace
}  // namespace rcs
