#include <gtest/gtest.h>

#include <random>

#include "antidice/convolution.hpp"
#include "antidice/errors.hpp"
#include "oracles.hpp"

namespace antidice {
namespace {

using testing::as_map;
using testing::naive_power;

LatticeDistribution dist_of(const char* faces) { return to_lattice(parse_die(faces)).dist; }

TEST(Convolve, IdentityElement) {
  const LatticeDistribution x = dist_of("1,1,4,4,5,6");
  EXPECT_EQ(convolve(x, LatticeDistribution::delta(0)), x);
  EXPECT_EQ(convolve(LatticeDistribution::delta(0), x), x);
}

TEST(Convolve, PlusMinusOneSquared) {
  const LatticeDistribution d = dist_of("-1,1");
  const auto sq = as_map(convolve(d, d));
  EXPECT_EQ(sq, (std::map<std::int64_t, BigInt>{{-2, 1}, {0, 2}, {2, 1}}));
  EXPECT_EQ(convolve(d, d).total(), 4);
  EXPECT_EQ(convolve(d, d).offset(), -2);
}

TEST(Convolve, PeriodThreeDieTwoRolls) {
  const LatticeDistribution d = dist_of("-1,-1,2");
  EXPECT_EQ(as_map(convolve(d, d)), (std::map<std::int64_t, BigInt>{{-2, 4}, {1, 4}, {4, 1}}));
  EXPECT_EQ(as_map(convolve(d, d)), as_map(power(d, 2)));
}

TEST(Power, SmallExponents) {
  const LatticeDistribution d = dist_of("0,1,2,6,6,6");
  EXPECT_EQ(power(d, 1), d);
  EXPECT_EQ(power(d, 0), LatticeDistribution::delta(0));
  EXPECT_EQ(power(d, 0).total(), 1);
  const LatticeDistribution naive = convolve(convolve(convolve(convolve(d, d), d), d), d);
  EXPECT_EQ(power(d, 5), naive);
  EXPECT_EQ(as_map(power(d, 5)), naive_power(d, 5));
}

TEST(Power, AgainstSparseOracleUpToEight) {
  for (const char* faces : {"1,1,4,4,5,6", "-1,-1,2", "-9,3,5,0,7", "1/2,-1/2,3/2"}) {
    const LatticeDistribution d = dist_of(faces);
    for (unsigned k = 0; k <= 8; ++k) {
      EXPECT_EQ(as_map(power(d, k)), naive_power(d, k)) << faces << " k=" << k;
    }
  }
}

TEST(Kernels, KroneckerMatchesSchoolbookUpTo64) {
  const LatticeDistribution d = dist_of("-1,-1,-4,-4,-5,-6,0,0,-3,-3,-4,-5,1,1,-2,-2,-3,-4,5,5,2,2,1,0,5,5,2,2,1,0,5,5,2,2,1,0");
  LatticeDistribution school = LatticeDistribution::delta(0);
  LatticeDistribution kron = LatticeDistribution::delta(0);
  for (unsigned k = 1; k <= 64; ++k) {
    school = convolve(school, d, ConvolutionKernel::schoolbook);
    kron = convolve(kron, d, ConvolutionKernel::kronecker);
    ASSERT_EQ(school, kron) << "k=" << k;
  }
  EXPECT_EQ(power(d, 64, ConvolutionKernel::kronecker), school);
  EXPECT_EQ(power(d, 64, ConvolutionKernel::schoolbook), school);
  EXPECT_EQ(power(d, 64, ConvolutionKernel::automatic), school);
}

TEST(Kernels, RawProductsAgreeOnRandomArrays) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> len(1, 90);
  std::uniform_int_distribution<int> bits(0, 300);
  gmp_randclass grng(gmp_randinit_default);
  grng.seed(11);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<BigInt> a(static_cast<std::size_t>(len(rng)));
    std::vector<BigInt> b(static_cast<std::size_t>(len(rng)));
    for (auto& x : a) x = grng.get_z_bits(bits(rng));
    for (auto& x : b) x = (trial % 3 == 0) ? BigInt(0) : grng.get_z_bits(bits(rng));
    a.front() = 1;
    b.back() = 3;
    EXPECT_EQ(detail::schoolbook_product(a, b), detail::kronecker_product(a, b)) << "trial " << trial;
  }
}

TEST(PowerCache, MatchesPower) {
  const LatticeDistribution d = dist_of("-1,-1,2");
  PowerCache cache(d);
  EXPECT_EQ(cache.square(3), power(d, 8));
  for (std::uint64_t k : {0u, 1u, 5u, 13u, 31u}) EXPECT_EQ(cache.power(k), power(d, k));
}

TEST(RollSeries, AdvanceSeekRestore) {
  const LatticeDistribution d = dist_of("1,1,4,4,5,6");
  RollSeries series(d);
  EXPECT_EQ(series.rolls(), 0u);
  for (std::uint64_t k = 1; k <= 12; ++k) {
    series.advance();
    EXPECT_EQ(series.current(), power(d, k));
  }
  series.seek(40);
  EXPECT_EQ(series.rolls(), 40u);
  EXPECT_EQ(series.current(), power(d, 40));
  series.advance();
  EXPECT_EQ(series.current(), power(d, 41));

  RollSeries other(d);
  other.restore(7, power(d, 7));
  other.advance();
  EXPECT_EQ(other.current(), power(d, 8));
}

TEST(Cancellation, PowerStopsBetweenSteps) {
  std::stop_source source;
  source.request_stop();
  EXPECT_THROW(power(dist_of("1,2,3"), 1000, ConvolutionKernel::automatic, source.get_token()), Cancelled);
}

}  // namespace
}  // namespace antidice
