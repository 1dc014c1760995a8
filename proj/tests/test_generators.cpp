#include <gtest/gtest.h>

#include <cmath>

#include "nmfa/generators.hpp"
#include "nmfa/metrics.hpp"
#include "reference.hpp"

using namespace nmfa;

namespace {

std::vector<std::size_t> degrees(const IsingProblem& p) {
  std::vector<std::size_t> d(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) d[i] = p.row(i).size();
  return d;
}

void expect_canonical(const IsingProblem& p) {
  EXPECT_FALSE(p.has_fields());
  for (const auto& c : p.couplers()) {
    EXPECT_LT(c.i, c.j);
    EXPECT_LT(c.j, p.size());
  }
}

}  // namespace

TEST(GenSk, CompleteWithUnitSigns) {
  const auto p = gen_sk(10, 7);
  EXPECT_EQ(p.edge_count(), 45u);
  for (const auto& c : p.couplers()) EXPECT_TRUE(c.w == 1.0 || c.w == -1.0);
  expect_canonical(p);
  EXPECT_EQ(p, gen_sk(10, 7));
  EXPECT_FALSE(p == gen_sk(10, 8));
  EXPECT_THROW(gen_sk(1, 0), InvalidArgument);
}

TEST(GenSk, SignFrequencyIsHalf) {
  std::size_t plus = 0;
  std::size_t total = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto p = gen_sk(200, seed);
    for (const auto& c : p.couplers()) {
      plus += c.w > 0 ? 1 : 0;
      ++total;
    }
  }
  const double frac = static_cast<double>(plus) / static_cast<double>(total);
  EXPECT_NEAR(frac, 0.5, 0.02);
  // 3-sigma binomial bound
  EXPECT_NEAR(frac, 0.5, 3.0 * std::sqrt(0.25 / static_cast<double>(total)));
}

TEST(GenDenseMaxcut, Basics) {
  const auto full = gen_dense_maxcut(5, 1.0, 3);
  EXPECT_EQ(full.edge_count(), 10u);
  for (const auto& c : full.couplers()) EXPECT_EQ(c.w, 1.0);
  EXPECT_EQ(gen_dense_maxcut(30, 0.5, 4), gen_dense_maxcut(30, 0.5, 4));
  EXPECT_THROW(gen_dense_maxcut(5, 0.0, 0), InvalidArgument);
  EXPECT_THROW(gen_dense_maxcut(5, 1.5, 0), InvalidArgument);
  EXPECT_THROW(gen_dense_maxcut(1, 0.5, 0), InvalidArgument);
}

TEST(GenDenseMaxcut, MeanEdgeCount) {
  double sum = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto p = gen_dense_maxcut(100, 0.5, seed);
    expect_canonical(p);
    sum += static_cast<double>(p.edge_count());
  }
  // n(n-1)p/2 = 2475; the mean over 100 draws has sd ~ 3.5
  EXPECT_NEAR(sum / 100.0, 2475.0, 50.0);
  EXPECT_NEAR(sum / 100.0, 2475.0, 3.0 * std::sqrt(4950 * 0.25 / 100.0));
}

TEST(GenCubicMaxcut, ThreeRegularSimple) {
  for (std::size_t n : {4u, 6u, 10u, 50u, 100u, 200u}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto p = gen_cubic_maxcut(n, seed);
      expect_canonical(p);
      EXPECT_EQ(p.edge_count(), 3 * n / 2);
      for (auto d : degrees(p)) EXPECT_EQ(d, 3u);
      for (const auto& c : p.couplers()) EXPECT_EQ(c.w, 1.0);
    }
  }
  EXPECT_EQ(gen_cubic_maxcut(100, 9), gen_cubic_maxcut(100, 9));
}

TEST(GenCubicMaxcut, FourVerticesIsK4) {
  const auto p = gen_cubic_maxcut(4, 123);
  EXPECT_EQ(p.edge_count(), 6u);
}

TEST(GenCubicMaxcut, ConnectivityIsReported) {
  std::size_t connected = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    connected += component_count(gen_cubic_maxcut(100, seed)) == 1 ? 1 : 0;
  }
  // Random cubic graphs are connected with high probability.
  EXPECT_GE(connected, 18u);
}

TEST(GenCubicMaxcut, InvalidSizes) {
  EXPECT_THROW(gen_cubic_maxcut(5, 0), InvalidArgument);
  EXPECT_THROW(gen_cubic_maxcut(2, 0), InvalidArgument);
}

TEST(MoebiusLadder, Structure) {
  const auto m16 = moebius_ladder(16);
  EXPECT_EQ(m16.edge_count(), 24u);
  for (auto d : degrees(m16)) EXPECT_EQ(d, 3u);
  expect_canonical(m16);

  // n = 6 is K_{3,3}: bipartite, so the whole edge set can be cut.
  const auto m6 = moebius_ladder(6);
  EXPECT_EQ(m6.edge_count(), 9u);
  EXPECT_EQ(brute_force_ground(m6).energy.value, -9.0);

  EXPECT_THROW(moebius_ladder(7), InvalidArgument);
  EXPECT_THROW(moebius_ladder(4), InvalidArgument);
}

TEST(MoebiusLadder, GroundEnergyMatchesEnumeration) {
  const auto ground = oracle::naive_ground(oracle::to_dense(moebius_ladder(16)));
  EXPECT_EQ(ground.energy, -20.0);
  EXPECT_EQ(brute_force_ground(moebius_ladder(16)).energy.value, ground.energy);
}

TEST(Generate, DispatchesOnClass) {
  EXPECT_EQ(generate({InstanceClass::Moebius, 8, 0.5, 0}), moebius_ladder(8));
  EXPECT_EQ(generate({InstanceClass::SK, 8, 0.5, 4}), gen_sk(8, 4));
  EXPECT_EQ(parse_instance_class("cubic"), InstanceClass::CubicMaxCut);
  EXPECT_FALSE(parse_instance_class("planar"));
}
