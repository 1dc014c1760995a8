#include <gtest/gtest.h>

#include <random>

#include "nmfa/generators.hpp"
#include "nmfa/ising.hpp"
#include "reference.hpp"

using namespace nmfa;
using namespace nmfa::oracle;

namespace {

IsingProblem pair_problem() { return IsingProblem(2, {}, {{0, 1, 1.0}}); }

IsingProblem triangle() { return IsingProblem(3, {}, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}}); }

SpinConfig alternating(std::size_t n) {
  std::vector<std::int8_t> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = i % 2 == 0 ? 1 : -1;
  return SpinConfig(s);
}

}  // namespace

TEST(IsingProblem, RejectsInvalidCouplers) {
  EXPECT_THROW(IsingProblem(2, {}, {{0, 2, 1.0}}), InvalidArgument);
  EXPECT_THROW(IsingProblem(2, {}, {{1, 1, 1.0}}), InvalidArgument);
  EXPECT_THROW(IsingProblem(3, {}, {{0, 1, 1.0}, {1, 0, 2.0}}), InvalidArgument);
  EXPECT_THROW(IsingProblem(2, {}, {{0, 1, 0.0}}), InvalidArgument);
  EXPECT_THROW(IsingProblem(2, {1.0, 2.0, 3.0}, {}), DimensionError);
  EXPECT_THROW(IsingProblem(0, {}, {}), InvalidArgument);
}

TEST(IsingProblem, RowsAreSymmetric) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = random_problem(rng, 15, 0.3, false, true);
    for (std::size_t i = 0; i < p.size(); ++i) {
      for (const auto& nb : p.row(i)) {
        bool found = false;
        for (const auto& back : p.row(nb.index)) {
          if (back.index == i) {
            EXPECT_EQ(back.w, nb.w);
            found = true;
          }
        }
        EXPECT_TRUE(found);
      }
    }
  }
}

TEST(IsingProblem, DenseStorageAboveThreshold) {
  EXPECT_TRUE(gen_sk(10, 1).is_dense());
  EXPECT_FALSE(moebius_ladder(16).is_dense());
  // 3 of 6 possible pairs: density exactly 0.5
  EXPECT_TRUE(IsingProblem(4, {}, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}}).is_dense());
}

TEST(SpinConfig, RejectsNonUnitValues) {
  EXPECT_THROW(SpinConfig({1, 0, -1}), InvalidArgument);
  EXPECT_THROW(SpinConfig(std::vector<std::int8_t>{2}), InvalidArgument);
}

TEST(Energy, Examples) {
  EXPECT_EQ(energy(pair_problem(), {1, 1}).value, 1.0);
  EXPECT_EQ(energy(pair_problem(), {1, -1}).value, -1.0);
  EXPECT_EQ(energy(moebius_ladder(16), alternating(16)).value, -8.0);
}

TEST(Energy, DimensionMismatch) {
  EXPECT_THROW(energy(pair_problem(), {1, 1, 1}), DimensionError);
}

TEST(Energy, ParityMatchesCouplerCountForUnitWeights) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = gen_sk(9, rng());
    const auto s = to_config(random_spins(rng, 9));
    const auto e = static_cast<long long>(energy(p, s).value);
    EXPECT_EQ(static_cast<double>(e), energy(p, s).value);
    EXPECT_EQ(std::llabs(e) % 2, static_cast<long long>(p.edge_count() % 2));
  }
}

TEST(Energy, GlobalFlipSymmetry) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = random_problem(rng, 12, 0.4, false, false);
    const auto s = to_config(random_spins(rng, 12));
    EXPECT_EQ(energy(p, s).value, energy(p, s.negated()).value);
  }
}

TEST(CutValue, Examples) {
  const auto m = moebius_ladder(16);
  EXPECT_EQ(cut_value(m, alternating(16)), 16.0);
  EXPECT_EQ(cut_value(m, SpinConfig::all_up(16)), 0.0);
  EXPECT_EQ(cut_value(triangle(), {1, 1, -1}), 2.0);
}

TEST(CutValue, RejectsFields) {
  const IsingProblem p(2, {1.0, 0.0}, {{0, 1, 1.0}});
  EXPECT_THROW(cut_value(p, {1, 1}), UnsupportedConversion);
}

TEST(CutValue, EnergyIdentityHoldsForEveryConfig) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = random_problem(rng, 10, 0.5, true, false);
    for (std::uint64_t k = 0; k < 1024; ++k) {
      const auto s = to_config(bits_to_spins(k, 10));
      EXPECT_EQ(2.0 * cut_value(p, s) + energy(p, s).value, p.total_weight());
    }
  }
}

TEST(MeanField, Examples) {
  EXPECT_EQ(mean_field(pair_problem(), std::vector{0.5, -0.5}), (FieldVector{-0.5, 0.5}));
  const IsingProblem fields_only(2, {1.0, 0.0}, {});
  EXPECT_EQ(mean_field(fields_only, std::vector{0.0, 0.0}), (FieldVector{1.0, 0.0}));
  EXPECT_THROW(mean_field(pair_problem(), std::vector{0.0}), DimensionError);
}

TEST(MeanField, MatchesDenseOracleOnFiftySpins) {
  std::mt19937_64 rng(50);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (double density : {0.1, 0.9}) {
    const auto p = random_problem(rng, 50, density, false, true);
    std::vector<double> s(50);
    for (auto& v : s) v = unit(rng);
    const auto got = mean_field(p, s);
    const auto want = naive_mean_field(to_dense(p), s);
    for (std::size_t i = 0; i < 50; ++i) EXPECT_LE(relative_error(got[i], want[i]), 1e-12);
  }
}

TEST(MeanField, LinearWithoutFields) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = random_problem(rng, 20, trial % 2 ? 0.2 : 0.8, false, false);
    std::vector<double> a(20), b(20), mix(20);
    const double ca = unit(rng), cb = unit(rng);
    for (std::size_t i = 0; i < 20; ++i) {
      a[i] = unit(rng);
      b[i] = unit(rng);
      mix[i] = ca * a[i] + cb * b[i];
    }
    const auto fa = mean_field(p, a);
    const auto fb = mean_field(p, b);
    const auto fm = mean_field(p, mix);
    for (std::size_t i = 0; i < 20; ++i) EXPECT_NEAR(fm[i], ca * fa[i] + cb * fb[i], 1e-12);
  }
}

TEST(Normalizers, Examples) {
  EXPECT_EQ(normalizers(pair_problem()), (std::vector{1.0, 1.0}));
  const IsingProblem p(3, {3.0, 0.0, 0.0}, {{0, 1, 4.0}});
  const auto norms = normalizers(p);
  EXPECT_EQ(norms[0], 5.0);
  EXPECT_EQ(norms[2], 0.0);
}

TEST(SignRound, Examples) {
  EXPECT_EQ(sign_round(std::vector{0.3, -0.2}), (SpinConfig{1, -1}));
  EXPECT_EQ(sign_round(std::vector{0.0}), (SpinConfig{1}));
  EXPECT_EQ(sign_round(std::vector{-1.0, 1.0}), (SpinConfig{-1, 1}));
}

TEST(OracleEquivalence, EnergyAndMeanFieldOnRandomInstances) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t n = 1 + rng() % 64;
    const bool integer = trial % 2 == 0;
    const auto p = random_problem(rng, n, 0.05 + 0.9 * unit(rng) * unit(rng), integer, trial % 3 == 0);
    const auto dense = to_dense(p);
    const auto s = random_spins(rng, n);
    const double got = energy(p, to_config(s)).value;
    const double want = naive_energy(dense, s);
    if (integer) {
      EXPECT_EQ(got, want);
    } else {
      EXPECT_LE(relative_error(got, want), 1e-12);
    }
    std::vector<double> x(n);
    for (auto& v : x) v = unit(rng);
    const auto fg = mean_field(p, x);
    const auto fw = naive_mean_field(dense, x);
    for (std::size_t i = 0; i < n; ++i) EXPECT_LE(relative_error(fg[i], fw[i]), 1e-12);
  }
}
