#include <gtest/gtest.h>

#include <random>

#include "spinbath/spinbath.hpp"
#include "test_util.hpp"

namespace spinbath {
namespace {

using testing::max_abs_diff;
using testing::random_bath;
using testing::random_environment;
using testing::random_pair_state;
using testing::random_unit_disk;

TEST(RhoTwoBaths, NoDecoherenceGivesProjector) {
  const auto e1 = make_bell_state(1);
  EXPECT_EQ(max_abs_diff(rho_two_baths(e1, 1.0, 1.0).matrix(), e1.projector()), 0.0);
}

TEST(RhoTwoBaths, FullDephasingOfE1) {
  Matrix4 expected = Matrix4::Zero();
  expected(0, 0) = 0.5;
  expected(3, 3) = 0.5;
  EXPECT_LE(max_abs_diff(rho_two_baths(make_bell_state(1), 0.0, 0.0).matrix(), expected), 2e-16);
}

TEST(RhoTwoBaths, RejectsFactorsOutsideUnitDisk) {
  EXPECT_THROW(rho_two_baths(make_bell_state(1), cplx(1.1), cplx(1.0)), std::invalid_argument);
  EXPECT_THROW(rho_common_bath(make_bell_state(1), 1.0, 1.0, cplx(0.0, 1.5), 1.0),
               std::invalid_argument);
}

TEST(RhoCommonBath, NoDecoherenceGivesProjector) {
  std::mt19937_64 rng(2);
  const auto psi = random_pair_state(rng);
  EXPECT_LE(max_abs_diff(rho_common_bath(psi, 1.0, 1.0, 1.0, 1.0).matrix(), psi.projector()),
            1e-16);
}

TEST(RhoCommonBath, AntiparallelCoherenceCarriesR12Minus) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const auto rho = rho_common_bath(make_bell_state(2), random_unit_disk(rng),
                                     random_unit_disk(rng), random_unit_disk(rng), 1.0);
    EXPECT_NEAR(concurrence(rho), 1.0, 1e-12);
  }
}

TEST(RhoCommonBath, EntryLayout) {
  const PairState psi({cplx(0.5), cplx(0.0, 0.5), cplx(-0.5), cplx(0.5, 0.0)});
  const cplx r1{0.3, 0.1}, r2{-0.2, 0.4}, rp{0.05, -0.6}, rm{0.7, 0.2};
  const auto rho = rho_common_bath(psi, r1, r2, rp, rm);
  const auto a = psi.amplitudes();
  EXPECT_EQ(rho(0, 1), a[0] * std::conj(a[1]) * r2);
  EXPECT_EQ(rho(0, 2), a[0] * std::conj(a[2]) * r1);
  EXPECT_EQ(rho(0, 3), a[0] * std::conj(a[3]) * rp);
  EXPECT_EQ(rho(1, 2), a[1] * std::conj(a[2]) * rm);
  EXPECT_EQ(rho(1, 3), a[1] * std::conj(a[3]) * r1);
  EXPECT_EQ(rho(2, 3), a[2] * std::conj(a[3]) * r2);
  EXPECT_EQ(rho(3, 0), std::conj(rho(0, 3)));
}

TEST(SpinFlip, BellProjectorsInvariant) {
  for (int k = 1; k <= 4; ++k) {
    const DensityMatrix4 rho(make_bell_state(k).projector());
    EXPECT_LE(spin_flip(rho).max_abs_diff(rho), 1e-16) << "e" << k;
  }
}

TEST(SpinFlip, ProductStateFlips) {
  Matrix4 up = Matrix4::Zero();
  up(0, 0) = 1.0;
  Matrix4 down = Matrix4::Zero();
  down(3, 3) = 1.0;
  EXPECT_EQ(max_abs_diff(spin_flip(DensityMatrix4(up)).matrix(), down), 0.0);
}

// The flipped matrix written out entry by entry for a generic state under
// two baths.
TEST(SpinFlip, MatchesExplicitFlippedTwoBathMatrix) {
  std::mt19937_64 rng(11);
  const auto psi = random_pair_state(rng);
  const cplx r1 = random_unit_disk(rng);
  const cplx r2 = random_unit_disk(rng);
  const cplx uu = psi[0], ud = psi[1], du = psi[2], dd = psi[3];
  const auto c = [](cplx z) { return std::conj(z); };
  Matrix4 e;
  e << std::norm(dd), -du * c(dd) * r2, -ud * c(dd) * r1, uu * c(dd) * r1 * r2,
      -c(du) * dd * c(r2), std::norm(du), ud * c(du) * r1 * c(r2), -uu * c(du) * r1,
      -c(ud) * dd * c(r1), c(ud) * du * c(r1) * r2, std::norm(ud), -uu * c(ud) * r2,
      c(uu) * dd * c(r1) * c(r2), -c(uu) * du * c(r1), -c(uu) * ud * c(r2), std::norm(uu);
  EXPECT_LE(max_abs_diff(spin_flip(rho_two_baths(psi, r1, r2)).matrix(), e), 1e-16);
}

TEST(SpinFlip, InvolutionPreservingTraceAndHermiticity) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 100; ++i) {
    const auto rho = rho_common_bath(random_pair_state(rng), random_unit_disk(rng),
                                     random_unit_disk(rng), random_unit_disk(rng),
                                     random_unit_disk(rng));
    const auto f = spin_flip(rho);
    EXPECT_LE(spin_flip(f).max_abs_diff(rho), 1e-12);
    EXPECT_NEAR(std::abs(f.trace() - rho.trace()), 0.0, 1e-15);
    EXPECT_LE(f.hermiticity_error(), 1e-15);
  }
}

TEST(RhoTimeSweep, GridAtZeroIsPure) {
  std::mt19937_64 rng(13);
  const auto psi = random_pair_state(rng);
  for (auto s : {SweepScenario::TwoBath, SweepScenario::Common, SweepScenario::OneCoupled}) {
    const auto env = random_environment(rng, s, 4, 3);
    const auto out = rho_time_sweep(psi, env, {0.0});
    ASSERT_EQ(out.size(), 1u);
    EXPECT_LE(max_abs_diff(out[0].matrix(), psi.projector()), 1e-16);
  }
}

TEST(RhoTimeSweep, BellConcurrenceIsProductOfModuli) {
  std::mt19937_64 rng(14);
  const auto env = random_environment(rng, SweepScenario::TwoBath, 6, 6);
  const auto& sep = std::get<SeparateBaths>(env);
  std::vector<double> grid;
  for (int i = 0; i < 100; ++i) grid.push_back(0.04 * i);
  const auto rhos = rho_time_sweep(make_bell_state(1), env, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double expect =
        std::abs(factor_separate(sep.bath1, grid[i])) * std::abs(factor_separate(sep.bath2, grid[i]));
    EXPECT_NEAR(concurrence(rhos[i]), expect, 1e-10) << "t=" << grid[i];
  }
}

TEST(RhoTimeSweep, MatchesOracleOnGrid) {
  std::mt19937_64 rng(15);
  const auto env = random_environment(rng, SweepScenario::TwoBath, 5, 5);
  const auto psi = random_pair_state(rng);
  std::vector<double> grid;
  for (int i = 0; i < 10; ++i) grid.push_back(0.13 * i);
  const auto rhos = rho_time_sweep(psi, env, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto brute = oracle::partial_trace_pair(oracle::evolve_full_state(psi, env, grid[i]));
    EXPECT_LE(rhos[i].max_abs_diff(brute), 1e-12);
  }
}

TEST(RhoTimeSweep, RejectsBadGrids) {
  std::mt19937_64 rng(16);
  const auto env = random_environment(rng, SweepScenario::TwoBath, 2, 2);
  EXPECT_THROW(rho_time_sweep(make_bell_state(1), env, {}), std::invalid_argument);
  EXPECT_THROW(rho_time_sweep(make_bell_state(1), env, {0.0, 0.2, 0.1}), std::invalid_argument);
}

TEST(DensityProperties, ValidAndPopulationsConstant) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 60; ++i) {
    const auto scenario = static_cast<SweepScenario>(i % 3);
    const auto env = random_environment(rng, scenario, 1 + i % 9, 1 + i % 4);
    const auto psi = random_pair_state(rng);
    for (double t : {0.0, 0.3, 1.7, 12.0}) {
      const auto rho = rho_at(psi, env, t);
      EXPECT_NO_THROW(rho.validate());
      for (int p = 0; p < 4; ++p) EXPECT_EQ(rho(p, p).real(), std::norm(psi[p]));
    }
  }
}

TEST(DensityProperties, OneCoupledSpinStillDecays) {
  std::mt19937_64 rng(18);
  const Bath b = random_bath(rng, 30, BathLabel::Bath1);
  const double a = gaussian_rate(b, FrequencySelector::Coupling);
  const double t = 2.0 / std::sqrt(a);
  const auto rho = rho_two_baths(make_bell_state(1), factor_separate(b, t), 1.0);
  EXPECT_LT(concurrence(rho), 0.5);
}

}  // namespace
}  // namespace spinbath
