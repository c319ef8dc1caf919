#include <gtest/gtest.h>

#include <random>

#include "spinbath/spinbath.hpp"
#include "test_util.hpp"

namespace spinbath {
namespace {

TEST(BellState, AmplitudesOfE1AndE4) {
  const auto e1 = make_bell_state(1);
  EXPECT_EQ(e1[0], cplx(kInvSqrt2));
  EXPECT_EQ(e1[1], cplx(0.0));
  EXPECT_EQ(e1[2], cplx(0.0));
  EXPECT_EQ(e1[3], cplx(kInvSqrt2));

  const auto e4 = make_bell_state(4);
  EXPECT_EQ(e4[0], cplx(0.0));
  EXPECT_EQ(e4[1], cplx(kInvSqrt2));
  EXPECT_EQ(e4[2], cplx(-kInvSqrt2));
  EXPECT_EQ(e4[3], cplx(0.0));
}

TEST(BellState, Orthonormal) {
  for (int i = 1; i <= 4; ++i) {
    for (int j = 1; j <= 4; ++j) {
      const cplx ip = inner(make_bell_state(i), make_bell_state(j));
      EXPECT_NEAR(std::abs(ip - cplx(i == j ? 1.0 : 0.0)), 0.0, 1e-15) << i << "," << j;
    }
  }
  EXPECT_EQ(inner(make_bell_state(1), make_bell_state(3)), cplx(0.0));
}

TEST(BellState, IndexOutOfRange) {
  EXPECT_THROW(make_bell_state(0), std::invalid_argument);
  EXPECT_THROW(make_bell_state(5), std::invalid_argument);
}

TEST(BathSpin, FromAnglesPoles) {
  const auto north = BathSpin::from_angles(0.0, 0.0, 0.5);
  EXPECT_EQ(north.alpha(), cplx(1.0));
  EXPECT_EQ(north.beta(), cplx(0.0));

  const auto south = BathSpin::from_angles(kPi, 0.0, 0.5);
  EXPECT_NEAR(std::abs(south.alpha()), 0.0, 1e-16);
  EXPECT_NEAR(std::abs(south.beta() - cplx(1.0)), 0.0, 1e-16);

  const auto eq = BathSpin::from_angles(kPi / 2.0, 0.0, 0.5);
  EXPECT_NEAR(std::abs(eq.alpha() - cplx(kInvSqrt2)), 0.0, 2e-16);
  EXPECT_NEAR(std::abs(eq.beta() - cplx(kInvSqrt2)), 0.0, 2e-16);
  EXPECT_EQ(eq.omega(), 0.5);
}

TEST(BathSpin, FromAnglesIsNormalized) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const auto s = BathSpin::from_angles(kPi * u(rng), 2.0 * kPi * u(rng), 1.0);
    EXPECT_NEAR(s.up_weight() + s.down_weight(), 1.0, 1e-15);
  }
}

TEST(BathSpin, RejectsOutOfRangeAngles) {
  EXPECT_THROW(BathSpin::from_angles(-0.1, 0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(BathSpin::from_angles(kPi + 0.1, 0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(BathSpin::from_angles(1.0, -0.1, 1.0), std::invalid_argument);
  EXPECT_THROW(BathSpin::from_angles(1.0, 7.0, 1.0), std::invalid_argument);
}

TEST(BathSpin, RejectsNonNormalizedAmplitudes) {
  EXPECT_THROW(BathSpin(cplx(1.0), cplx(0.1), 1.0), std::invalid_argument);
  // Within 1e-9 the amplitudes are accepted and renormalized.
  const BathSpin s(cplx(1.0 + 1e-10), cplx(0.0), 1.0);
  EXPECT_NEAR(s.up_weight(), 1.0, 1e-15);
}

TEST(PairState, RejectsNonNormalized) {
  EXPECT_THROW(PairState({cplx(1.0), cplx(1.0), cplx(0.0), cplx(0.0)}), std::invalid_argument);
  EXPECT_NO_THROW(PairState({cplx(1.0), cplx(0.0), cplx(0.0), cplx(0.0)}));
}

TEST(Bath, EmptyRequiresTrivialFactory) {
  EXPECT_THROW(Bath({}, BathLabel::Bath1), std::invalid_argument);
  const auto b = Bath::trivial(BathLabel::Bath2);
  EXPECT_TRUE(b.empty());
  EXPECT_EQ(b.label(), BathLabel::Bath2);
}

TEST(Bath, CommonBathRequiresSecondCoupling) {
  const BathSpin plain(cplx(1.0), cplx(0.0), 1.0);
  const BathSpin dual(cplx(1.0), cplx(0.0), 1.0, 2.0);
  EXPECT_THROW(Bath({plain}, BathLabel::Common), std::invalid_argument);
  EXPECT_THROW(Bath({dual}, BathLabel::Bath1), std::invalid_argument);
  EXPECT_NO_THROW(Bath({dual}, BathLabel::Common));
  EXPECT_NO_THROW(Bath({plain}, BathLabel::Bath1));
}

TEST(DensityMatrix4, ValidateCatchesBrokenMatrices) {
  EXPECT_NO_THROW(DensityMatrix4(make_bell_state(2).projector()).validate());
  EXPECT_NO_THROW(DensityMatrix4(Matrix4::Identity() / 4.0).validate());

  Matrix4 not_herm = Matrix4::Identity() / 4.0;
  not_herm(0, 1) = 0.1;
  EXPECT_THROW(DensityMatrix4(not_herm).validate(), std::invalid_argument);

  EXPECT_THROW(DensityMatrix4(Matrix4::Identity() / 2.0).validate(), std::invalid_argument);

  Matrix4 indefinite = Matrix4::Zero();
  indefinite(0, 0) = 0.5;
  indefinite(3, 3) = 0.5;
  indefinite(0, 3) = 0.9;
  indefinite(3, 0) = 0.9;
  EXPECT_THROW(DensityMatrix4(indefinite).validate(), std::invalid_argument);
}

}  // namespace
}  // namespace spinbath
