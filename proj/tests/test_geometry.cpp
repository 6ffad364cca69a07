#include <irsim/geometry.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace irsim;

namespace {

IrsPanel panel10(double d = 0.075) {
  IrsPanel p;
  p.m_y = 10;
  p.m_z = 10;
  p.d_y = d;
  p.d_z = d;
  p.center = {0.0, 0.0, 25.0};
  return p;
}

}  // namespace

TEST(Panel, ElementOffsetFirstQuadrant) {
  const IrsPanel p = panel10();
  const Vec3 e = element_position(p, p.flat_index(1, 1));
  EXPECT_NEAR(e.x, 0.0, 1e-15);
  EXPECT_NEAR(e.y, 0.0375, 1e-15);
  EXPECT_NEAR(e.z, 25.0375, 1e-12);
}

TEST(Panel, FirstIndexInvertsFlattening) {
  const IrsPanel p = panel10();
  const auto [my, mz] = p.index_2d(1);
  EXPECT_EQ(my, 1 - p.m_y / 2);
  EXPECT_EQ(mz, 1 - p.m_z / 2);
}

TEST(Panel, FlatteningRoundTripsForAllElements) {
  IrsPanel p = panel10();
  p.m_y = 6;
  p.m_z = 8;
  for (int n = 1; n <= p.size(); ++n) {
    const auto [my, mz] = p.index_2d(n);
    EXPECT_EQ(p.flat_index(my, mz), n);
  }
}

TEST(Panel, IndexOutOfRangeThrows) {
  const IrsPanel p = panel10();
  EXPECT_THROW(p.index_2d(0), std::out_of_range);
  EXPECT_THROW(p.index_2d(101), std::out_of_range);
}

TEST(Panel, TwoByTwoIsSymmetricAboutCenter) {
  IrsPanel p = panel10(0.1);
  p.m_y = p.m_z = 2;
  Vec3 sum;
  for (int n = 1; n <= 4; ++n) {
    const Vec3 e = element_position(p, n);
    sum = sum + e;
    EXPECT_NEAR(std::abs(e.y), 0.05, 1e-15);
    EXPECT_NEAR(std::abs(e.z - 25.0), 0.05, 1e-12);
  }
  EXPECT_NEAR(sum.y, 0.0, 1e-15);
  EXPECT_NEAR(sum.z / 4.0, 25.0, 1e-12);
}

TEST(Panel, RotatedPanelKeepsElementsInItsPlane) {
  IrsPanel p = panel10();
  p.azimuth = 2.0 * kPi / 3.0;
  p.center = {100.0, -50.0, 25.0};
  const Vec3 normal = p.frame().rot.apply({1.0, 0.0, 0.0});
  for (int n = 1; n <= p.size(); ++n) EXPECT_NEAR((element_position(p, n) - p.center).dot(normal), 0.0, 1e-12);
}

TEST(Frames, RotationIsOrthonormal) {
  std::mt19937_64 g(3);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (int t = 0; t < 50; ++t) {
    const Rotation r = Rotation::zyz(u(g), u(g), u(g));
    const Vec3 v{0.3, -1.2, 2.5};
    EXPECT_NEAR(r.apply(v).norm(), v.norm(), 1e-12);
    const Vec3 back = r.apply_inverse(r.apply(v));
    EXPECT_NEAR((back - v).norm(), 0.0, 1e-12);
  }
}

TEST(Frames, LocalGlobalRoundTrip) {
  const Frame f = Frame::facing({1.0, 2.0, 3.0}, 0.7, 0.2);
  const Vec3 p{-4.0, 5.0, 6.0};
  EXPECT_NEAR((f.to_global(f.to_local(p)) - p).norm(), 0.0, 1e-12);
}

TEST(Frames, DowntiltPointsBoresightBelowHorizon) {
  const Frame f = Frame::facing({}, 0.0, deg2rad(10.0));
  const Vec3 b = f.rot.apply({1.0, 0.0, 0.0});
  EXPECT_NEAR(b.z, -std::sin(deg2rad(10.0)), 1e-15);
}

TEST(Angles, BoresightTargetHasZeroTheta) {
  const IrsPanel p = panel10();
  const LocalAngles a = local_angles(p.frame(), {40.0, 0.0, 25.0});
  EXPECT_NEAR(a.theta, 0.0, 1e-12);
}

TEST(Angles, ThetaEqualsArccosXOverDistance) {
  const IrsPanel p = panel10();
  const Vec3 ue{60.0, 35.0, 1.5};
  const Vec3 d = ue - p.center;
  const LocalAngles a = local_angles(p.frame(), ue);
  EXPECT_NEAR(a.theta, std::acos(d.x / d.norm()), 1e-12);
  EXPECT_NEAR(a.phi, std::atan2(d.z, d.y), 1e-12);
}

TEST(Angles, TargetBehindPanelExceedsHalfPi) {
  const IrsPanel p = panel10();
  EXPECT_GT(local_angles(p.frame(), {-10.0, 3.0, 20.0}).theta, 0.5 * kPi);
}

TEST(Angles, DirectionRoundTrip) {
  for (double th : {0.1, 0.8, 1.5, 2.9})
    for (double ph : {-3.0, -1.0, 0.0, 2.0}) {
      const LocalAngles a = to_angles(direction({th, ph}));
      EXPECT_NEAR(a.theta, th, 1e-12);
      EXPECT_NEAR(a.phi, ph, 1e-12);
    }
}

TEST(Angles, BoresightOverloadMatchesFrame) {
  const Vec3 o{5.0, 5.0, 25.0};
  const LocalAngles a = local_angles(o, {0.0, 1.0, 0.0}, {5.0, 30.0, 25.0});
  EXPECT_NEAR(a.theta, 0.0, 1e-12);
}

TEST(Angles, ZeroDirectionThrows) { EXPECT_THROW(to_angles({}), std::invalid_argument); }
