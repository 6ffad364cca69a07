#include <irsim/network.hpp>
#include <irsim/stats.hpp>

#include <gtest/gtest.h>

#include "oracle_values.hpp"

#include <cmath>

using namespace irsim;

namespace {

Config small_config(int grid = 6, int inst = 4, int draws = 40) {
  Config c;
  c.grid.points_per_axis = grid;
  c.budget.instances = inst;
  c.budget.draws_per_instance = draws;
  return c;
}

}  // namespace

TEST(Radio, NoiseFloor) {
  EXPECT_NEAR(to_db(noise_power_w(-174.0, 180e3)) + 30.0, oracle::kNoiseDbm, 1e-10);
  const Scenario sc = Scenario::build(Config{});
  EXPECT_NEAR(to_db(sc.noise_w) + 30.0, oracle::kNoiseDbm + 9.0, 1e-10);
}

TEST(Radio, ThroughputReferenceValues) {
  EXPECT_NEAR(ergodic_throughput({1.0, 1.0, 1.0}), 1.0, 1e-15);
  EXPECT_NEAR(ergodic_throughput({3.0}), 2.0, 1e-15);
  EXPECT_THROW(ergodic_throughput({}), std::invalid_argument);
}

TEST(Radio, SinrLimits) {
  EXPECT_EQ(sinr(2.0, 0.0, 0.5), snr(2.0, 0.5));
  EXPECT_NEAR(sinr(2.0, 1e6, 1e-6), 2.0 / 1e6, 1e-15);
}

TEST(Layout, SevenSitesTwentyOneCells) {
  const CellLayout l = make_layout(500.0, 1, 25.0);
  ASSERT_EQ(l.sites.size(), 7u);
  ASSERT_EQ(l.cells.size(), 21u);
  EXPECT_EQ(l.sites[0], (Vec3{0.0, 0.0, 25.0}));
  for (std::size_t s = 1; s < 7; ++s) EXPECT_NEAR(l.sites[s].norm_xy(), 500.0, 1e-9);
  for (std::size_t c = 0; c < 21; ++c) {
    EXPECT_EQ(l.cells[c].site, static_cast<int>(c / 3));
    EXPECT_NEAR(l.cells[c].azimuth, 2.0 * kPi * (c % 3) / 3.0, 1e-15);
  }
  EXPECT_EQ(l.serving, 0);
}

TEST(Layout, SecondRingSize) { EXPECT_EQ(make_layout(500.0, 2, 25.0).cells.size(), 57u); }

TEST(Grid, PointsLieInSectorHexagon) {
  GridConfig g;
  const auto pts = sector_grid(g, 1.5);
  EXPECT_GT(pts.size(), 1000u);
  for (const Vec3& p : pts) {
    EXPECT_TRUE(in_sector_hexagon(p.x, p.y, g.hex_radius_m));
    EXPECT_GE(std::hypot(p.x, p.y), g.min_distance_m);
    EXPECT_EQ(p.z, 1.5);
  }
  EXPECT_FALSE(in_sector_hexagon(-1.0, 0.0, 100.0));
  EXPECT_FALSE(in_sector_hexagon(100.0, 90.0, 100.0));
  EXPECT_TRUE(in_sector_hexagon(200.0, 0.0, 100.0));
}

TEST(Grid, RandomPointsFollowTheCell) {
  const CellLayout l = make_layout(500.0, 1, 25.0);
  GridConfig g;
  Rng rng(3, {1});
  for (int c : {0, 4, 11, 20}) {
    const Sector& s = l.cells[c];
    for (int i = 0; i < 200; ++i) {
      const Vec3 p = random_point_in_cell(rng, s, g, 120.0);
      const Vec3 d = p - s.position;
      const double x = std::cos(s.azimuth) * d.x + std::sin(s.azimuth) * d.y;
      const double y = -std::sin(s.azimuth) * d.x + std::cos(s.azimuth) * d.y;
      EXPECT_TRUE(in_sector_hexagon(x, y, g.hex_radius_m));
      EXPECT_EQ(p.z, 120.0);
    }
  }
}

TEST(Summary, EqualRatesAreFair) {
  std::vector<PointResult> pts(10, PointResult{{}, 3.0, 1e-9, 0.0});
  const SummaryStats s = summarize(pts, false);
  EXPECT_NEAR(s.jain, 1.0, 1e-15);
  EXPECT_NEAR(s.r_bar, 3.0, 1e-15);
  EXPECT_NEAR(s.s_bar_bar_db, -90.0, 1e-12);
  EXPECT_FALSE(s.i_bar_bar_db.has_value());
  EXPECT_THROW(summarize({}, false), std::invalid_argument);
}

TEST(Schemes, AllKnownSchemesBuild) {
  const Scenario sc = Scenario::build(Config{});
  for (const auto& n : known_schemes()) {
    const BsScheme s = make_scheme(sc, n);
    EXPECT_GT(s.spectrum_avg, 0.0) << n;
    EXPECT_EQ(s.n_elements, 100);
  }
  EXPECT_THROW(make_scheme(sc, "omni"), std::invalid_argument);
  EXPECT_EQ(make_scheme(sc, "irs_cos").weights.w.size(), 100u);
}

TEST(Schemes, IdenticalGeometryGivesIdenticalRates) {
  Config c = small_config();
  const Scenario sc = Scenario::build(c);
  const BsScheme s = make_scheme(sc, "irs_cos");
  const std::vector<Vec3> pts(5, Vec3{100.0, 0.0, 120.0});
  CoverageOptions o;
  const CoverageGrid g = run_coverage_points(sc, s, pts, o);
  // Different substreams per point, so only statistical equality: rates agree to MC noise.
  EXPECT_GT(g.summary.jain, 0.999);
}

TEST(Coverage, WorkerCountDoesNotChangeResults) {
  const Scenario sc = Scenario::build(small_config(5, 2, 20));
  for (const char* name : {"irs_cos", "3d_bf"}) {
    const BsScheme s = make_scheme(sc, name);
    CoverageOptions a, b;
    a.multi_cell = b.multi_cell = true;
    a.workers = 1;
    b.workers = 4;
    const CoverageGrid ga = run_coverage(sc, s, 120.0, a), gb = run_coverage(sc, s, 120.0, b);
    ASSERT_EQ(ga.points.size(), gb.points.size());
    for (std::size_t i = 0; i < ga.points.size(); ++i) {
      EXPECT_EQ(ga.points[i].rate, gb.points[i].rate);
      EXPECT_EQ(ga.points[i].interference_w, gb.points[i].interference_w);
    }
  }
}

TEST(Coverage, InterferenceNeverHelps) {
  const Scenario sc = Scenario::build(small_config(5, 3, 30));
  for (const auto& name : known_schemes()) {
    const BsScheme s = make_scheme(sc, name);
    CoverageOptions single, multi;
    multi.multi_cell = true;
    const CoverageGrid a = run_coverage(sc, s, 1.5, single), b = run_coverage(sc, s, 1.5, multi);
    for (std::size_t i = 0; i < a.points.size(); ++i) EXPECT_LE(b.points[i].rate, a.points[i].rate) << name;
  }
}

TEST(Coverage, ZeroedInterferenceReproducesSingleCell) {
  const Scenario sc = Scenario::build(small_config(5, 3, 30));
  for (const auto& name : known_schemes()) {
    const BsScheme s = make_scheme(sc, name);
    CoverageOptions single, zeroed;
    zeroed.multi_cell = true;
    zeroed.zero_interference = true;
    const CoverageGrid a = run_coverage(sc, s, 120.0, single), b = run_coverage(sc, s, 120.0, zeroed);
    for (std::size_t i = 0; i < a.points.size(); ++i)
      EXPECT_NEAR(b.points[i].rate / a.points[i].rate, 1.0, 0.02) << name;
  }
}

TEST(Coverage, PerPointSandwich) {
  // Per-point MC signal and interference versus the per-point analytic bounds.
  Config c = small_config(8, 30, 100);
  const Scenario sc = Scenario::build(c);
  const BsScheme s = make_scheme(sc, "irs_cos");
  for (double h : {1.5, 120.0}) {
    const auto pts = sector_grid(c.grid, h);
    CoverageOptions o;
    o.multi_cell = true;
    const CoverageGrid g = run_coverage_points(sc, s, pts, o);
    int inside_s = 0, inside_i = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      PowerBounds b;
      for (int cell = 0; cell < static_cast<int>(sc.layout.cells.size()); ++cell) {
        const LinkGeometry lg = link_geometry(sc, s, sc.layout.cells[cell], pts[i]);
        for (int los = 0; los < 2; ++los) {
          const double p = los ? lg.p_los : 1.0 - lg.p_los;
          const double b0 = link_b0(sc.p_t_w, s.g_tx, s.g_i, lg.state[los].g, 0.9);
          if (cell == 0) {
            const auto [lo, hi] = mean_signal_bounds(b0, s.weights.w_min, s.weights.w_max, 100,
                                                     rician_sum_moments(lg.stats[los]));
            b.s_lb += p * lo;
            b.s_ub += p * hi;
          } else {
            const auto [lo, hi] = mean_interference_bounds(b0, lg.stats[los].rho, s.weights.w_min, s.weights.w_max, 100);
            b.i_lb += p * lo;
            b.i_ub += p * hi;
          }
        }
      }
      inside_s += g.points[i].signal_w >= b.s_lb && g.points[i].signal_w <= b.s_ub;
      inside_i += g.points[i].interference_w >= b.i_lb && g.points[i].interference_w <= b.i_ub;
    }
    EXPECT_GE(inside_s, 0.95 * pts.size()) << "h=" << h;
    EXPECT_GE(inside_i, 0.95 * pts.size()) << "h=" << h;
  }
}

TEST(Coverage, AerialIrsInterferenceFarBelowMrt) {
  const Scenario sc = Scenario::build(small_config(5, 4, 40));
  CoverageOptions o;
  o.multi_cell = true;
  const CoverageGrid irs = run_coverage(sc, make_scheme(sc, "irs_cos"), 120.0, o);
  const CoverageGrid mrt = run_coverage(sc, make_scheme(sc, "3d_bf"), 120.0, o);
  EXPECT_GE(*mrt.summary.i_bar_bar_db - *irs.summary.i_bar_bar_db, 15.0);
}

TEST(LinkCdf, SeriesStructure) {
  Config c;
  c.link_level.instances = 2;
  c.link_level.draws_per_instance = 100;
  const LinkCdfResult r = run_link_cdf(Scenario::build(c), 2);
  ASSERT_EQ(r.series.size(), 6u);
  for (const auto& s : r.series)
    for (std::size_t i = 1; i < s.cdf.size(); ++i) EXPECT_GE(s.cdf[i], s.cdf[i - 1]);
  EXPECT_EQ(r.series[0].label, "oracle_np5_tg15");
  EXPECT_EQ(r.series[5].label, "analytic_tg75");
  EXPECT_GT(r.summary[4].stats.rho, r.summary[5].stats.rho);
}
