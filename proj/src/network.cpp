#include <irsim/network.hpp>
#include <irsim/parallel.hpp>
#include <irsim/stats.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace irsim {

namespace {

constexpr std::uint64_t kLinkCdfTag = 0x6c696e6b636466ULL;

std::uint64_t name_tag(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t run_tag(const BsScheme& scheme, double height) {
  return splitmix64(name_tag(scheme.name) ^ static_cast<std::uint64_t>(std::llround(height * 1000.0)));
}

}  // namespace

CellLayout make_layout(double isd, int rings, double height) {
  struct Site {
    int ring;
    double angle;
    Vec3 pos;
  };
  std::vector<Site> sites;
  const double c30 = std::cos(kPi / 6.0), s30 = std::sin(kPi / 6.0);
  for (int q = -rings; q <= rings; ++q)
    for (int r = -rings; r <= rings; ++r) {
      const int ring = std::max({std::abs(q), std::abs(r), std::abs(q + r)});
      if (ring > rings) continue;
      const double x = isd * q * c30, y = isd * (q * s30 + r);
      double a = std::atan2(y, x);
      if (a < 0) a += 2.0 * kPi;
      sites.push_back({ring, ring == 0 ? 0.0 : a, {x, y, height}});
    }
  std::sort(sites.begin(), sites.end(), [](const Site& a, const Site& b) {
    return a.ring != b.ring ? a.ring < b.ring : a.angle < b.angle;
  });
  CellLayout l;
  l.isd = isd;
  for (std::size_t i = 0; i < sites.size(); ++i) {
    l.sites.push_back(sites[i].pos);
    for (int s = 0; s < 3; ++s) l.cells.push_back({static_cast<int>(i), sites[i].pos, 2.0 * kPi * s / 3.0});
  }
  l.serving = 0;
  return l;
}

bool in_sector_hexagon(double x, double y, double radius) {
  const double px = std::abs(x - radius), py = std::abs(y);
  const double s3 = std::sqrt(3.0);
  const double tol = 1e-9 * radius;
  return py <= 0.5 * s3 * radius + tol && s3 * px + py <= s3 * radius + tol;
}

std::vector<Vec3> sector_grid(const GridConfig& g, double height) {
  const int n = g.points_per_axis;
  const double r = g.hex_radius_m, hy = 0.5 * std::sqrt(3.0) * r;
  std::vector<Vec3> pts;
  for (int iy = 0; iy < n; ++iy) {
    const double y = -hy + 2.0 * hy * iy / (n - 1);
    for (int ix = 0; ix < n; ++ix) {
      const double x = 2.0 * r * ix / (n - 1);
      if (!in_sector_hexagon(x, y, r)) continue;
      if (std::hypot(x, y) < g.min_distance_m) continue;
      pts.push_back({x, y, height});
    }
  }
  return pts;
}

Vec3 random_point_in_cell(Rng& rng, const Sector& cell, const GridConfig& g, double height) {
  const double r = g.hex_radius_m, hy = 0.5 * std::sqrt(3.0) * r;
  for (;;) {
    const double x = rng.uniform(0.0, 2.0 * r), y = rng.uniform(-hy, hy);
    if (!in_sector_hexagon(x, y, r) || std::hypot(x, y) < g.min_distance_m) continue;
    const double c = std::cos(cell.azimuth), s = std::sin(cell.azimuth);
    return {cell.position.x + c * x - s * y, cell.position.y + s * x + c * y, height};
  }
}

double ergodic_throughput(const std::vector<double>& gamma) {
  if (gamma.empty()) throw std::invalid_argument("ergodic throughput of an empty sample set");
  double s = 0.0;
  for (double g : gamma) s += std::log2(1.0 + g);
  return s / static_cast<double>(gamma.size());
}

SpectrumParams Scenario::spectrum_params(double theta_g) const {
  const auto& sp = cfg.channel.spectrum;
  return {theta_g,
          deg2rad(sp.theta_m_deg),
          deg2rad(sp.phi_g_deg),
          sp.kappa,
          deg2rad(sp.support_theta_deg[0]),
          deg2rad(sp.support_theta_deg[1]),
          deg2rad(sp.support_phi_deg[0]),
          deg2rad(sp.support_phi_deg[1]),
          parse_support_frame(sp.support_frame)};
}

Scenario Scenario::build(const Config& cfg) {
  validate_config(cfg);
  Scenario sc;
  sc.cfg = cfg;
  const auto& g = cfg.geometry;
  sc.lambda = wavelength(g.carrier_hz);
  sc.panel.m_y = g.panel.m_y;
  sc.panel.m_z = g.panel.m_z;
  sc.panel.d_y = g.panel.spacing_y_m > 0 ? g.panel.spacing_y_m : 0.5 * sc.lambda;
  sc.panel.d_z = g.panel.spacing_z_m > 0 ? g.panel.spacing_z_m : 0.5 * sc.lambda;
  sc.panel.center = {0.0, 0.0, g.irs_height_m};
  sc.panel.azimuth = 0.0;
  sc.tx_pattern = CosinePattern::from_hpbw(deg2rad(g.tx_hpbw_deg[0]), deg2rad(g.tx_hpbw_deg[1]));
  sc.pathloss = PathlossModel(g.carrier_hz, g.irs_height_m, cfg.channel.pathloss);
  sc.spectrum = AngularSpectrum(sc.spectrum_params(deg2rad(cfg.channel.spectrum.theta_g_deg)));
  sc.kmodel = cfg.channel.rician_k;
  sc.layout = make_layout(cfg.layout.isd_m, cfg.layout.rings, g.irs_height_m);
  sc.p_t_w = std::pow(10.0, 0.1 * (cfg.radio.tx_power_dbm - 30.0));
  sc.noise_w = noise_power_w(cfg.radio.noise_psd_dbm_per_hz, cfg.radio.bandwidth_hz) *
               std::pow(10.0, 0.1 * cfg.radio.noise_figure_db);
  return sc;
}

BsScheme make_scheme(const Scenario& sc, const std::string& name) {
  const auto& b = sc.cfg.benchmark;
  BsScheme s;
  s.name = name;
  s.n_elements = sc.panel.size();
  auto element = [&] {
    return ThreeGppElement::make(b.element_gain_dbi, b.element_hpbw_deg, b.element_max_attenuation_db,
                                 b.element_side_lobe_db);
  };
  if (name == "fixed") {
    s.label = "Fixed pattern";
    s.kind = SchemeKind::fixed;
    s.pattern = UpaBeam{element(), sc.panel.m_y, sc.panel.m_z, sc.panel.d_y / sc.lambda, deg2rad(b.fixed_downtilt_deg)};
  } else if (name == "3d_bf") {
    s.label = "3D BF";
    s.kind = SchemeKind::mrt;
    s.pattern = element();
  } else if (name == "irs_cos" || name == "irs_cos3") {
    s.label = name == "irs_cos" ? "IRScos" : "IRScos3";
    s.kind = SchemeKind::irs;
    const IrsErp erp{name == "irs_cos" ? sc.cfg.irs.cos_gain : sc.cfg.irs.cos3_gain};
    s.pattern = erp;
    s.g_i = erp.g_i;
    s.g_tx = sc.tx_pattern.g_max;
    s.weights = element_weights(tx_frame(sc.panel, sc.cfg.geometry.tx_distance_m), sc.tx_pattern, sc.panel, erp,
                                sc.pathloss.beta0(), parse_pattern_domain(sc.cfg.radio.pattern_domain));
  } else {
    throw std::invalid_argument("unknown scheme '" + name + "'");
  }
  s.spectrum_avg = sc.spectrum.average(s.pattern);
  return s;
}

LinkGeometry link_geometry(const Scenario& sc, const BsScheme& scheme, const Sector& cell, Vec3 ue) {
  LinkGeometry lg;
  const Frame f = Frame::facing(cell.position, cell.azimuth);
  const double los_gain = pattern_gain(scheme.pattern, f.to_local(ue));
  const Vec3 d = ue - cell.position;
  const double d3 = d.norm();
  lg.p_los = sc.pathloss.los_probability(d.norm_xy(), ue.z);
  lg.state[1] = sc.pathloss.evaluate(true, ue, cell.position);
  lg.state[0] = sc.pathloss.evaluate(false, ue, cell.position);
  const double k = rician_k(d3, ue.z - cell.position.z, sc.regime(ue.z), sc.kmodel);
  lg.stats[1] = erp_modified_stats(k, los_gain, scheme.spectrum_avg);
  lg.stats[0] = erp_modified_stats(0.0, los_gain, scheme.spectrum_avg);
  return lg;
}

namespace {

void draw_signal(const Scenario& sc, const BsScheme& s, Rng& rng, const FadingStats& st, double g,
                 std::vector<double>& out) {
  const int n = s.n_elements;
  switch (s.kind) {
    case SchemeKind::irs: {
      const double b0 = link_b0(sc.p_t_w, s.g_tx, s.g_i, g, sc.cfg.radio.reflection_amplitude);
      for (double& o : out) {
        double sum = 0.0;
        for (int k = 0; k < n; ++k) sum += s.weights.w[k] * sample_fading_analytic(rng, st);
        o = b0 * sum * sum;
      }
      break;
    }
    case SchemeKind::fixed:
      for (double& o : out) {
        const double xi = sample_fading_analytic(rng, st);
        o = sc.p_t_w * g * xi * xi;
      }
      break;
    case SchemeKind::mrt:
      for (double& o : out) {
        double e = 0.0;
        for (int k = 0; k < n; ++k) e += std::norm(sample_fading_complex(rng, st, 0.0));
        o = sc.p_t_w * g * e;
      }
      break;
  }
}

void add_interference(const Scenario& sc, const BsScheme& s, Rng& rng, const Sector& cell, const FadingStats& st,
                      double g, Vec3 victim, std::vector<double>& acc) {
  const int n = s.n_elements;
  switch (s.kind) {
    case SchemeKind::irs: {
      const double b0 = link_b0(sc.p_t_w, s.g_tx, s.g_i, g, sc.cfg.radio.reflection_amplitude);
      // |u + sigma z| e^{j eps} with uniform eps has the law of u e^{j eps} + sigma z (z circular).
      for (double& a : acc) {
        std::complex<double> sum = 0.0;
        for (int k = 0; k < n; ++k) {
          const std::complex<double> e = st.upsilon * rng.unit_phasor() + rng.cn(2.0 * st.sigma * st.sigma);
          sum += s.weights.w[k] * e;
        }
        a += b0 * std::norm(sum);
      }
      break;
    }
    case SchemeKind::fixed:
      for (double& a : acc) {
        const double xi = sample_fading_analytic(rng, st);
        a += sc.p_t_w * g * xi * xi;
      }
      break;
    case SchemeKind::mrt: {
      // The interfering cell beams at its own target; the victim sees that beam through its own channel.
      const Vec3 target = random_point_in_cell(rng, cell, sc.cfg.grid, victim.z);
      const LinkGeometry tg = link_geometry(sc, s, cell, target);
      const bool t_los = rng.uniform() < tg.p_los;
      const FadingStats& st_t = tg.stats[t_los ? 1 : 0];
      std::vector<std::complex<double>> ht(n);
      for (double& a : acc) {
        const double phi_t = rng.phase(), phi_v = rng.phase();
        double norm_t = 0.0;
        for (int k = 0; k < n; ++k) {
          ht[k] = sample_fading_complex(rng, st_t, phi_t);
          norm_t += std::norm(ht[k]);
        }
        std::complex<double> inner = 0.0;
        for (int k = 0; k < n; ++k) inner += sample_fading_complex(rng, st, phi_v) * std::conj(ht[k]);
        a += sc.p_t_w * g * std::norm(inner) / norm_t;
      }
      break;
    }
  }
}

}  // namespace

PointResult simulate_point(const Scenario& sc, const BsScheme& scheme, Vec3 ue, std::size_t point_index,
                           const CoverageOptions& opt) {
  const auto& cells = sc.layout.cells;
  const int serving = sc.layout.serving;
  const int instances = sc.cfg.budget.instances;
  const int draws = sc.cfg.budget.draws_per_instance;
  const std::uint64_t seed = sc.cfg.seed;
  const std::uint64_t tag = run_tag(scheme, ue.z);

  const LinkGeometry serve = link_geometry(sc, scheme, cells[serving], ue);
  std::vector<int> others;
  std::vector<LinkGeometry> other_geo;
  if (opt.multi_cell)
    for (int c = 0; c < static_cast<int>(cells.size()); ++c)
      if (c != serving) {
        others.push_back(c);
        other_geo.push_back(link_geometry(sc, scheme, cells[c], ue));
      }

  std::vector<double> s(draws), itf(draws);
  double rate = 0.0, s_sum = 0.0, i_sum = 0.0;
  for (int inst = 0; inst < instances; ++inst) {
    Rng rs(seed, {tag, point_index, static_cast<std::uint64_t>(inst), 0});
    const int los = rs.uniform() < serve.p_los ? 1 : 0;
    draw_signal(sc, scheme, rs, serve.stats[los], serve.state[los].g, s);
    std::fill(itf.begin(), itf.end(), 0.0);
    for (std::size_t j = 0; j < others.size(); ++j) {
      const int c = others[j];
      Rng ri(seed, {tag, point_index, static_cast<std::uint64_t>(inst), static_cast<std::uint64_t>(c) + 1});
      const LinkGeometry& lg = other_geo[j];
      const int lv = ri.uniform() < lg.p_los ? 1 : 0;
      add_interference(sc, scheme, ri, cells[c], lg.stats[lv], lg.state[lv].g, ue, itf);
    }
    for (int d = 0; d < draws; ++d) {
      const double i_eff = opt.zero_interference ? 0.0 : itf[d];
      rate += std::log2(1.0 + sinr(s[d], i_eff, sc.noise_w));
      s_sum += s[d];
      i_sum += itf[d];
    }
  }
  const double total = static_cast<double>(instances) * draws;
  return {ue, rate / total, s_sum / total, i_sum / total};
}

SummaryStats summarize(const std::vector<PointResult>& pts, bool with_interference) {
  if (pts.empty()) throw std::invalid_argument("summary of an empty grid");
  SummaryStats st;
  std::vector<double> r;
  double s = 0.0, i = 0.0;
  for (const auto& p : pts) {
    r.push_back(p.rate);
    s += p.signal_w;
    i += p.interference_w;
  }
  st.r_bar = mean(r);
  st.jain = jain_index(r);
  st.s_bar_bar_db = to_db(s / pts.size());
  if (with_interference) st.i_bar_bar_db = to_db(i / pts.size());
  return st;
}

CoverageGrid run_coverage_points(const Scenario& sc, const BsScheme& scheme, const std::vector<Vec3>& points,
                                 const CoverageOptions& opt) {
  CoverageGrid g;
  g.scheme = scheme.name;
  g.label = scheme.label;
  g.height = points.empty() ? 0.0 : points.front().z;
  g.multi_cell = opt.multi_cell;
  g.points.resize(points.size());
  parallel_for(points.size(), opt.workers,
               [&](std::size_t i) { g.points[i] = simulate_point(sc, scheme, points[i], i, opt); });
  g.summary = summarize(g.points, opt.multi_cell);
  return g;
}

CoverageGrid run_coverage(const Scenario& sc, const BsScheme& scheme, double height, const CoverageOptions& opt) {
  CoverageGrid g = run_coverage_points(sc, scheme, sector_grid(sc.cfg.grid, height), opt);
  g.height = height;
  return g;
}

std::vector<BoundsEntry> compute_bounds(const Scenario& sc, const std::string& scheme_name,
                                        const std::vector<std::pair<std::string, double>>& heights, int workers) {
  const BsScheme scheme = make_scheme(sc, scheme_name);
  if (scheme.kind != SchemeKind::irs) throw std::invalid_argument("bounds apply to IRS schemes only");
  const auto& cells = sc.layout.cells;
  const int n = scheme.n_elements;
  const double w_min = scheme.weights.w_min, w_max = scheme.weights.w_max;
  const double amp = sc.cfg.radio.reflection_amplitude;

  std::vector<BoundsEntry> out;
  for (const auto& [regime, h] : heights) {
    const auto pts = sector_grid(sc.cfg.grid, h);
    std::vector<PowerBounds> pb(pts.size());
    parallel_for(pts.size(), workers, [&](std::size_t i) {
      PowerBounds b;
      for (int c = 0; c < static_cast<int>(cells.size()); ++c) {
        const LinkGeometry lg = link_geometry(sc, scheme, cells[c], pts[i]);
        for (int los = 0; los < 2; ++los) {
          const double p = los ? lg.p_los : 1.0 - lg.p_los;
          if (p <= 0.0) continue;
          const double b0 = link_b0(sc.p_t_w, scheme.g_tx, scheme.g_i, lg.state[los].g, amp);
          if (c == sc.layout.serving) {
            const auto [lo, hi] = mean_signal_bounds(b0, w_min, w_max, n, rician_sum_moments(lg.stats[los]));
            b.s_lb += p * lo;
            b.s_ub += p * hi;
          } else {
            const auto [lo, hi] = mean_interference_bounds(b0, lg.stats[los].rho, w_min, w_max, n);
            b.i_lb += p * lo;
            b.i_ub += p * hi;
          }
        }
      }
      pb[i] = b;
    });
    CoverageOptions opt;
    opt.multi_cell = true;
    opt.workers = workers;
    const CoverageGrid mc = run_coverage_points(sc, scheme, pts, opt);
    BoundsEntry sig{regime, "signal"}, itf{regime, "interference"};
    for (std::size_t i = 0; i < pts.size(); ++i) {
      sig.lb_w += pb[i].s_lb;
      sig.ub_w += pb[i].s_ub;
      sig.mc_w += mc.points[i].signal_w;
      itf.lb_w += pb[i].i_lb;
      itf.ub_w += pb[i].i_ub;
      itf.mc_w += mc.points[i].interference_w;
    }
    for (BoundsEntry* e : {&sig, &itf}) {
      e->lb_w /= pts.size();
      e->ub_w /= pts.size();
      e->mc_w /= pts.size();
      out.push_back(*e);
    }
  }
  return out;
}

LinkCdfResult run_link_cdf(const Scenario& sc, int workers) {
  const auto& ll = sc.cfg.link_level;
  const Vec3 ue{ll.ue_position_m[0], ll.ue_position_m[1], ll.ue_position_m[2]};
  const Frame f = sc.panel.frame();
  const Pattern erp = IrsErp{ll.erp_gain};
  const Vec3 local = f.to_local(ue);
  const LocalAngles los_dir = to_angles(local);
  const double d_u = local.norm();
  const double k = rician_k(d_u, ue.z - sc.panel.center.z, sc.regime(ue.z), sc.kmodel);
  const double los_gain = pattern_gain(erp, los_dir);
  const double los_phase = std::fmod(2.0 * kPi * d_u / sc.lambda, 2.0 * kPi);

  const std::size_t nt = ll.theta_g_deg.size(), np = ll.paths.size();
  const int inst = ll.instances, draws = ll.draws_per_instance;
  std::vector<AngularSpectrum> spectra;
  std::vector<FadingStats> stats;
  for (double tg : ll.theta_g_deg) {
    spectra.emplace_back(sc.spectrum_params(deg2rad(tg)));
    stats.push_back(erp_modified_stats(k, erp, los_dir, spectra.back()));
  }

  std::vector<std::vector<double>> chunks(nt * np * inst);
  parallel_for(chunks.size(), workers, [&](std::size_t u) {
    const std::size_t ti = u / (np * inst), pi = (u / inst) % np, ii = u % inst;
    Rng rng(sc.cfg.seed, {kLinkCdfTag, ti, static_cast<std::uint64_t>(ll.paths[pi]), ii});
    const PathSet paths = draw_paths(rng, spectra[ti], erp, ll.paths[pi]);
    std::vector<double>& out = chunks[u];
    out.resize(draws);
    for (int d = 0; d < draws; ++d) out[d] = std::norm(multipath_channel(rng, k, los_gain, los_phase, paths));
  });

  LinkCdfResult res;
  double xmax = 0.0;
  auto fmt_deg = [](double v) {
    char b[32];
    std::snprintf(b, sizeof b, "%g", v);
    return std::string(b);
  };
  for (std::size_t ti = 0; ti < nt; ++ti)
    for (std::size_t pi = 0; pi < np; ++pi) {
      std::vector<double> sample;
      for (int ii = 0; ii < inst; ++ii) {
        const auto& c = chunks[(ti * np + pi) * inst + ii];
        sample.insert(sample.end(), c.begin(), c.end());
      }
      LinkCdfSummary s;
      s.theta_g = deg2rad(ll.theta_g_deg[ti]);
      s.n_p = ll.paths[pi];
      s.stats = stats[ti];
      s.mean_power = mean(sample);
      s.ks = ks_distance(sample, [&](double x) { return rician_power_cdf(stats[ti], x); });
      std::vector<double> sorted = sample;
      std::sort(sorted.begin(), sorted.end());
      xmax = std::max(xmax, sorted.back());
      CdfSeries cs;
      cs.label = "oracle_np" + std::to_string(s.n_p) + "_tg" + fmt_deg(ll.theta_g_deg[ti]);
      cs.x = sorted;
      for (std::size_t i = 0; i < sorted.size(); ++i) cs.cdf.push_back(double(i + 1) / sorted.size());
      res.series.push_back(std::move(cs));
      res.summary.push_back(s);
      res.oracle_samples.push_back(std::move(sample));
    }
  const int m = 256;
  for (std::size_t ti = 0; ti < nt; ++ti) {
    CdfSeries cs;
    cs.label = "analytic_tg" + fmt_deg(ll.theta_g_deg[ti]);
    for (int i = 0; i < m; ++i) {
      const double x = xmax * i / (m - 1);
      cs.x.push_back(x);
      cs.cdf.push_back(rician_power_cdf(stats[ti], x));
    }
    res.series.push_back(std::move(cs));
    LinkCdfSummary s;
    s.theta_g = deg2rad(ll.theta_g_deg[ti]);
    s.stats = stats[ti];
    s.mean_power = stats[ti].rho;
    res.summary.push_back(s);
  }
  return res;
}

}  // namespace irsim
