// Acceptance gate: one PASS/FAIL line per criterion. Exit status is nonzero if any line fails.

#include "tancascade/attractor.hpp"
#include "tancascade/cascade.hpp"
#include "tancascade/cycles.hpp"
#include "tancascade/render.hpp"
#include "tancascade/renorm.hpp"
#include "tancascade/transversal.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace tancascade;

namespace {

const double kPi = pi_v<double>();
const double kHalfPi = half_pi_v<double>();

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
  bool ok = true;
  std::ostringstream notes;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void report(int id, const std::string& title, const std::function<void(Verdict&)>& body) {
  Verdict v;
  try {
    body(v);
  } catch (const std::exception& e) {
    v.ok = false;
    v.notes << " [exception: " << e.what() << "]";
  }
  if (!v.ok) ++failures;
  std::cout << (v.ok ? "PASS" : "FAIL") << " criterion " << id << ": " << title << v.notes.str() << std::endl;
}

std::string fmt(double x, int prec = 12) {
  std::ostringstream s;
  s.precision(prec);
  s << x;
  return s.str();
}

// Count and period of the cycles attracting the asymptotic values at t.
std::pair<int, int> count_and_period(double t) {
  auto c = find_attracting_cycle(t, 256, 20000);
  if (!c) return {0, 0};
  return {count_distinct_cycles(t, c->period_T, 20000), c->period_T};
}

}  // namespace

int main() {
  // 1. cascade anchors
  report(1, "cascade anchors and interleaving", [](Verdict& v) {
    auto t0 = Clock::now();
    auto table = cascade_table<double>(2);
    double dt = seconds_since(t0);
    v.require(table.betas.size() == 2, "two levels resolved");
    if (table.betas.size() < 2) return;
    double a1 = table.alphas[0].t, b1 = table.betas[0].t, a2 = table.alphas[1].t, b2 = table.betas[1].t;
    v.require(a1 > kHalfPi && a1 < 2.84, "alpha_1 in (pi/2, 2.84)");
    v.require(std::fabs(b1 - 2.94) <= 0.01, "beta_1 = 2.94 +- 0.01");
    v.require(b2 < 3.085, "beta_2 < 3.085");
    v.require(kHalfPi < a1 && a1 < b1 && b1 < a2 && a2 < b2 && b2 < kPi, "strict interleaving");
    v.require(dt < 1.0, "runtime < 1 s");
    v.notes << " alpha_1=" << fmt(a1) << " beta_1=" << fmt(b1) << " alpha_2=" << fmt(a2) << " beta_2=" << fmt(b2)
            << " time=" << fmt(dt, 3) << "s";
  });

  // 2. virtual-cycle residuals
  report(2, "virtual-cycle residuals for n = 1..5", [](Verdict& v) {
    auto t0 = Clock::now();
    auto table = cascade_table<double>(5);
    v.require(table.betas.size() == 5, "five levels resolved");
    double worst = 0;
    for (const auto& b : table.betas) {
      double r = std::fabs(phi(b.n, b.t));
      worst = std::max(worst, r);
      v.require(r < 1e-10, "residual at beta_" + std::to_string(b.n) + " < 1e-10");
    }
    double dt = seconds_since(t0);
    v.require(dt < 10.0, "runtime < 10 s");
    v.notes << " max_residual=" << fmt(worst, 3) << " time=" << fmt(dt, 3) << "s";
  });

  // 3. parabolic multipliers and doubling past alpha_n
  report(3, "parabolic multipliers and two cycles of unchanged period at alpha_n + 1e-3", [](Verdict& v) {
    auto table = cascade_table<double>(4);
    v.require(table.alphas.size() == 4, "four alphas resolved");
    for (const auto& a : table.alphas) {
      double target = a.n == 1 ? -1.0 : 1.0;
      double dev = std::fabs(a.multiplier - target);
      v.require(dev <= 1e-8, "multiplier at alpha_" + std::to_string(a.n));
      v.notes << " mult_dev[" << a.n << "]=" << fmt(dev, 2);
    }
    for (const auto& a : table.alphas) {
      if (a.n == 1) continue;  // period doubling with multiplier -1; the period does change there
      const int period_T = 1 << (a.n + 1);  // period_T of the parabolic cycle at alpha_n
      const double t = a.t + 1e-3;
      std::string tag = "alpha_" + std::to_string(a.n) + "+1e-3";
      try {
        auto cp = count_and_period(t);
        v.notes << " " << tag << ":(count=" << cp.first << ",period_T=" << cp.second << ")";
        v.require(cp.first == 2 && cp.second == period_T,
                  tag + " has two cycles of period_T " + std::to_string(period_T));
      } catch (const Error& e) {
        v.notes << " " << tag << ":" << e.what();
        v.require(false, tag + " has two cycles of period_T " + std::to_string(period_T));
      }
      // where the offset overshoots the next virtual parameter the clause cannot hold
      if (static_cast<size_t>(a.n) <= table.betas.size() && t > table.betas[a.n - 1].t)
        v.notes << " (note: alpha_" << a.n << "+1e-3=" << fmt(t, 8) << " exceeds beta_" << a.n << "="
                << fmt(table.betas[a.n - 1].t, 8)
                << (table.t_infinity_estimate && t > *table.t_infinity_estimate
                        ? " and t_infinity=" + fmt(*table.t_infinity_estimate, 8)
                        : std::string())
                << ")";
    }
  });

  // 4. transversality certificate
  report(4, "transversality certificate at beta_1..beta_4", [](Verdict& v) {
    auto t0 = Clock::now();
    auto table = cascade_table<double>(4);
    v.require(table.betas.size() == 4, "four betas resolved");
    for (const auto& b : table.betas) {
      auto c = certify(b.t, b.n);
      std::string n = std::to_string(b.n);
      double rel = std::fabs(c.phi.numeric - c.phi.via_identity) / std::fabs(c.phi.numeric);
      v.require(c.spectral_radius <= 1 + 1e-9L, "spectral radius at beta_" + n);
      v.require(c.min_distance_to_one > 1e-6L, "1 not an eigenvalue at beta_" + n);
      v.require(rel < 1e-5, "Phi' identity at beta_" + n);
      v.require(c.phi.positivity, "positivity at beta_" + n);
      v.require(c.eigen_root_mismatch < 1e-8L, "eigenvalues vs root reciprocals at beta_" + n);
      v.notes << " n=" << n << ":(rho=" << fmt(static_cast<double>(c.spectral_radius), 4)
              << ",min|1-l|=" << fmt(static_cast<double>(c.min_distance_to_one), 4) << ",rel=" << fmt(rel, 2)
              << ",mismatch=" << fmt(static_cast<double>(c.eigen_root_mismatch), 2) << ")";
    }
    double dt = seconds_since(t0);
    v.require(dt < 30.0, "runtime < 30 s");
    v.notes << " time=" << fmt(dt, 3) << "s";
  });

  // 5. schedule reproduction
  report(5, "period schedule at probe parameters", [](Verdict& v) {
    auto table = cascade_table<double>(5);
    v.require(table.betas.size() >= 4, "four levels resolved");
    if (table.betas.size() < 4) return;
    double a1 = table.alphas[0].t, b1 = table.betas[0].t;
    double p29 = (a1 < 2.9 && 2.9 < b1) ? 2.9 : (a1 + b1) / 2;
    struct Probe {
      double t;
      int count, period_T;
    };
    std::vector<Probe> probes{{0.5, 1, 1}, {1.2, 1, 4}, {2.0, 2, 2}, {p29, 2, 4}, {3.0, 1, 8}};
    for (int n = 2; n <= 3; ++n) {
      double bn = table.betas[n - 1].t, an1 = table.alphas[n].t, bn1 = table.betas[n].t;
      probes.push_back({(bn + an1) / 2, 1, 1 << (n + 2)});
      probes.push_back({(an1 + bn1) / 2, 2, 1 << (n + 2)});
    }
    for (const auto& p : probes) {
      auto cp = count_and_period(p.t);
      v.notes << " t=" << fmt(p.t, 10) << ":(" << cp.first << "," << cp.second << ")";
      v.require(cp.first == p.count && cp.second == p.period_T, "probe t=" + fmt(p.t, 10));
    }
  });

  // 6. map-kernel properties
  report(6, "map-kernel property suite", [](Verdict& v) {
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> T(0.05, kPi), X(-6.0, 6.0), T1(1.0 + 1e-6, kPi);
    int odd = 0, per = 0, rng_bad = 0, deriv = 0, deriv_checked = 0;
    for (int i = 0; i < 20000; ++i) {
      double t = T(rng), x = X(rng);
      if (pole_distance(x) < 1e-6) continue;
      MapParams<double> p(t);
      double fx = eval_f(p, x);
      if (std::fabs(fx + eval_f(p, -x)) > 1e-12 * (1 + std::fabs(fx))) ++odd;
      // x + pi carries one rounding of x; allow for it through the local slope
      double slack = 1e-12 * (1 + std::fabs(fx)) + 8e-16 * std::fabs(x + kPi) * std::fabs(eval_f_prime(p, x));
      if (std::fabs(eval_f(p, x + kPi) - fx) > slack) ++per;
      if (std::fabs(fx) > t) ++rng_bad;
      if (std::fabs(t * tan_reduced(x)) < 15 && pole_distance(x) > 1e-2) {
        double h = 1e-6 * std::min(1.0, pole_distance(x));
        double fd = (eval_f(p, x + h) - eval_f(p, x - h)) / (2 * h);
        double an = eval_f_prime(p, x);
        if (std::fabs(fd - an) > 1e-6 * (1 + std::fabs(an))) ++deriv;
        ++deriv_checked;
      }
    }
    int mono = 0;
    for (double t : {0.3, 0.9, 1.5, 2.2, 2.8, kPi}) {
      MapParams<double> p(t);
      for (int k = -2; k <= 2; ++k) {
        double prev = 2 * t;
        for (int j = 1; j < 1000; ++j) {
          double x = k * kPi - kHalfPi + kPi * j / 1000.0;
          double val = eval_f(p, x);
          // tanh rounds to +-1 in double well before the saturation cutoff; require strictness below |u| = 15
          bool flat_allowed = std::fabs(t * tan_reduced(x)) >= 15;
          if (val > prev || (!flat_allowed && val == prev)) ++mono;
          prev = val;
        }
      }
    }
    int schw = 0, schw_done = 0;
    while (schw_done < 1000) {
      double t = T1(rng), x = X(rng);
      try {
        if (!(schwarzian(MapParams<double>(t), x) < 0)) ++schw;
        ++schw_done;
      } catch (const Error&) {
        // saturated region: f' vanishes to working precision, no Schwarzian there
      }
    }
    v.require(odd == 0, "oddness");
    v.require(per == 0, "pi-periodicity");
    v.require(rng_bad == 0, "range within [-t, t]");
    v.require(mono == 0, "monotone on fundamental intervals");
    v.require(deriv == 0 && deriv_checked > 1000, "derivative vs finite differences");
    v.require(schw == 0, "negative Schwarzian for t > 1");

    // a_n + b_n = pi at 20 random admissible t per level; admissible means (beta_{n-1}, t_inf)
    auto table = cascade_table<long double>(7);
    v.require(table.t_infinity_estimate.has_value(), "t_infinity estimate");
    if (!table.t_infinity_estimate) return;
    const long double t_inf = *table.t_infinity_estimate;
    long double worst = 0;
    for (int n = 1; n <= 5; ++n) {
      long double lo = n == 1 ? half_pi_v<long double>() : table.betas[n - 2].t;
      std::uniform_real_distribution<long double> U(lo + 1e-9L, t_inf);
      for (int i = 0; i < 20; ++i) {
        long double t = U(rng);
        long double sum;
        if (n <= 4) {
          auto pp = prepoles(static_cast<double>(t), n);
          sum = static_cast<long double>(pp.a) + pp.b - pi_v<double>();
        } else {
          auto pp = prepoles(t, n);  // level 5 in extended precision
          sum = pp.a + pp.b - pi_v<long double>();
        }
        worst = std::max(worst, std::fabs(sum));
      }
    }
    v.require(worst < 1e-12L, "a_n + b_n = pi to 1e-12 for n <= 5");
    v.notes << " samples=" << deriv_checked << " max|a_n+b_n-pi|=" << fmt(static_cast<double>(worst), 3);
  });

  // 7. Cantor system
  report(7, "Cantor system at the extrapolated t_infinity, depth >= 4", [](Verdict& v) {
    auto table = cascade_table<long double>(7);
    v.require(table.t_infinity_estimate.has_value(), "t_infinity estimate");
    if (!table.t_infinity_estimate) return;
    const long double t_star = *table.t_infinity_estimate;
    int depth = 0;
    CantorSystem<long double> sys;
    for (int d = 4; d <= 6; ++d) {
      try {
        sys = build_levels(t_star, d);
        depth = d;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::OrderingViolated) throw;
        break;
      }
    }
    v.require(depth >= 4, "levels built to depth 4");
    if (depth < 4) return;
    auto rep = verify_system(sys);
    bool decomposition = true, disjoint = true, mapping = true, shrink = true;
    long double map_err = 0;
    for (const auto& l : rep.levels) {
      decomposition = decomposition && l.decomposition;
      disjoint = disjoint && l.disjoint;
      mapping = mapping && l.mapping;
      shrink = shrink && l.shrink;
      map_err = std::max(map_err, l.mapping_error);
    }
    v.require(decomposition, "decomposition identities");
    v.require(disjoint, "disjoint bridges");
    v.require(mapping && map_err <= 1e-9L, "endpoint images within 1e-9");
    v.require(shrink, "max bridge length strictly decreasing");
    v.require(rep.ordering, "c2 < pi/2 < c4 < c3 < c1");
    v.notes << " t_star=" << fmt(static_cast<double>(t_star), 12) << " depth=" << depth
            << " max_image_error=" << fmt(static_cast<double>(map_err), 2);
    for (const auto& f : rep.failures) v.notes << " {" << f << "}";
  });

  // 8. renders
  report(8, "parameter-plane and orbit-diagram renders", [](Verdict& v) {
    auto cfg = RenderConfig::plane_defaults();
    auto t0 = Clock::now();
    auto periods = plane_periods(cfg);
    Raster first = render_parameter_plane(cfg);
    double dt = seconds_since(t0) / 2;  // two renders were timed
    Raster second = render_parameter_plane(cfg);
    v.require(cfg.width == 400 && cfg.height == 400, "400x400 raster");
    v.require(dt < 60.0, "render < 60 s");
    v.require(encode_ppm(first) == encode_ppm(second), "byte-identical across runs");

    auto table = cascade_table<double>(5);
    v.require(table.betas.size() == 5 && table.t_infinity_estimate.has_value(), "cascade table for alignment");
    if (table.betas.size() < 5 || !table.t_infinity_estimate) return;
    // Period changes on the real axis: |t| = 1, pi/2, alpha_1 and every beta_n.
    // alpha_n for n >= 2 keeps the period and therefore the color.
    std::vector<double> expected{1.0, kHalfPi, table.alphas[0].t};
    for (const auto& b : table.betas) expected.push_back(b.t);
    const double dx = (cfg.re_max - cfg.re_min) / cfg.width;
    const double t_inf = *table.t_infinity_estimate;
    auto trans = row_transitions(periods, cfg.width, cfg.height - 1);
    int stray = 0, missing = 0;
    std::vector<double> edges;
    for (int x : trans) edges.push_back(cfg.re_min + x * dx);
    for (double e : edges) {
      if (std::fabs(e) > t_inf + dx) continue;  // past the cascade
      double best = 1e9;
      for (double s : expected) best = std::min({best, std::fabs(e - s), std::fabs(e + s)});
      if (best > dx) ++stray;
    }
    for (double s : expected) {
      for (double sgn : {1.0, -1.0}) {
        double best = 1e9;
        for (double e : edges) best = std::min(best, std::fabs(e - sgn * s));
        if (best > dx) ++missing;
      }
    }
    v.require(stray == 0, "every real-axis transition within one pixel of the cascade table");
    v.require(missing == 0, "every cascade transition visible within one pixel");

    auto dcfg = RenderConfig::diagram_defaults();
    dcfg.width = 800;
    dcfg.t_min = 0.0;
    dcfg.t_max = kPi;
    for (const auto& a : table.alphas) dcfg.markers.push_back(a.t);
    for (const auto& b : table.betas) dcfg.markers.push_back(b.t);
    auto t1 = Clock::now();
    auto diagram = render_orbit_diagram(dcfg);
    double ddt = seconds_since(t1);
    v.require(encode_ppm(diagram) == encode_ppm(render_orbit_diagram(dcfg)), "diagram byte-identical across runs");
    const double b1 = table.betas[0].t, a1 = table.alphas[0].t, a2 = table.alphas[1].t;
    struct Col {
      double t;
      int branches, groups;
      const char* what;
    };
    const Col cols[] = {
        {0.9, 1, 1, "one branch below 1"},
        {1.1, 2, 1, "quadrupling past 1"},
        {1.5, 2, 1, "one symmetric cycle below pi/2"},
        {1.65, 2, 2, "splitting past pi/2"},
        {b1 - 0.03, 4, 2, "two cycles before beta_1"},
        {b1 + 0.03, 4, 1, "merged cycle after beta_1"},
    };
    for (const auto& c : cols) {
      auto bc = count_branches(diagram, column_of(dcfg, c.t));
      v.notes << " t=" << fmt(c.t, 4) << ":(" << bc.branches << "," << bc.groups << ")";
      v.require(bc.branches == c.branches && bc.groups == c.groups, c.what);
    }
    // height counts per cascade window
    for (int n = 1; n <= 2; ++n) {
      const int want = 1 << (n + 1);
      double merged_t = (table.betas[n - 1].t + table.alphas[n].t) / 2;
      double split_t = (table.alphas[n].t + table.betas[n].t) / 2;
      auto hm = diagram_heights(merged_t, 20000, 512);
      auto hs = diagram_heights(split_t, 20000, 512);
      v.require(static_cast<int>(hm.merged.size()) == want && hm.groups == 1,
                std::to_string(want) + " heights in one group on (beta_" + std::to_string(n) + ", alpha_" +
                    std::to_string(n + 1) + ")");
      v.require(static_cast<int>(hs.plus.size()) == want && static_cast<int>(hs.minus.size()) == want &&
                    hs.groups == 2,
                "two groups of " + std::to_string(want) + " heights on (alpha_" + std::to_string(n + 1) +
                    ", beta_" + std::to_string(n + 1) + ")");
    }
    (void)a1;
    (void)a2;
    v.notes << " plane_time=" << fmt(dt, 3) << "s diagram_time=" << fmt(ddt, 3) << "s transitions=" << trans.size();
  });

  std::cout << (failures == 0 ? "ALL CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
