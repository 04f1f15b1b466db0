#include "tancascade/cascade.hpp"

#include "tancascade/renorm.hpp"

#include <cmath>
#include <limits>

namespace tancascade {

namespace {

template <class Real>
Real virtual_target(int n) {
  return (n % 2 == 1 ? Real(1) : Real(-1)) * half_pi_v<Real>();
}

template <class Real>
Real nan_v() {
  return std::numeric_limits<Real>::quiet_NaN();
}

}  // namespace

template <class Real>
PowerValue<Real> phi_with_derivative(int n, Real t) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "level must be >= 1");
  MapParams<Real> p(t);
  p.validate();
  const long steps = (1L << n) - 1;
  Real x = t, dx = 1;
  for (long k = 0; k < steps; ++k) {
    if (pole_distance(x) <= p.pole_tolerance)
      throw Error(ErrorKind::OrbitHitPole, "orbit of t meets a pole at step " + std::to_string(k));
    auto d = eval_F_partials(t, x, p.saturation_threshold);
    dx = d.dF_dw + d.dF_dz * dx;
    x = eval_f(p, x);
  }
  return {x - virtual_target<Real>(n), dx};
}

template <class Real>
Real phi(int n, Real t) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "level must be >= 1");
  MapParams<Real> p(t);
  p.validate();
  const long steps = (1L << n) - 1;
  Real x = t;
  for (long k = 0; k < steps; ++k) {
    if (pole_distance(x) <= p.pole_tolerance)
      throw Error(ErrorKind::OrbitHitPole, "orbit of t meets a pole at step " + std::to_string(k));
    x = eval_f(p, x);
  }
  return x - virtual_target<Real>(n);
}

template <class Real>
std::vector<Real> phi_grid(int n, const std::vector<Real>& ts) {
  std::vector<Real> out(ts.size());
  const long count = static_cast<long>(ts.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < count; ++i) {
    try {
      out[i] = phi(n, ts[i]);
    } catch (const Error&) {
      out[i] = nan_v<Real>();
    }
  }
  return out;
}

template <class Real>
std::vector<Real> phi_grid_serial(int n, const std::vector<Real>& ts) {
  std::vector<Real> out(ts.size());
  for (size_t i = 0; i < ts.size(); ++i) {
    try {
      out[i] = phi(n, ts[i]);
    } catch (const Error&) {
      out[i] = nan_v<Real>();
    }
  }
  return out;
}

template <class Real>
BetaResult<Real> solve_beta(int n, Real lo, Real hi) {
  using std::abs;
  Real glo = phi(n, lo), ghi = phi(n, hi);
  if ((glo < 0) == (ghi < 0)) throw Error(ErrorKind::NoSignChange, "Phi has no sign change on the bracket");
  Real a = lo, b = hi;
  while (b - a > Real(1e-13)) {
    Real m = (a + b) / 2;
    Real gm = phi(n, m);
    if ((gm < 0) == (glo < 0)) {
      a = m;
      glo = gm;
    } else {
      b = m;
    }
  }
  Real t = (a + b) / 2;
  for (int it = 0; it < 6; ++it) {
    auto v = phi_with_derivative(n, t);
    if (v.value == 0 || v.derivative == 0) break;
    Real tn = t - v.value / v.derivative;
    if (tn < a || tn > b) break;
    t = tn;
  }
  Real res = abs(phi(n, t));
  if (res > Real(1e-11)) throw Error(ErrorKind::BranchJump, "bracket collapsed onto a discontinuity of Phi");
  return {t, res};
}

template <class Real>
std::pair<Real, Real> beta_bracket(int n, Real alpha_n, Real hi) {
  constexpr int kGrid = 4096;
  std::vector<Real> ts(kGrid);
  for (int i = 0; i < kGrid; ++i) ts[i] = alpha_n + (hi - alpha_n) * Real(i + 1) / Real(kGrid + 1);
  auto gs = phi_grid(n, ts);
  for (int i = 0; i + 1 < kGrid; ++i) {
    if (gs[i] != gs[i] || gs[i + 1] != gs[i + 1]) continue;
    if ((gs[i] < 0) == (gs[i + 1] < 0)) continue;
    try {
      solve_beta(n, ts[i], ts[i + 1]);
      return {ts[i], ts[i + 1]};
    } catch (const Error&) {
      // jump across a pre-pole
    }
  }
  throw Error(ErrorKind::NoSignChange, "no root of Phi_" + std::to_string(n) + " on the scan grid");
}

template <class Real>
ParabolicFix<Real> solve_alpha(int n, Real lo, Real hi, Real step) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "level must be >= 1");
  if (n == 1) return locate_parabolic(lo, hi, 1, -1, step);
  return locate_parabolic(lo, hi, 1 << n, +1, step);
}

template <class Real>
TInfinity<Real> estimate_t_infinity(const std::vector<Real>& betas) {
  if (betas.size() < 3) throw Error(ErrorKind::InsufficientData, "need at least three betas");
  TInfinity<Real> out;
  for (size_t i = 1; i + 1 < betas.size(); ++i)
    out.ratios.push_back((betas[i] - betas[i - 1]) / (betas[i + 1] - betas[i]));
  const Real last = out.ratios.back();
  const size_t k = betas.size() - 1;
  if (!(last > 1)) {
    out.divergent = true;
    out.t_inf = nan_v<Real>();
    return out;
  }
  out.t_inf = betas[k] + (betas[k] - betas[k - 1]) / (last - 1);
  return out;
}

template <class Real>
CascadeTable<Real> cascade_table(int depth) {
  using std::min;
  if (depth < 1) throw Error(ErrorKind::InvalidArgument, "depth must be >= 1");
  CascadeTable<Real> table;
  const Real pi = pi_v<Real>();
  Real beta_prev = half_pi_v<Real>();
  Real beta_prev2 = 0;
  for (int n = 1; n <= depth; ++n) {
    try {
      Real step = n == 1 ? Real(1e-3) : min(Real(1e-3), Real((beta_prev - beta_prev2) / 256));
      auto fix = solve_alpha(n, beta_prev, pi, step);
      AlphaEntry<Real> a;
      a.n = n;
      a.t = fix.t_star;
      a.fixed_point_residual = fix.fixed_point_residual;
      a.multiplier_residual = fix.multiplier_residual;
      a.multiplier = fix.cycle.multiplier;
      a.bracket_lo = beta_prev;
      a.bracket_hi = pi;
      if (!(a.t > beta_prev)) throw Error(ErrorKind::OrderingViolated, "alpha does not exceed the previous beta");

      // Narrow window first; the root sits within a few window widths of alpha_n.
      Real window_hi = n == 1 ? pi : min(pi, Real(a.t + 4 * (a.t - beta_prev)));
      std::pair<Real, Real> br;
      try {
        br = beta_bracket(n, a.t, window_hi);
      } catch (const Error&) {
        br = beta_bracket(n, a.t, pi);
      }
      auto root = solve_beta(n, br.first, br.second);
      BetaEntry<Real> b{n, root.t, root.residual, br.first, br.second};
      if (!(b.t > a.t)) throw Error(ErrorKind::OrderingViolated, "beta does not exceed alpha");
      table.alphas.push_back(a);
      table.betas.push_back(b);
      beta_prev2 = beta_prev;
      beta_prev = b.t;
    } catch (const Error& e) {
      table.failures.push_back("level " + std::to_string(n) + ": " + e.what());
      break;
    }
  }
  if (table.betas.size() >= 3) {
    std::vector<Real> bs;
    for (const auto& b : table.betas) bs.push_back(b.t);
    auto ti = estimate_t_infinity(bs);
    table.ratio_sequence = ti.ratios;
    table.extrapolation_divergent = ti.divergent;
    if (!ti.divergent) table.t_infinity_estimate = ti.t_inf;
  }
  return table;
}

template <class Real>
Real beta_from_prepole_crossing(int n, Real lo, Real hi) {
  using std::abs;
  // h(t) = c_{2^{n-1}}(t) - (pre-pole of level n on the same side of pi/2)
  auto h = [n](Real t) {
    Real c = c_value(t, n - 1, 1).value;
    auto pp = prepoles(t, n);
    return c - (c > half_pi_v<Real>() ? pp.b : pp.a);
  };
  Real a = lo, b = hi;
  Real ha = h(a), hb = h(b);
  if ((ha < 0) == (hb < 0)) throw Error(ErrorKind::NoSignChange, "orbit point does not cross the pre-pole");
  for (int it = 0; it < 200 && b - a > 4 * std::numeric_limits<Real>::epsilon() * abs(a); ++it) {
    Real m = (a + b) / 2;
    Real hm = h(m);
    if ((hm < 0) == (ha < 0)) {
      a = m;
      ha = hm;
    } else {
      b = m;
    }
  }
  return (a + b) / 2;
}

#define TANCASCADE_INSTANTIATE(R)                                                   \
  template R phi<R>(int, R);                                                        \
  template PowerValue<R> phi_with_derivative<R>(int, R);                            \
  template std::vector<R> phi_grid<R>(int, const std::vector<R>&);                  \
  template std::vector<R> phi_grid_serial<R>(int, const std::vector<R>&);           \
  template BetaResult<R> solve_beta<R>(int, R, R);                                  \
  template std::pair<R, R> beta_bracket<R>(int, R, R);                              \
  template ParabolicFix<R> solve_alpha<R>(int, R, R, R);                            \
  template CascadeTable<R> cascade_table<R>(int);                                   \
  template TInfinity<R> estimate_t_infinity<R>(const std::vector<R>&);              \
  template R beta_from_prepole_crossing<R>(int, R, R);

TANCASCADE_INSTANTIATE(double)
TANCASCADE_INSTANTIATE(long double)
TANCASCADE_INSTANTIATE(quad)

}  // namespace tancascade
