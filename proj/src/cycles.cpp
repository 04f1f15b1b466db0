#include "tancascade/cycles.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace tancascade {

const char* to_string(Classification c) {
  switch (c) {
    case Classification::attracting: return "attracting";
    case Classification::parabolic: return "parabolic";
    case Classification::repelling: return "repelling";
  }
  return "unknown";
}

template <class Real>
PowerValue<Real> power_map(const MapParams<Real>& p, Real x, long N) {
  Real d = 1;
  for (long i = 0; i < N; ++i) {
    d *= eval_f_prime(p, x);
    x = eval_f(p, x);
  }
  return {x, d};
}

template <class Real>
Classification classify(Real multiplier, Real tol) {
  using std::abs;
  Real m = abs(multiplier);
  if (m < 1 - tol) return Classification::attracting;
  if (abs(m - 1) <= tol) return Classification::parabolic;
  return Classification::repelling;
}

template <class Real>
Real multiplier(Real t, const Cycle<Real>& cycle) {
  using std::abs;
  using std::exp;
  using std::log;
  MapParams<Real> p(t);
  Real log_sum = 0;
  int sign = 1;
  for (const Real& x : cycle.real_points) {
    if (pole_distance(x) <= p.pole_tolerance) throw Error(ErrorKind::PoleOnCycle, "cycle point at a pole");
    Real d = eval_f_prime(p, x);
    if (d == 0) return Real(0);
    if (d < 0) sign = -sign;
    log_sum += log(abs(d));
  }
  return sign * exp(log_sum);
}

namespace {

template <class Real>
Real newton_residual_target() {
  return Real(1e-13);
}

// Cycle through x with f-period N, points in orbit order starting at the largest.
template <class Real>
Cycle<Real> make_cycle(Real t, Real x, int N, Real class_tol) {
  using std::abs;
  MapParams<Real> p(t);
  Cycle<Real> c;
  if (N == 1 && abs(x) < Real(1e-12)) x = 0;
  c.real_points.reserve(static_cast<size_t>(N));
  Real y = x;
  for (int i = 0; i < N; ++i) {
    c.real_points.push_back(y);
    if (i + 1 < N) y = eval_f(p, y);
  }
  auto it = std::max_element(c.real_points.begin(), c.real_points.end());
  std::rotate(c.real_points.begin(), it, c.real_points.end());
  c.period_T = (N == 1 && x == 0) ? 1 : 2 * N;
  c.residual = abs(power_map(p, c.real_points.front(), N).value - c.real_points.front());
  c.multiplier = multiplier(t, c);
  c.classification = classify(c.multiplier, class_tol);
  return c;
}

// Damped Newton on g(x) = f^N(x) - x, or on G(x) = f^{N/2}(x) + x when
// `symmetric` (cycles with f^{N/2} = -id on them).
template <class Real>
Real newton_cycle(const MapParams<Real>& p, Real x, int N, bool symmetric, Real max_jump) {
  using std::abs;
  const Real x0 = x;
  const Real eps = std::numeric_limits<Real>::epsilon();
  Real best = std::numeric_limits<Real>::infinity();
  for (int it = 0; it < 100; ++it) {
    Real g, dg;
    if (symmetric) {
      auto h = power_map(p, x, N / 2);
      g = h.value + x;
      dg = h.derivative + 1;
    } else {
      auto h = power_map(p, x, N);
      g = h.value - x;
      dg = h.derivative - 1;
    }
    Real ag = abs(g);
    if (ag < best) best = ag;
    if (ag == 0) return x;
    if (abs(dg) < Real(1e-8))
      throw Error(ErrorKind::DerivativeNearOne, "cycle equation is singular (near-parabolic)");
    Real step = -g / dg;
    if (abs(step) > Real(0.25)) step = step > 0 ? Real(0.25) : Real(-0.25);
    // Back off when the step lands on a pole.
    Real trial = x + step;
    int backoff = 0;
    while (pole_distance(trial) <= p.pole_tolerance && backoff < 30) {
      step /= 2;
      trial = x + step;
      ++backoff;
    }
    x = trial;
    if (abs(x - x0) > max_jump) throw Error(ErrorKind::NewtonDiverged, "Newton left the neighbourhood of the seed");
    if (abs(step) <= 4 * eps * (1 + abs(x)) && ag < newton_residual_target<Real>()) return x;
  }
  if (best < newton_residual_target<Real>()) return x;
  throw Error(ErrorKind::NewtonDiverged, "Newton did not converge");
}

}  // namespace

template <class Real>
Cycle<Real> refine_cycle_newton(Real t, const std::vector<Real>& seed, int period_f) {
  if (period_f < 1) throw Error(ErrorKind::InvalidArgument, "period_f must be positive");
  if (seed.empty()) throw Error(ErrorKind::InvalidArgument, "empty seed");
  MapParams<Real> p(t);
  p.validate();
  for (const Real& s : seed) {
    try {
      Real x;
      try {
        x = newton_cycle(p, s, period_f, false, Real(4));
      } catch (const Error& e) {
        // A symmetric cycle keeps a regular reduced equation at its pitchfork.
        if (e.kind() != ErrorKind::DerivativeNearOne || period_f % 2 != 0) throw;
        x = newton_cycle(p, s, period_f, true, Real(4));
      }
      return make_cycle(t, x, period_f, Real(1e-9));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::DerivativeNearOne) throw;
      if (e.kind() != ErrorKind::NewtonDiverged && e.kind() != ErrorKind::UnsidedPole &&
          e.kind() != ErrorKind::PoleProximity)
        throw;
    }
  }
  throw Error(ErrorKind::NewtonDiverged, "no seed converged");
}

template <class Real>
std::optional<Cycle<Real>> find_attracting_cycle_from(Real t, Real start, int max_period_T, int transient, Real tol) {
  using std::abs;
  if (max_period_T < 2 || max_period_T > 4096)
    throw Error(ErrorKind::InvalidArgument, "max_period_T must lie in [2, 4096]");
  MapParams<Real> p(t);
  p.validate();
  const int half = max_period_T / 2;
  Real x = start;
  try {
    for (int i = 0; i < transient; ++i) x = eval_f(p, x);
    for (int round = 0; round < 8; ++round) {
      const Real x0 = x;
      Real y = x0;
      int k_found = 0;
      for (int k = 1; k <= half; ++k) {
        y = eval_f(p, y);
        if (abs(y - x0) < tol) {
          k_found = k;
          break;
        }
      }
      if (k_found > 0) {
        for (int d = 1; d < k_found; ++d) {
          if (k_found % d != 0) continue;
          if (abs(power_map(p, x0, d).value - x0) < tol) {
            k_found = d;
            break;
          }
        }
        try {
          Cycle<Real> c = refine_cycle_newton(t, std::vector<Real>{x0}, k_found);
          if (c.classification != Classification::repelling) return c;
        } catch (const Error& e) {
          if (e.kind() == ErrorKind::DerivativeNearOne) return make_cycle(t, x0, k_found, Real(1e-4));
          if (e.kind() != ErrorKind::NewtonDiverged) throw;
        }
      }
      x = y;
      for (int i = 0; i < transient; ++i) x = eval_f(p, x);
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::UnsidedPole && e.kind() != ErrorKind::PoleProximity) throw;
  }
  return std::nullopt;
}

template <class Real>
std::optional<Cycle<Real>> find_attracting_cycle(Real t, int max_period_T, int transient, Real tol) {
  return find_attracting_cycle_from(t, t, max_period_T, transient, tol);
}

template <class Real>
int count_distinct_cycles(Real t, int period_T, int transient) {
  using std::abs;
  using std::max;
  using std::min;
  const int max_T = std::max(2 * period_T, 64);
  auto a = find_attracting_cycle_from(t, t, max_T, transient, Real(1e-9));
  auto b = find_attracting_cycle_from(t, Real(-t), max_T, transient, Real(1e-9));
  if (!a || !b) throw Error(ErrorKind::NoConvergence, "no attracting cycle found");
  if (a->period_T != period_T || b->period_T != period_T)
    throw Error(ErrorKind::NoConvergence, "attracting cycle has period " + std::to_string(a->period_T) +
                                              ", expected " + std::to_string(period_T));
  const Real sep = Real(1e-6);
  Real worst = 0;
  Real closest = std::numeric_limits<Real>::infinity();
  for (const Real& q : b->real_points) {
    Real nearest = std::numeric_limits<Real>::infinity();
    for (const Real& r : a->real_points) nearest = min(nearest, Real(abs(q - r)));
    worst = max(worst, nearest);
    closest = min(closest, nearest);
  }
  if (worst < sep) return 1;
  if (closest > sep) return 2;
  throw Error(ErrorKind::NoConvergence, "cycles neither coincide nor separate");
}

namespace {

template <class Real>
struct ContinuationPoint {
  Real t;
  Real x;
  Real h;  // signed distance of the multiplier from the target
};

template <class Real>
class ParabolicProblem {
 public:
  ParabolicProblem(int N, int target, bool symmetric) : N_(N), target_(target), symmetric_(symmetric) {}

  // Solve the cycle equation at t starting from x and report the multiplier gap.
  ContinuationPoint<Real> at(Real t, Real x, Real max_jump) const {
    MapParams<Real> p(t);
    Real xs = newton_cycle(p, x, N_, symmetric_, max_jump);
    return {t, xs, gap(p, xs)};
  }

  // Residual pair for the 2D solve.
  std::array<Real, 2> residual(Real t, Real x) const {
    MapParams<Real> p(t);
    if (symmetric_) {
      auto h = power_map(p, x, N_ / 2);
      return {h.value + x, h.derivative - Real(half_sign_)};
    }
    auto h = power_map(p, x, N_);
    return {h.value - x, h.derivative - Real(target_)};
  }

  void set_half_sign(int s) { half_sign_ = s; }

 private:
  Real gap(const MapParams<Real>& p, Real x) const {
    using std::abs;
    if (symmetric_) return abs(power_map(p, x, N_ / 2).derivative) - 1;
    return power_map(p, x, N_).derivative - Real(target_);
  }

  int N_;
  int target_;
  bool symmetric_;
  int half_sign_ = 1;
};

}  // namespace

template <class Real>
ParabolicFix<Real> locate_parabolic(Real lo, Real hi, int period_f, int target, Real initial_step) {
  using std::abs;
  using std::exp;
  using std::log;
  using std::max;
  using std::min;
  if (!(lo < hi)) throw Error(ErrorKind::InvalidArgument, "empty bracket");
  if (target != 1 && target != -1) throw Error(ErrorKind::InvalidArgument, "target must be +1 or -1");
  const int N = period_f;
  const Real dt_max = min(initial_step, Real((hi - lo) / 64));
  Real dt = dt_max;

  // Starting cycle: the attracting cycle of the requested period just inside the bracket.
  Real t = lo + dt;
  std::optional<Cycle<Real>> start;
  for (int tries = 0; tries < 64 && t < hi; ++tries, t += dt) {
    start = find_attracting_cycle(t, std::max(4 * N, 8), 5000, Real(1e-9));
    if (start && start->period_f() == N) break;
    start.reset();
  }
  if (!start) throw Error(ErrorKind::NoCrossing, "no cycle of the requested period near the bracket start");

  Real x = start->real_points.front();
  bool symmetric = false;
  if (N % 2 == 0 && target == 1) {
    MapParams<Real> p(t);
    symmetric = abs(power_map(p, x, N / 2).value + x) < Real(1e-8);
  }
  ParabolicProblem<Real> prob(N, target, symmetric);

  auto sgn = [](Real v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); };
  ContinuationPoint<Real> cur = prob.at(t, x, Real(1e-6));
  ContinuationPoint<Real> nxt{};
  bool bracketed = false;
  const Real dt_min = max(Real(1e-15), Real(64) * std::numeric_limits<Real>::epsilon());
  while (!bracketed) {
    if (cur.t >= hi) throw Error(ErrorKind::NoCrossing, "multiplier does not reach the target inside the bracket");
    Real tn = min(Real(cur.t + dt), hi);
    try {
      nxt = prob.at(tn, cur.x, Real(0.05));
    } catch (const Error&) {
      dt /= 2;
      if (dt < dt_min) throw Error(ErrorKind::NewtonDiverged, "continuation step underflow");
      continue;
    }
    if (sgn(nxt.h) != sgn(cur.h)) {
      bracketed = true;
    } else {
      cur = nxt;
      dt = min(Real(dt * 2), dt_max);
    }
  }

  // Bisection on the multiplier gap (monotone in t inside the window).
  ContinuationPoint<Real> a = cur, b = nxt;
  for (int it = 0; it < 200 && (b.t - a.t) > Real(1e-9) * (1 + abs(a.t)); ++it) {
    Real tm = (a.t + b.t) / 2;
    ContinuationPoint<Real> m = prob.at(tm, a.x, Real(0.05));
    if (sgn(m.h) == sgn(a.h))
      a = m;
    else
      b = m;
  }

  // 2D Newton on (t, x) with a central-difference Jacobian.
  if (symmetric) prob.set_half_sign(power_map(MapParams<Real>(a.t), a.x, N / 2).derivative > 0 ? 1 : -1);
  Real tt = (a.t + b.t) / 2, xx = a.x;
  const Real eps = std::numeric_limits<Real>::epsilon();
  Real best_norm = std::numeric_limits<Real>::infinity();
  Real best_t = tt, best_x = xx;
  int stall = 0;
  for (int it = 0; it < 40 && stall < 4; ++it) {
    auto r = prob.residual(tt, xx);
    Real norm = max(abs(r[0]), abs(r[1]));
    if (norm < best_norm) {
      best_norm = norm;
      best_t = tt;
      best_x = xx;
      stall = 0;
    } else {
      ++stall;
    }
    if (norm == 0) break;
    const Real cbrt_eps = exp(log(eps) / 3);
    Real ht = cbrt_eps * (1 + abs(tt)) * Real(1e-2);
    Real hx = cbrt_eps * (1 + abs(xx)) * Real(1e-2);
    auto rtp = prob.residual(tt + ht, xx), rtm = prob.residual(tt - ht, xx);
    auto rxp = prob.residual(tt, xx + hx), rxm = prob.residual(tt, xx - hx);
    Real j00 = (rtp[0] - rtm[0]) / (2 * ht), j10 = (rtp[1] - rtm[1]) / (2 * ht);
    Real j01 = (rxp[0] - rxm[0]) / (2 * hx), j11 = (rxp[1] - rxm[1]) / (2 * hx);
    Real det = j00 * j11 - j01 * j10;
    if (det == 0) throw Error(ErrorKind::NewtonDiverged, "singular Jacobian in the parabolic solve");
    Real dtn = -(j11 * r[0] - j01 * r[1]) / det;
    Real dxn = -(-j10 * r[0] + j00 * r[1]) / det;
    // Keep the iterate inside the bisection bracket.
    Real tnew = tt + dtn;
    if (tnew < a.t || tnew > b.t) {
      dtn /= 2;
      dxn /= 2;
      tnew = tt + dtn;
    }
    tt = tnew;
    xx += dxn;
  }
  tt = best_t;
  xx = best_x;

  Cycle<Real> cyc = make_cycle(tt, xx, N, Real(1e-6));
  MapParams<Real> p(tt);
  ParabolicFix<Real> fix;
  fix.t_star = tt;
  fix.target_multiplier = target;
  fix.fixed_point_residual = abs(power_map(p, xx, N).value - xx);
  fix.multiplier_residual = abs(cyc.multiplier - Real(target));
  fix.cycle = std::move(cyc);
  if (fix.fixed_point_residual > Real(1e-10) || fix.multiplier_residual > Real(1e-8))
    throw Error(ErrorKind::NewtonDiverged, "parabolic residuals above tolerance");
  return fix;
}

#define TANCASCADE_INSTANTIATE(R)                                                                          \
  template PowerValue<R> power_map<R>(const MapParams<R>&, R, long);                                       \
  template std::optional<Cycle<R>> find_attracting_cycle<R>(R, int, int, R);                               \
  template std::optional<Cycle<R>> find_attracting_cycle_from<R>(R, R, int, int, R);                       \
  template Cycle<R> refine_cycle_newton<R>(R, const std::vector<R>&, int);                                 \
  template R multiplier<R>(R, const Cycle<R>&);                                                            \
  template Classification classify<R>(R, R);                                                               \
  template ParabolicFix<R> locate_parabolic<R>(R, R, int, int, R);                                         \
  template int count_distinct_cycles<R>(R, int, int);

TANCASCADE_INSTANTIATE(double)
TANCASCADE_INSTANTIATE(long double)
TANCASCADE_INSTANTIATE(quad)

}  // namespace tancascade
