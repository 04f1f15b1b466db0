#include "tancascade/renorm.hpp"

#include "tancascade/cycles.hpp"

#include <cmath>
#include <vector>

namespace tancascade {

namespace {

constexpr int kScanPoints = 1 << 10;

template <class Real>
struct Root {
  Real x;
  Real residual;
};

template <class Real>
Root<Real> polish_prepole(const MapParams<Real>& p, Real a, Real b, Real ga, long steps, Real target);

// Unique solution of f^steps(x) = target on the open interval (lo, hi).
template <class Real>
Root<Real> solve_prepole(const MapParams<Real>& p, Real lo, Real hi, long steps, Real target) {
  using std::abs;
  std::vector<Real> xs(kScanPoints), gs(kScanPoints);
  for (int i = 0; i < kScanPoints; ++i) {
    xs[i] = lo + (hi - lo) * (Real(i) + Real(0.5)) / Real(kScanPoints);
    try {
      gs[i] = power_map(p, xs[i], steps).value - target;
    } catch (const Error&) {
      throw Error(ErrorKind::NotRenormalizable, "orbit meets a pole inside the interval");
    }
  }
  int changes = 0, cell = -1;
  for (int i = 0; i + 1 < kScanPoints; ++i) {
    if ((gs[i] < 0) != (gs[i + 1] < 0)) {
      ++changes;
      cell = i;
    }
  }
  if (changes != 1)
    throw Error(ErrorKind::NotRenormalizable,
                changes == 0 ? "no pre-image of the pole in the interval" : "pre-image of the pole is not unique");

  try {
    return polish_prepole(p, xs[cell], xs[cell + 1], gs[cell], steps, target);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotRenormalizable) throw;
    throw Error(ErrorKind::NotRenormalizable, std::string("orbit meets a pole while refining: ") + e.what());
  }
}

template <class Real>
Root<Real> polish_prepole(const MapParams<Real>& p, Real a, Real b, Real ga, long steps, Real target) {
  using std::abs;
  const Real eps = std::numeric_limits<Real>::epsilon();
  while (b - a > 8 * eps * (1 + abs(a))) {
    Real m = (a + b) / 2;
    if (m <= a || m >= b) break;
    Real gm = power_map(p, m, steps).value - target;
    if ((gm < 0) == (ga < 0)) {
      a = m;
      ga = gm;
    } else {
      b = m;
    }
  }
  Real x = (a + b) / 2;
  for (int it = 0; it < 4; ++it) {
    auto v = power_map(p, x, steps);
    Real g = v.value - target;
    if (g == 0 || v.derivative == 0) break;
    Real xn = x - g / v.derivative;
    if (xn < a || xn > b) break;
    x = xn;
  }
  Real res = abs(power_map(p, x, steps).value - target);
  if (res > Real(1e-12)) throw Error(ErrorKind::NotRenormalizable, "sign change is a discontinuity, not a pre-pole");
  return {x, res};
}

// Sign of R^{level}(pi/2 from the given side), i.e. the side of 0 on which
// the image of the adjacent interval lies.
template <class Real>
int image_sign(const MapParams<Real>& p, long steps, Side side) {
  auto o = orbit(p, Sided<Real>{half_pi_v<Real>(), side}, steps);
  if (o.aborted || o.points.empty()) throw Error(ErrorKind::NotRenormalizable, "pole orbit breaks off");
  return o.points.back().value < 0 ? -1 : 1;
}

}  // namespace

template <class Real>
PrepolePair<Real> prepoles(Real t, int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "level must be >= 1");
  MapParams<Real> p(t);
  p.validate();
  const Real h = half_pi_v<Real>();
  Real a_prev = 0, b_prev = pi_v<Real>();
  PrepolePair<Real> out;
  for (int k = 1; k <= n; ++k) {
    const long steps = 1L << (k - 1);
    Real target_a = Real(image_sign(p, steps, Side::from_left)) * h;
    Real target_b = Real(image_sign(p, steps, Side::from_right)) * h;
    auto ra = solve_prepole(p, a_prev, h, steps, target_a);
    auto rb = solve_prepole(p, h, b_prev, steps, target_b);
    out = {ra.x, rb.x, ra.residual, rb.residual};
    a_prev = ra.x;
    b_prev = rb.x;
  }
  return out;
}

template <class Real>
RenormLevel<Real> renorm_level(Real t, int n) {
  auto pp = prepoles(t, n);
  const Real h = half_pi_v<Real>();
  RenormLevel<Real> lvl;
  lvl.n = n;
  lvl.a_n = pp.a;
  lvl.b_n = pp.b;
  lvl.intervals = {Interval<Real>{-pp.b, -h}, Interval<Real>{-h, -pp.a}, Interval<Real>{pp.a, h},
                   Interval<Real>{h, pp.b}};
  lvl.c1 = c_value(t, n, 1).value;
  lvl.c2 = c_value(t, n, 2).value;
  return lvl;
}

template <class Real>
Real renorm_eval(Real t, int n, const Sided<Real>& x) {
  auto lvl = renorm_level(t, n);
  bool inside = false;
  for (const auto& iv : lvl.intervals) inside = inside || iv.contains(x.value);
  if (!inside) throw Error(ErrorKind::OutOfDomain, "point outside the level-" + std::to_string(n) + " intervals");
  MapParams<Real> p(t);
  auto o = orbit(p, x, 1L << n);
  if (o.aborted) throw Error(ErrorKind::UnsidedPole, "orbit reaches a pole without a side");
  return o.points.back().value;
}

template <class Real>
CValue<Real> c_value(Real t, int n, long m) {
  using std::abs;
  if (n < 0 || m < 1) throw Error(ErrorKind::InvalidArgument, "need n >= 0 and m >= 1");
  MapParams<Real> p(t);
  p.validate();
  auto o = orbit(p, Sided<Real>{half_pi_v<Real>(), Side::from_right}, (1L << n) * m);
  if (o.aborted) throw Error(ErrorKind::UnsidedPole, "orbit reaches a pole without a side");
  // The first step always uses the directional rule f(pi/2+) = t.
  return {abs(o.points.back().value), o.pole_hits > 1};
}

template <class Real>
bool is_renormalizable(Real t, int n) {
  if (n < 1) return true;
  try {
    prepoles(t, n + 1);
    return true;
  } catch (const Error&) {
    return false;
  }
}

#define TANCASCADE_INSTANTIATE(R)                                \
  template PrepolePair<R> prepoles<R>(R, int);                   \
  template RenormLevel<R> renorm_level<R>(R, int);               \
  template R renorm_eval<R>(R, int, const Sided<R>&);            \
  template CValue<R> c_value<R>(R, int, long);                   \
  template bool is_renormalizable<R>(R, int);

TANCASCADE_INSTANTIATE(double)
TANCASCADE_INSTANTIATE(long double)
TANCASCADE_INSTANTIATE(quad)

}  // namespace tancascade
