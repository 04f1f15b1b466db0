#pragma once

// Kernels for the tangent family T_t(z) = i t tan z and its real square
// f_t(x) = T_t^2(x) = -t tanh(t tan x).

#include "tancascade/errors.hpp"
#include "tancascade/real.hpp"

#include <cmath>
#include <complex>
#include <vector>

namespace tancascade {

// Direction from which a point is approached; used for one-sided limits at poles.
enum class Side { none, from_left, from_right };

inline Side flip(Side s) {
  switch (s) {
    case Side::from_left: return Side::from_right;
    case Side::from_right: return Side::from_left;
    case Side::none: break;
  }
  return Side::none;
}

template <class Real>
struct Sided {
  Real value{};
  Side side = Side::none;
};

template <class Real>
struct MapParams {
  Real t{};
  Real pole_tolerance = Real(1e-12);
  // A sided value this close to a pole is read as the one-sided limit.
  Real side_snap_tolerance = Real(1e-9);
  Real saturation_threshold = Real(40);

  static constexpr int precision_bits = precision_bits_of<Real>();

  MapParams() = default;
  explicit MapParams(Real t_) : t(t_) {}

  void validate() const {
    if (!(t > 0) || t > pi_v<Real>() * (1 + Real(4) * std::numeric_limits<Real>::epsilon()))
      throw Error(ErrorKind::InvalidArgument, "t must lie in (0, pi]");
    if (!(pole_tolerance > 0)) throw Error(ErrorKind::InvalidArgument, "pole_tolerance must be positive");
    if (saturation_threshold < 20) throw Error(ErrorKind::InvalidArgument, "saturation_threshold must be >= 20");
  }
};

template <class Real>
struct ComplexVal {
  Real re{};
  Real im{};
  bool at_infinity = false;
};

template <class Real>
struct FPartials {
  Real dF_dw;
  Real dF_dz;
};

namespace detail {

// x = k*pi + r with r in (-pi/2, pi/2]; also returns the distance from x to
// the nearest pole.
template <class Real>
struct Reduced {
  Real r;
  Real pole_distance;
};

template <class Real>
Reduced<Real> reduce(const Real& x) {
  using std::abs;
  using std::round;
  const Real p = pi_v<Real>();
  const Real h = half_pi_v<Real>();
  Real k = round(x / p);
  Real r = x - k * p;
  if (r <= -h) r += p;
  if (r > h) r -= p;
  return {r, h - abs(r)};
}

// tan of a reduced argument. Close to a pole, tan r = ±cot d with d the
// distance to the pole, which avoids cancellation in r - pi/2.
template <class Real>
Real tan_reduced(const Reduced<Real>& red) {
  using std::cos;
  using std::sin;
  using std::tan;
  if (red.pole_distance < Real(0.25)) {
    Real c = cos(red.pole_distance) / sin(red.pole_distance);
    return red.r > 0 ? c : -c;
  }
  return tan(red.r);
}

template <class Real>
Real sign(const Real& x) {
  return x > 0 ? Real(1) : (x < 0 ? Real(-1) : Real(0));
}

}  // namespace detail

template <class Real>
Real pole_distance(const Real& x) {
  return detail::reduce(x).pole_distance;
}

// tan x with the same reduction the map kernels use.
template <class Real>
Real tan_reduced(const Real& x) {
  return detail::tan_reduced(detail::reduce(x));
}

// f_t on a sided point. Sets *pole_hit when the directional pole rule fired.
template <class Real>
Sided<Real> eval_f(const MapParams<Real>& p, const Sided<Real>& x, bool* pole_hit = nullptr) {
  using std::abs;
  using std::tanh;
  auto red = detail::reduce(x.value);
  const bool at_pole = red.pole_distance <= p.pole_tolerance ||
                       (x.side != Side::none && red.pole_distance <= p.side_snap_tolerance);
  if (at_pole) {
    if (x.side == Side::none)
      throw Error(ErrorKind::UnsidedPole, "f_t evaluated at a pole without a side");
    if (pole_hit) *pole_hit = true;
    // tan -> +inf from the left of every pole, -inf from the right.
    return {x.side == Side::from_left ? -p.t : p.t, flip(x.side)};
  }
  if (pole_hit) *pole_hit = false;
  Real u = p.t * detail::tan_reduced(red);
  Real v = abs(u) > p.saturation_threshold ? -p.t * detail::sign(u) : -p.t * tanh(u);
  return {v, flip(x.side)};
}

// Unsided convenience form.
template <class Real>
Real eval_f(const MapParams<Real>& p, const Real& x) {
  return eval_f(p, Sided<Real>{x, Side::none}).value;
}

template <class Real>
Real eval_f_prime(const MapParams<Real>& p, const Real& x) {
  using std::abs;
  using std::cosh;
  auto red = detail::reduce(x);
  if (red.pole_distance <= p.pole_tolerance)
    throw Error(ErrorKind::PoleProximity, "f_t' evaluated at a pole");
  Real tn = detail::tan_reduced(red);
  Real u = p.t * tn;
  if (abs(u) > p.saturation_threshold) return Real(0);
  Real ch = cosh(u);
  return -p.t * p.t * (1 + tn * tn) / (ch * ch);
}

// Partials of F(w, z) = -w tanh(w tan z).
template <class Real>
FPartials<Real> eval_F_partials(const Real& w, const Real& z, const Real& saturation = Real(40)) {
  using std::abs;
  using std::cosh;
  using std::tanh;
  auto red = detail::reduce(z);
  if (red.pole_distance <= Real(1e-12))
    throw Error(ErrorKind::PoleProximity, "F partials evaluated at a pole");
  Real tn = detail::tan_reduced(red);
  Real u = w * tn;
  if (abs(u) > saturation) return {-detail::sign(u), Real(0)};
  Real ch = cosh(u);
  Real sech2 = 1 / (ch * ch);
  return {-tanh(u) - u * sech2, -w * w * (1 + tn * tn) * sech2};
}

// Largest relative disagreement between the closed-form partials and
// centered differences with step h.
template <class Real>
Real partials_self_test(const Real& w, const Real& z, const Real& h = Real(1e-6)) {
  using std::abs;
  using std::max;
  auto F = [](const Real& ww, const Real& zz) {
    MapParams<Real> p;
    p.t = ww;
    return eval_f(p, zz);
  };
  auto an = eval_F_partials(w, z);
  Real fdw = (F(w + h, z) - F(w - h, z)) / (2 * h);
  Real fdz = (F(w, z + h) - F(w, z - h)) / (2 * h);
  return max(abs(an.dF_dw - fdw) / (1 + abs(an.dF_dw)), abs(an.dF_dz - fdz) / (1 + abs(an.dF_dz)));
}

// Schwarzian derivative of f_t by 5-point stencils. The step follows the
// local variation scale 1/(t sec^2 x) of t tan x.
template <class Real>
Real schwarzian(const MapParams<Real>& p, const Real& x) {
  using std::abs;
  using std::cosh;
  using std::min;
  auto red = detail::reduce(x);
  if (red.pole_distance <= p.pole_tolerance)
    throw Error(ErrorKind::PoleProximity, "Schwarzian at a pole");
  Real tn = detail::tan_reduced(red);
  Real u = p.t * tn;
  if (abs(u) > Real(20)) throw Error(ErrorKind::DegenerateDerivative, "f_t' vanishes to working precision");
  Real ch = cosh(u);
  if (1 / (ch * ch) < Real(1e-6)) throw Error(ErrorKind::DegenerateDerivative, "f_t' too small for a stable quotient");

  Real sec2 = 1 + tn * tn;
  Real h = Real(1e-3) * min(Real(1) + abs(x), Real(1) / (p.t * sec2));
  auto f = [&](const Real& y) { return eval_f(p, y); };
  Real fm2 = f(x - 2 * h), fm1 = f(x - h), f0 = f(x), fp1 = f(x + h), fp2 = f(x + 2 * h);
  Real d1 = (fm2 - 8 * fm1 + 8 * fp1 - fp2) / (12 * h);
  Real d2 = (-fm2 + 16 * fm1 - 30 * f0 + 16 * fp1 - fp2) / (12 * h * h);
  Real d3 = (-fm2 + 2 * fm1 - 2 * fp1 + fp2) / (2 * h * h * h);
  if (d1 == 0) throw Error(ErrorKind::DegenerateDerivative, "zero first derivative");
  Real q = d2 / d1;
  return d3 / d1 - Real(1.5) * q * q;
}

template <class Real>
struct OrbitResult {
  std::vector<Sided<Real>> points;
  bool aborted = false;  // stopped at an unsided pole hit
  int pole_hits = 0;     // directional pole rules applied
};

// Forward orbit, excluding the start point.
template <class Real>
OrbitResult<Real> orbit(const MapParams<Real>& p, Sided<Real> start, long k) {
  OrbitResult<Real> out;
  out.points.reserve(static_cast<size_t>(k > 0 ? k : 0));
  for (long i = 0; i < k; ++i) {
    bool hit = false;
    try {
      start = eval_f(p, start, &hit);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::UnsidedPole) throw;
      out.aborted = true;
      return out;
    }
    if (hit) ++out.pole_hits;
    out.points.push_back(start);
  }
  return out;
}

// tan z for complex z. Uses tan(x+iy) = (sin x cos x + i sinh y cosh y)/(cos^2 x + sinh^2 y),
// which has no cancellation near the real poles. Beyond |Im z| > sat the
// value is i*sign(Im z) exactly. Sets at_pole when the denominator vanishes.
template <class Real>
std::complex<Real> tan_complex(const std::complex<Real>& z, const Real& sat, bool& at_pole) {
  using std::abs;
  using std::cos;
  using std::cosh;
  using std::sin;
  using std::sinh;
  at_pole = false;
  const Real y = z.imag();
  if (abs(y) > sat) return {Real(0), y > 0 ? Real(1) : Real(-1)};
  auto red = detail::reduce(z.real());
  // near a pole use cos r = sin d, sin r = sign(r) cos d with d the pole distance
  const bool near = red.pole_distance < Real(0.75);
  Real c = near ? sin(red.pole_distance) : cos(red.r);
  Real s = near ? (red.r >= 0 ? cos(red.pole_distance) : -cos(red.pole_distance)) : sin(red.r);
  Real sh = sinh(y);
  Real den = c * c + sh * sh;
  if (!(den > 0)) {
    at_pole = true;
    return {Real(0), Real(0)};
  }
  return {s * c / den, sh * cosh(y) / den};
}

// One step z -> i t tan z with complex t (parameter-plane renderer).
template <class Real>
std::complex<Real> T_step(const std::complex<Real>& t, const std::complex<Real>& z, const Real& sat, bool& at_pole) {
  std::complex<Real> tz = tan_complex(z, sat, at_pole);
  return std::complex<Real>(Real(0), Real(1)) * t * tz;
}

template <class Real>
ComplexVal<Real> eval_T(const MapParams<Real>& p, const ComplexVal<Real>& z) {
  using std::abs;
  using std::hypot;
  if (z.at_infinity) throw Error(ErrorKind::OutOfDomain, "T_t is undefined at the essential singularity");
  if (abs(z.im) <= p.saturation_threshold) {
    Real d = pole_distance(z.re);
    if (hypot(d, z.im) <= p.pole_tolerance) throw Error(ErrorKind::PoleProximity, "T_t evaluated at a pole");
  }
  bool at_pole = false;
  auto w = T_step(std::complex<Real>(p.t, 0), std::complex<Real>(z.re, z.im), p.saturation_threshold, at_pole);
  if (at_pole) throw Error(ErrorKind::PoleProximity, "T_t evaluated at a pole");
  return {w.real(), w.imag(), false};
}

}  // namespace tancascade
