#pragma once

// Renormalization tower: pre-poles a_n, b_n, the interval systems I_n, the
// restricted iterates R^n = f^{2^n}, and the orbit constants c_m.

#include "tancascade/tanmap.hpp"

#include <array>

namespace tancascade {

template <class Real>
struct Interval {
  Real lo{};
  Real hi{};
  bool contains(const Real& x) const { return lo <= x && x <= hi; }
};

template <class Real>
struct PrepolePair {
  Real a{};
  Real b{};
  Real residual_a{};
  Real residual_b{};
};

template <class Real>
struct RenormLevel {
  int n = 0;
  Real a_n{};
  Real b_n{};
  // [-b_n, -pi/2], [-pi/2, -a_n], [a_n, pi/2], [pi/2, b_n]
  std::array<Interval<Real>, 4> intervals{};
  Real c1{};  // c_1(R^n) = c_{2^n}(f)
  Real c2{};  // c_2(R^n) = c_{2^{n+1}}(f)
};

template <class Real>
struct CValue {
  Real value{};
  bool hit_pole = false;  // the orbit went through a pole (directional limit used)
};

// a_n solves R^{n-1}(x) = ±pi/2 on (a_{n-1}, pi/2) and b_n on (pi/2, b_{n-1}),
// with a_0 = 0, b_0 = pi and R^0 = f. Each is located independently.
template <class Real>
PrepolePair<Real> prepoles(Real t, int n);

template <class Real>
RenormLevel<Real> renorm_level(Real t, int n);

// f^{2^n}(x) for x in one of the four level-n intervals.
template <class Real>
Real renorm_eval(Real t, int n, const Sided<Real>& x);

// |f^{2^n m}(pi/2 from the right)|
template <class Real>
CValue<Real> c_value(Real t, int n, long m);

// R^n is defined, i.e. f^{2^n} has a unique pre-image of each pole in each
// interval of I_n: prepoles(t, k) succeeds for k = 1..n+1.
template <class Real>
bool is_renormalizable(Real t, int n);

}  // namespace tancascade
