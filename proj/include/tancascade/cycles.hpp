#pragma once

// Real cycles of f_t, their multipliers, and parabolic parameters.

#include "tancascade/tanmap.hpp"

#include <optional>
#include <vector>

namespace tancascade {

enum class Classification { attracting, parabolic, repelling };

const char* to_string(Classification c);

template <class Real>
struct Cycle {
  int period_T = 0;               // period under T_t; 1 only for the fixed point 0
  std::vector<Real> real_points;  // f_t-cycle in orbit order, starting at its largest point
  Real multiplier{};              // (f^N)' along the cycle, N = period_f()
  Classification classification = Classification::repelling;
  Real residual{};                // |f^N(p) - p| at the first point

  int period_f() const { return period_T == 1 ? 1 : period_T / 2; }
};

template <class Real>
struct ParabolicFix {
  Real t_star{};
  Cycle<Real> cycle;
  int target_multiplier = 0;
  Real fixed_point_residual{};
  Real multiplier_residual{};
};

// f^N(x) together with (f^N)'(x). Throws UnsidedPole when the orbit lands on a pole.
template <class Real>
struct PowerValue {
  Real value;
  Real derivative;
};

template <class Real>
PowerValue<Real> power_map(const MapParams<Real>& p, Real x, long N);

template <class Real>
std::optional<Cycle<Real>> find_attracting_cycle(Real t, int max_period_T = 1024, int transient = 5000,
                                                 Real tol = Real(1e-9));

// Same search started from an arbitrary point instead of the asymptotic value t.
template <class Real>
std::optional<Cycle<Real>> find_attracting_cycle_from(Real t, Real start, int max_period_T = 1024,
                                                      int transient = 5000, Real tol = Real(1e-9));

template <class Real>
Cycle<Real> refine_cycle_newton(Real t, const std::vector<Real>& seed, int period_f);

template <class Real>
Real multiplier(Real t, const Cycle<Real>& cycle);

template <class Real>
Classification classify(Real multiplier, Real tol);

template <class Real>
ParabolicFix<Real> locate_parabolic(Real lo, Real hi, int period_f, int target, Real initial_step = Real(1e-3));

template <class Real>
int count_distinct_cycles(Real t, int period_T, int transient = 5000);

}  // namespace tancascade
