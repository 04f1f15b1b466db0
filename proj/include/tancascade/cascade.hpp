#pragma once

// The interleaved parameter sequences alpha_n (cycle doubling, multiplier ±1)
// and beta_n (cycle merging at virtual cycle parameters), and t_infinity.

#include "tancascade/cycles.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tancascade {

template <class Real>
struct BetaResult {
  Real t{};
  Real residual{};
};

template <class Real>
struct AlphaEntry {
  int n = 0;
  Real t{};
  Real fixed_point_residual{};
  Real multiplier_residual{};
  Real multiplier{};
  Real bracket_lo{}, bracket_hi{};
};

template <class Real>
struct BetaEntry {
  int n = 0;
  Real t{};
  Real residual{};
  Real bracket_lo{}, bracket_hi{};
};

template <class Real>
struct TInfinity {
  Real t_inf{};
  std::vector<Real> ratios;
  bool divergent = false;
};

template <class Real>
struct CascadeTable {
  std::vector<AlphaEntry<Real>> alphas;
  std::vector<BetaEntry<Real>> betas;
  std::optional<Real> t_infinity_estimate;
  std::vector<Real> ratio_sequence;
  bool extrapolation_divergent = false;
  std::vector<std::string> failures;  // one message per level that could not be resolved
};

// Phi_n(t) = f_t^{2^n - 1}(t) - (-1)^{n+1} pi/2. Throws OrbitHitPole if the
// orbit meets a pole before the last step.
template <class Real>
Real phi(int n, Real t);

// Phi_n and dPhi_n/dt along the same orbit.
template <class Real>
PowerValue<Real> phi_with_derivative(int n, Real t);

// Phi_n on a grid; NaN where the orbit meets a pole. OpenMP-parallel.
template <class Real>
std::vector<Real> phi_grid(int n, const std::vector<Real>& ts);

// Serial reference for phi_grid.
template <class Real>
std::vector<Real> phi_grid_serial(int n, const std::vector<Real>& ts);

// Root of Phi_n in [lo, hi] by bisection then Newton polish.
template <class Real>
BetaResult<Real> solve_beta(int n, Real lo, Real hi);

// Bracket of the sign change of Phi_n nearest to alpha_n on a 4096-point grid of (alpha_n, hi).
// Cells whose sign change is a jump across a pre-pole are skipped.
template <class Real>
std::pair<Real, Real> beta_bracket(int n, Real alpha_n, Real hi);

// alpha_n on (lo, hi) with lo = beta_{n-1}; `step` is the continuation step cap.
template <class Real>
ParabolicFix<Real> solve_alpha(int n, Real lo, Real hi, Real step = Real(1e-3));

template <class Real>
CascadeTable<Real> cascade_table(int depth);

// Geometric extrapolation from the last three betas.
template <class Real>
TInfinity<Real> estimate_t_infinity(const std::vector<Real>& betas);

// beta_n located through the renormalization tower: the parameter where the
// orbit point c_{2^{n-1}} meets the level-n pre-pole on its side.
template <class Real>
Real beta_from_prepole_crossing(int n, Real lo, Real hi);

}  // namespace tancascade
