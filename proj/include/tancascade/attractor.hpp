#pragma once

// Binary Cantor systems built from the pole orbit c_m = |f^m(pi/2+)| near t_infinity.

#include "tancascade/tanmap.hpp"

#include <string>
#include <vector>

namespace tancascade {

enum class IntervalKind { bridge, gap };

const char* to_string(IntervalKind k);

// Endpoints are sign * c_label. Bridges are closed, gaps open.
template <class Real>
struct LabeledInterval {
  int level = 0;
  int sign = 1;   // +1 plus side (0, pi), -1 minus side
  int index = 0;  // m for J_{nm}, k for G_{nk}
  int left_label = 0;
  int right_label = 0;
  Real left{};
  Real right{};
  IntervalKind kind = IntervalKind::bridge;

  Real length() const { return right - left; }
};

template <class Real>
struct CantorLevel {
  int n = 0;
  std::vector<LabeledInterval<Real>> bridges_plus, bridges_minus;  // indexed by m - 1
  std::vector<LabeledInterval<Real>> gaps_plus, gaps_minus;        // indexed by k - 1
};

template <class Real>
struct OrbitConstants {
  std::vector<Real> c;       // c[i] = c_i, c[0] unused
  std::vector<int> signs;    // sign of f^i(pi/2+)
};

template <class Real>
struct CantorSystem {
  Real t_star{};
  OrbitConstants<Real> orbit;
  std::vector<CantorLevel<Real>> levels;
};

struct LevelCheck {
  int n = 0;
  bool decomposition = true;
  bool disjoint = true;
  bool mapping = true;
  long double mapping_error = 0;
  bool shrink = true;
  long double max_length = 0;
  bool density = true;
  bool pole_membership = true;
  bool symmetry = true;
  bool imaginary_image = true;
};

struct VerificationReport {
  bool ordering = true;  // c2 < pi/2 < c4 < c3 < c1
  std::vector<LevelCheck> levels;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

template <class Real>
OrbitConstants<Real> orbit_constants(Real t_star, int M);

template <class Real>
CantorSystem<Real> build_levels(Real t_star, int depth);

template <class Real>
VerificationReport verify_system(const CantorSystem<Real>& system);

}  // namespace tancascade
