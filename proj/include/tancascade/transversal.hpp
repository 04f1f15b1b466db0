#pragma once

// Transfer operator at a virtual cycle parameter, its spectrum, the
// polynomial P(rho), and the transversality identity Phi'(t0) = (F^{m-1})'(c1) P(1).

#include "tancascade/tanmap.hpp"

#include <complex>
#include <vector>

namespace tancascade {

using cplx = std::complex<long double>;

template <class Real>
struct OrbitSetP {
  Real t0{};
  int n = 0;
  int m = 0;
  std::vector<Real> points;  // c_0 = ±pi/2, c_1 = t0, c_{i+1} = f(c_i)
  Real separation{};
  Real closure_residual{};
};

template <class Real>
struct TransferMatrix {
  int dim = 0;
  std::vector<Real> entries;  // row-major dim x dim

  Real operator()(int i, int j) const { return entries[static_cast<size_t>(i) * dim + j]; }
  Real& operator()(int i, int j) { return entries[static_cast<size_t>(i) * dim + j]; }
};

template <class Real>
struct PhiPrime {
  Real numeric{};
  Real via_identity{};
  bool positivity = false;
  Real step{};
};

template <class Real>
struct Certificate {
  int n = 0;
  Real t0{};
  int m = 0;
  long double spectral_radius = 0;
  std::vector<cplx> eigenvalues;
  std::vector<cplx> root_reciprocals;
  long double eigen_root_mismatch = 0;  // max distance after matching
  long double conjugation_defect = 0;
  long double min_distance_to_one = 0;
  Real P1{};
  Real orbit_derivative{};  // (F^{m-1})'(c1)
  PhiPrime<Real> phi;
};

template <class Real>
OrbitSetP<Real> build_orbit_P(Real t0, int n);

template <class Real>
TransferMatrix<Real> transfer_matrix(const OrbitSetP<Real>& P);

// Eigenvalues through Eigen's real EigenSolver in long double.
template <class Real>
std::vector<cplx> eigenvalues(const TransferMatrix<Real>& A);

template <class Real>
long double spectral_radius(const TransferMatrix<Real>& A);

// Coefficients of P in increasing degree: P(rho) = sum_k coef[k] rho^k.
template <class Real>
std::vector<Real> poly_P_coefficients(const OrbitSetP<Real>& P);

template <class Real>
Real poly_P(const OrbitSetP<Real>& P, Real rho);

// (F^{m-1})'(c_1) as a running product of dF/dz along the orbit.
template <class Real>
Real orbit_derivative(const OrbitSetP<Real>& P);

template <class Real>
PhiPrime<Real> phi_prime(const OrbitSetP<Real>& P);

// Roots of sum_k coef[k] x^k by Aberth-Ehrlich iteration.
std::vector<cplx> polynomial_roots(const std::vector<long double>& coef);

// Largest distance between two multisets after greedy nearest matching.
long double multiset_distance(std::vector<cplx> a, std::vector<cplx> b);

template <class Real>
Certificate<Real> certify(Real t0, int n);

}  // namespace tancascade
