#include "tancascade/transversal.hpp"

#include "tancascade/cascade.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tancascade {

template <class Real>
OrbitSetP<Real> build_orbit_P(Real t0, int n) {
  using std::abs;
  using std::min;
  if (n < 1 || n > 12) throw Error(ErrorKind::InvalidArgument, "level must lie in [1, 12]");
  MapParams<Real> p(t0);
  p.validate();
  OrbitSetP<Real> P;
  P.t0 = t0;
  P.n = n;
  P.m = 1 << n;
  const Real c0 = (n % 2 == 1 ? Real(1) : Real(-1)) * half_pi_v<Real>();
  P.points.reserve(static_cast<size_t>(P.m));
  P.points.push_back(c0);
  P.points.push_back(t0);
  for (int i = 1; i + 1 < P.m; ++i) P.points.push_back(eval_f(p, P.points.back()));
  P.closure_residual = abs(eval_f(p, P.points.back()) - c0);
  if (P.closure_residual > Real(1e-10))
    throw Error(ErrorKind::ClosureFailed, "orbit of t0 does not close on the pole (residual " +
                                              to_string(static_cast<long double>(P.closure_residual)) + ")");
  P.separation = std::numeric_limits<Real>::infinity();
  for (size_t i = 0; i < P.points.size(); ++i)
    for (size_t j = i + 1; j < P.points.size(); ++j) P.separation = min(P.separation, Real(abs(P.points[i] - P.points[j])));
  return P;
}

template <class Real>
TransferMatrix<Real> transfer_matrix(const OrbitSetP<Real>& P) {
  const int m = P.m;
  TransferMatrix<Real> A;
  A.dim = m - 1;
  A.entries.assign(static_cast<size_t>(A.dim) * A.dim, Real(0));
  const Real c1 = P.points[1];
  for (int i = 1; i <= m - 1; ++i) {
    auto d = eval_F_partials(c1, P.points[i]);
    if (d.dF_dz == 0) throw Error(ErrorKind::SingularPartial, "dF/dz vanishes on the orbit");
    A(i - 1, 0) += -d.dF_dw / d.dF_dz;
    if (i <= m - 2) A(i - 1, i) = 1 / d.dF_dz;
  }
  return A;
}

template <class Real>
std::vector<cplx> eigenvalues(const TransferMatrix<Real>& A) {
  using Mat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  Mat M(A.dim, A.dim);
  for (int i = 0; i < A.dim; ++i)
    for (int j = 0; j < A.dim; ++j) M(i, j) = static_cast<long double>(A(i, j));
  Eigen::EigenSolver<Mat> solver(M, false);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::NoConvergence, "eigen-decomposition failed");
  std::vector<cplx> out;
  for (int i = 0; i < A.dim; ++i) out.push_back(solver.eigenvalues()[i]);
  return out;
}

template <class Real>
long double spectral_radius(const TransferMatrix<Real>& A) {
  long double r = 0;
  for (const auto& l : eigenvalues(A)) r = std::max(r, std::abs(l));
  return r;
}

template <class Real>
std::vector<Real> poly_P_coefficients(const OrbitSetP<Real>& P) {
  std::vector<Real> coef{Real(1)};
  const Real c1 = P.points[1];
  Real running = 1;
  for (int j = 1; j <= P.m - 1; ++j) {
    auto d = eval_F_partials(c1, P.points[j]);
    if (d.dF_dz == 0) throw Error(ErrorKind::SingularPartial, "dF/dz vanishes on the orbit");
    running *= d.dF_dz;
    coef.push_back(d.dF_dw / running);
  }
  return coef;
}

template <class Real>
Real poly_P(const OrbitSetP<Real>& P, Real rho) {
  auto coef = poly_P_coefficients(P);
  Real v = 0;
  for (size_t k = coef.size(); k-- > 0;) v = v * rho + coef[k];
  return v;
}

template <class Real>
Real orbit_derivative(const OrbitSetP<Real>& P) {
  Real d = 1;
  for (int k = 1; k <= P.m - 1; ++k) d *= eval_F_partials(P.points[1], P.points[k]).dF_dz;
  return d;
}

template <class Real>
PhiPrime<Real> phi_prime(const OrbitSetP<Real>& P) {
  using std::abs;
  const Real t0 = P.t0;
  Real h = Real(1e-7) * (1 + abs(t0));
  for (int attempt = 0; attempt < 30; ++attempt, h /= 2) {
    try {
      Real fp = phi(P.n, Real(t0 + h)), fm = phi(P.n, Real(t0 - h)), f0 = phi(P.n, t0);
      Real fp2 = phi(P.n, Real(t0 + h / 2)), fm2 = phi(P.n, Real(t0 - h / 2));
      Real forward = (fp - f0) / h, backward = (f0 - fm) / h;
      Real central = (fp - fm) / (2 * h);
      // One-sided slopes disagreeing at leading order means the stencil crossed a pre-pole.
      if (abs(forward - backward) > Real(1e-2) * (abs(central) + 1)) continue;
      Real central_half = (fp2 - fm2) / h;
      PhiPrime<Real> out;
      out.numeric = (4 * central_half - central) / 3;
      Real od = orbit_derivative(P);
      out.via_identity = od * poly_P(P, Real(1));
      out.positivity = out.numeric / od > 0;
      out.step = h;
      return out;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::OrbitHitPole && e.kind() != ErrorKind::UnsidedPole) throw;
    }
  }
  throw Error(ErrorKind::BranchJump, "finite-difference stencil keeps straddling a pre-pole");
}

std::vector<cplx> polynomial_roots(const std::vector<long double>& coef_in) {
  std::vector<long double> coef = coef_in;
  while (!coef.empty() && coef.back() == 0) coef.pop_back();
  if (coef.size() < 2) return {};
  const int deg = static_cast<int>(coef.size()) - 1;
  const long double lead = coef.back();

  // Cauchy bound for the initial circle.
  long double bound = 0;
  for (int k = 0; k < deg; ++k) bound = std::max(bound, std::abs(coef[k] / lead));
  bound += 1;

  auto eval = [&](cplx z, cplx& dp) {
    cplx p = coef[deg];
    dp = 0;
    for (int k = deg - 1; k >= 0; --k) {
      dp = dp * z + p;
      p = p * z + coef[k];
    }
    return p;
  };

  std::vector<cplx> z(deg);
  for (int k = 0; k < deg; ++k) {
    long double ang = 2 * std::acos(-1.0L) * (k + 0.25L) / deg + 0.4L;
    z[k] = std::polar(bound * 0.5L, ang);
  }
  for (int it = 0; it < 1000; ++it) {
    long double worst = 0;
    for (int k = 0; k < deg; ++k) {
      cplx dp;
      cplx p = eval(z[k], dp);
      if (p == cplx(0)) continue;
      cplx ratio = p / dp;
      cplx s = 0;
      for (int j = 0; j < deg; ++j)
        if (j != k) s += 1.0L / (z[k] - z[j]);
      cplx w = ratio / (1.0L - ratio * s);
      z[k] -= w;
      worst = std::max(worst, std::abs(w) / (1 + std::abs(z[k])));
    }
    if (worst < 1e-18L) break;
  }
  for (auto& r : z) {
    for (int it = 0; it < 3; ++it) {
      cplx dp;
      cplx p = eval(r, dp);
      if (dp == cplx(0)) break;
      r -= p / dp;
    }
  }
  return z;
}

long double multiset_distance(std::vector<cplx> a, std::vector<cplx> b) {
  if (a.size() != b.size()) return std::numeric_limits<long double>::infinity();
  struct Pair {
    long double d;
    size_t i, j;
  };
  std::vector<Pair> pairs;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) pairs.push_back({std::abs(a[i] - b[j]), i, j});
  std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) { return x.d < y.d; });
  std::vector<bool> ua(a.size()), ub(b.size());
  long double worst = 0;
  size_t matched = 0;
  for (const auto& pr : pairs) {
    if (ua[pr.i] || ub[pr.j]) continue;
    ua[pr.i] = ub[pr.j] = true;
    worst = std::max(worst, pr.d);
    if (++matched == a.size()) break;
  }
  return worst;
}

template <class Real>
Certificate<Real> certify(Real t0, int n) {
  Certificate<Real> c;
  auto P = build_orbit_P(t0, n);
  auto A = transfer_matrix(P);
  c.n = n;
  c.t0 = t0;
  c.m = P.m;
  c.eigenvalues = eigenvalues(A);
  c.spectral_radius = 0;
  c.min_distance_to_one = std::numeric_limits<long double>::infinity();
  for (const auto& l : c.eigenvalues) {
    c.spectral_radius = std::max(c.spectral_radius, std::abs(l));
    c.min_distance_to_one = std::min(c.min_distance_to_one, std::abs(1.0L - l));
  }
  std::vector<cplx> conj;
  for (const auto& l : c.eigenvalues) conj.push_back(std::conj(l));
  c.conjugation_defect = multiset_distance(c.eigenvalues, conj);

  auto coef = poly_P_coefficients(P);
  std::vector<long double> cl;
  for (const auto& v : coef) cl.push_back(static_cast<long double>(v));
  for (const auto& r : polynomial_roots(cl)) c.root_reciprocals.push_back(1.0L / r);
  c.eigen_root_mismatch = multiset_distance(c.eigenvalues, c.root_reciprocals);

  c.P1 = poly_P(P, Real(1));
  c.orbit_derivative = orbit_derivative(P);
  c.phi = phi_prime(P);
  return c;
}

#define TANCASCADE_INSTANTIATE(R)                                               \
  template OrbitSetP<R> build_orbit_P<R>(R, int);                               \
  template TransferMatrix<R> transfer_matrix<R>(const OrbitSetP<R>&);           \
  template std::vector<cplx> eigenvalues<R>(const TransferMatrix<R>&);          \
  template long double spectral_radius<R>(const TransferMatrix<R>&);            \
  template std::vector<R> poly_P_coefficients<R>(const OrbitSetP<R>&);          \
  template R poly_P<R>(const OrbitSetP<R>&, R);                                 \
  template R orbit_derivative<R>(const OrbitSetP<R>&);                          \
  template PhiPrime<R> phi_prime<R>(const OrbitSetP<R>&);                       \
  template Certificate<R> certify<R>(R, int);

TANCASCADE_INSTANTIATE(double)
TANCASCADE_INSTANTIATE(long double)
TANCASCADE_INSTANTIATE(quad)

}  // namespace tancascade
