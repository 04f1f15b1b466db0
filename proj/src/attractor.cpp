#include "tancascade/attractor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

namespace tancascade {

const char* to_string(IntervalKind k) { return k == IntervalKind::bridge ? "bridge" : "gap"; }

template <class Real>
OrbitConstants<Real> orbit_constants(Real t_star, int M) {
  using std::abs;
  if (M < 1) throw Error(ErrorKind::InvalidArgument, "M must be positive");
  MapParams<Real> p(t_star);
  p.validate();
  auto o = orbit(p, Sided<Real>{half_pi_v<Real>(), Side::from_right}, M);
  if (o.aborted) throw Error(ErrorKind::UnsidedPole, "pole orbit breaks off");
  OrbitConstants<Real> out;
  out.c.assign(static_cast<size_t>(M) + 1, Real(0));
  out.signs.assign(static_cast<size_t>(M) + 1, 0);
  for (int i = 1; i <= M; ++i) {
    const Real& v = o.points[static_cast<size_t>(i - 1)].value;
    out.c[i] = abs(v);
    out.signs[i] = v < 0 ? -1 : 1;
  }
  return out;
}

namespace {

template <class Real>
LabeledInterval<Real> make(int level, int index, IntervalKind kind, int la, int lb, const std::vector<Real>& c) {
  LabeledInterval<Real> iv;
  iv.level = level;
  iv.sign = 1;
  iv.index = index;
  iv.kind = kind;
  iv.left_label = la;
  iv.right_label = lb;
  iv.left = c[la];
  iv.right = c[lb];
  return iv;
}

template <class Real>
LabeledInterval<Real> mirror(const LabeledInterval<Real>& iv) {
  LabeledInterval<Real> m = iv;
  m.sign = -1;
  m.left = -iv.right;
  m.right = -iv.left;
  m.left_label = iv.right_label;
  m.right_label = iv.left_label;
  return m;
}

}  // namespace

template <class Real>
CantorSystem<Real> build_levels(Real t_star, int depth) {
  if (depth < 0 || depth > 10) throw Error(ErrorKind::InvalidArgument, "depth must lie in [0, 10]");
  CantorSystem<Real> sys;
  sys.t_star = t_star;
  // One constant beyond 2^{depth+1} for the image of the deepest pole bridge.
  sys.orbit = orbit_constants(t_star, (1 << (depth + 1)) + 1);
  const auto& c = sys.orbit.c;

  if (!(c[2] < c[1])) throw Error(ErrorKind::OrderingViolated, "c2 >= c1");
  CantorLevel<Real> l0;
  l0.n = 0;
  l0.bridges_plus.push_back(make(0, 1, IntervalKind::bridge, 2, 1, c));
  sys.levels.push_back(l0);

  for (int n = 1; n <= depth; ++n) {
    const int half = 1 << (n - 1);
    const int full = 1 << n;
    CantorLevel<Real> lvl;
    lvl.n = n;
    lvl.bridges_plus.resize(static_cast<size_t>(full));
    auto& parent_level = sys.levels[static_cast<size_t>(n - 1)];
    parent_level.gaps_plus.resize(static_cast<size_t>(half));
    for (int k = 1; k <= half; ++k) {
      const auto& parent = parent_level.bridges_plus[static_cast<size_t>(k - 1)];
      const int outer1 = k, outer2 = half + k;
      const int inner1 = full + k, inner2 = full + half + k;
      int chain[4];
      if (parent.left_label == outer1) {
        chain[0] = outer1; chain[1] = inner1; chain[2] = inner2; chain[3] = outer2;
      } else {
        chain[0] = outer2; chain[1] = inner2; chain[2] = inner1; chain[3] = outer1;
      }
      for (int i = 0; i < 3; ++i) {
        if (!(c[chain[i]] < c[chain[i + 1]]))
          throw Error(ErrorKind::OrderingViolated,
                      "level " + std::to_string(n) + ": c_" + std::to_string(chain[i]) + " !< c_" +
                          std::to_string(chain[i + 1]));
      }
      auto left_child = make(n, chain[0] == outer1 ? k : half + k, IntervalKind::bridge, chain[0], chain[1], c);
      auto right_child = make(n, chain[3] == outer1 ? k : half + k, IntervalKind::bridge, chain[2], chain[3], c);
      lvl.bridges_plus[static_cast<size_t>(left_child.index - 1)] = left_child;
      lvl.bridges_plus[static_cast<size_t>(right_child.index - 1)] = right_child;
      parent_level.gaps_plus[static_cast<size_t>(k - 1)] = make(n - 1, k, IntervalKind::gap, chain[1], chain[2], c);
    }
    sys.levels.push_back(std::move(lvl));
  }
  for (auto& lvl : sys.levels) {
    lvl.bridges_minus.clear();
    lvl.gaps_minus.clear();
    for (const auto& b : lvl.bridges_plus) lvl.bridges_minus.push_back(mirror(b));
    for (const auto& g : lvl.gaps_plus) lvl.gaps_minus.push_back(mirror(g));
  }
  return sys;
}

namespace {

template <class Real>
bool same_end(const Real& v1, int l1, const Real& v2, int l2) {
  using std::abs;
  return l1 == l2 && abs(v1 - v2) <= Real(1e-9);
}

template <class Real>
std::set<int> labels(const LabeledInterval<Real>& iv) {
  return {iv.left_label, iv.right_label};
}

}  // namespace

template <class Real>
VerificationReport verify_system(const CantorSystem<Real>& sys) {
  using std::abs;
  VerificationReport rep;
  const auto& c = sys.orbit.c;
  const Real h = half_pi_v<Real>();
  MapParams<Real> p(sys.t_star);
  auto fail = [&](const std::string& msg) { rep.failures.push_back(msg); };

  rep.ordering = c.size() > 4 && c[2] < h && h < c[4] && c[4] < c[3] && c[3] < c[1];
  if (!rep.ordering) fail("ordering c2 < pi/2 < c4 < c3 < c1 violated");

  long double prev_max = std::numeric_limits<long double>::infinity();
  const int depth = static_cast<int>(sys.levels.size()) - 1;
  for (int n = 0; n <= depth; ++n) {
    const auto& lvl = sys.levels[static_cast<size_t>(n)];
    LevelCheck chk;
    chk.n = n;
    const std::string tag = "level " + std::to_string(n) + ": ";

    // (1) parent = left child ∪ gap ∪ right child at shared endpoints
    if (n >= 1) {
      const auto& up = sys.levels[static_cast<size_t>(n - 1)];
      const int half = 1 << (n - 1);
      for (int k = 1; k <= half; ++k) {
        const auto& parent = up.bridges_plus[static_cast<size_t>(k - 1)];
        const auto& gap = up.gaps_plus[static_cast<size_t>(k - 1)];
        const auto& a = lvl.bridges_plus[static_cast<size_t>(k - 1)];
        const auto& b = lvl.bridges_plus[static_cast<size_t>(half + k - 1)];
        const auto& L = a.left < b.left ? a : b;
        const auto& R = a.left < b.left ? b : a;
        bool ok = same_end(L.left, L.left_label, parent.left, parent.left_label) &&
                  same_end(L.right, L.right_label, gap.left, gap.left_label) &&
                  same_end(gap.right, gap.right_label, R.left, R.left_label) &&
                  same_end(R.right, R.right_label, parent.right, parent.right_label) && gap.left < gap.right;
        if (!ok) {
          chk.decomposition = false;
          fail(tag + "decomposition of J_" + std::to_string(n - 1) + "," + std::to_string(k) + " fails");
        }
      }
    }

    // (2) pairwise disjoint bridges, each on its own side of 0
    for (int side = 0; side < 2; ++side) {
      auto bs = side == 0 ? lvl.bridges_plus : lvl.bridges_minus;
      std::sort(bs.begin(), bs.end(), [](const auto& x, const auto& y) { return x.left < y.left; });
      for (size_t i = 0; i < bs.size(); ++i) {
        bool inside = side == 0 ? (bs[i].left > 0 && bs[i].right < pi_v<Real>())
                                : (bs[i].right < 0 && bs[i].left > -pi_v<Real>());
        if (!inside || !(bs[i].left < bs[i].right)) chk.disjoint = false;
        if (i + 1 < bs.size() && !(bs[i].right < bs[i + 1].left)) chk.disjoint = false;
      }
    }
    if (!chk.disjoint) fail(tag + "bridges overlap");

    // (3) endpoint images land on the target bridges
    const int full = 1 << n;
    for (int side = 0; side < 2; ++side) {
      const auto& bs = side == 0 ? lvl.bridges_plus : lvl.bridges_minus;
      const int sigma = side == 0 ? 1 : -1;
      for (int m = 1; m <= full; ++m) {
        const auto& J = bs[static_cast<size_t>(m - 1)];
        const Real pole = Real(sigma) * h;
        auto image_error = [&](const Real& x, int label, int expect_sign) {
          Real fx = eval_f(p, x);
          return static_cast<long double>(abs(fx - Real(expect_sign) * c[label + 1]));
        };
        if (m < full) {
          if (J.left < pole && pole < J.right) {
            chk.mapping = false;
            fail(tag + "bridge " + std::to_string(m) + " contains a pole");
            continue;
          }
          Real mid = (J.left + J.right) / 2;
          int tau = eval_f(p, mid) < 0 ? -1 : 1;
          if (m % 2 == 1 && tau != sigma) {
            chk.mapping = false;
            fail(tag + "odd bridge " + std::to_string(m) + " changes side under f");
          }
          const auto& target = (tau == 1 ? lvl.bridges_plus : lvl.bridges_minus)[static_cast<size_t>(m)];
          std::set<int> want{J.left_label + 1, J.right_label + 1};
          if (labels(target) != want) {
            chk.mapping = false;
            fail(tag + "bridge " + std::to_string(m) + " image labels differ from J_" + std::to_string(m + 1));
          }
          long double e = std::max(image_error(J.left, J.left_label, tau), image_error(J.right, J.right_label, tau));
          chk.mapping_error = std::max(chk.mapping_error, e);
        } else {
          if (!(J.left < pole && pole < J.right)) {
            chk.mapping = false;
            fail(tag + "pole bridge does not contain the pole");
            continue;
          }
          // Left half maps to the minus side ending at -c1, right half to the plus side ending at c1.
          int la = J.left_label + 1, lb = J.right_label + 1;
          bool forms = (la == full + 1 || la == 2 * full + 1) && (lb == full + 1 || lb == 2 * full + 1) && la != lb;
          if (!forms) {
            chk.mapping = false;
            fail(tag + "pole bridge halves do not map onto J_{n,1} and J_{n+1,1}");
          }
          auto check_target = [&](int lab, int tsign) {
            int tl = lab == full + 1 ? n : n + 1;
            if (tl > depth) return;
            const auto& tl_b = tsign == 1 ? sys.levels[static_cast<size_t>(tl)].bridges_plus
                                          : sys.levels[static_cast<size_t>(tl)].bridges_minus;
            if (labels(tl_b[0]) != std::set<int>{1, lab}) {
              chk.mapping = false;
              fail(tag + "pole bridge half image is not J_{" + std::to_string(tl) + ",1}");
            }
          };
          check_target(la, -1);
          check_target(lb, 1);
          long double e = std::max(image_error(J.left, J.left_label, -1), image_error(J.right, J.right_label, 1));
          chk.mapping_error = std::max(chk.mapping_error, e);
        }
      }
    }
    if (chk.mapping_error > 1e-9L) {
      chk.mapping = false;
      fail(tag + "endpoint images miss the target endpoints");
    }

    // (4) shrinking bridges
    for (const auto& b : lvl.bridges_plus) chk.max_length = std::max(chk.max_length, static_cast<long double>(b.length()));
    if (!(chk.max_length < prev_max)) {
      chk.shrink = false;
      fail(tag + "max bridge length does not decrease");
    }
    prev_max = chk.max_length;

    // (5) every bridge meets the orbit up to index 2^{n+1}
    const int limit = std::min<int>(1 << (n + 1), static_cast<int>(c.size()) - 1);
    for (const auto& b : lvl.bridges_plus) {
      bool hit = false;
      for (int i = 1; i <= limit && !hit; ++i) hit = b.left <= c[i] && c[i] <= b.right;
      if (!hit) chk.density = false;
    }
    if (!chk.density) fail(tag + "a bridge contains no early orbit point");

    chk.pole_membership = std::any_of(lvl.bridges_plus.begin(), lvl.bridges_plus.end(),
                                      [&](const auto& b) { return b.left < h && h < b.right; });
    if (!chk.pole_membership) fail(tag + "pi/2 is not in a bridge");

    for (size_t i = 0; i < lvl.bridges_plus.size(); ++i) {
      const auto& a = lvl.bridges_plus[i];
      const auto& b = lvl.bridges_minus[i];
      if (!(b.left == -a.right && b.right == -a.left)) chk.symmetry = false;
    }
    for (size_t i = 0; i < lvl.gaps_plus.size(); ++i) {
      const auto& a = lvl.gaps_plus[i];
      const auto& b = lvl.gaps_minus[i];
      if (!(b.left == -a.right && b.right == -a.left)) chk.symmetry = false;
    }
    if (!chk.symmetry) fail(tag + "minus system is not the mirror image");

    MapParams<double> pd(static_cast<double>(sys.t_star));
    for (const auto& b : lvl.bridges_plus) {
      for (Real x : {b.left, b.right}) {
        auto z = eval_T(pd, ComplexVal<double>{static_cast<double>(x), 0.0, false});
        if (std::abs(z.re) >= 1e-12) chk.imaginary_image = false;
      }
    }
    if (!chk.imaginary_image) fail(tag + "T image of an endpoint leaves the imaginary axis");

    rep.levels.push_back(chk);
  }
  return rep;
}

#define TANCASCADE_INSTANTIATE(R)                                          \
  template OrbitConstants<R> orbit_constants<R>(R, int);                   \
  template CantorSystem<R> build_levels<R>(R, int);                        \
  template VerificationReport verify_system<R>(const CantorSystem<R>&);

TANCASCADE_INSTANTIATE(double)
TANCASCADE_INSTANTIATE(long double)
TANCASCADE_INSTANTIATE(quad)

}  // namespace tancascade
