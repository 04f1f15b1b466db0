#include "tancascade/report.hpp"

#include <sstream>

namespace tancascade {

template <class Real>
json real_json(const Real& x) {
  if constexpr (std::is_same_v<Real, double>) {
    return x;
  } else {
    return to_string(x);
  }
}

namespace {

template <class Real>
json reals(const std::vector<Real>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(real_json(x));
  return a;
}

json complex_list(const std::vector<cplx>& v) {
  json a = json::array();
  for (const auto& z : v) a.push_back(json::array({static_cast<double>(z.real()), static_cast<double>(z.imag())}));
  return a;
}

template <class Real>
std::string csv_real(const Real& x) {
  return to_string(x);
}

}  // namespace

template <class Real>
json cascade_json(const CascadeTable<Real>& table) {
  json j;
  j["precision_bits"] = precision_bits_of<Real>();
  j["depth"] = table.betas.size();
  json alphas = json::array();
  for (const auto& a : table.alphas) {
    alphas.push_back({{"n", a.n},
                      {"t", real_json(a.t)},
                      {"multiplier", real_json(a.multiplier)},
                      {"fixed_point_residual", real_json(a.fixed_point_residual)},
                      {"multiplier_residual", real_json(a.multiplier_residual)},
                      {"bracket", {real_json(a.bracket_lo), real_json(a.bracket_hi)}}});
  }
  json betas = json::array();
  for (const auto& b : table.betas) {
    betas.push_back({{"n", b.n},
                     {"t", real_json(b.t)},
                     {"residual", real_json(b.residual)},
                     {"bracket", {real_json(b.bracket_lo), real_json(b.bracket_hi)}}});
  }
  j["alphas"] = alphas;
  j["betas"] = betas;
  j["t_infinity"] = table.t_infinity_estimate ? real_json(*table.t_infinity_estimate) : json(nullptr);
  j["ratios"] = reals(table.ratio_sequence);
  j["extrapolation_divergent"] = table.extrapolation_divergent;
  j["failures"] = table.failures;
  return j;
}

template <class Real>
std::string cascade_csv(const CascadeTable<Real>& table) {
  using std::max;
  std::ostringstream out;
  out << "n,alpha,beta,residual_alpha,residual_beta\n";
  for (size_t i = 0; i < table.betas.size(); ++i) {
    const auto& a = table.alphas[i];
    const auto& b = table.betas[i];
    Real ra = max(a.fixed_point_residual, a.multiplier_residual);
    out << b.n << ',' << csv_real(a.t) << ',' << csv_real(b.t) << ',' << csv_real(ra) << ',' << csv_real(b.residual)
        << '\n';
  }
  return out.str();
}

template <class Real>
json cycle_json(const Cycle<Real>& cycle) {
  return {{"period_T", cycle.period_T},
          {"points", reals(cycle.real_points)},
          {"multiplier", real_json(cycle.multiplier)},
          {"classification", to_string(cycle.classification)},
          {"residual", real_json(cycle.residual)}};
}

template <class Real>
json renorm_json(const RenormLevel<Real>& level, bool renormalizable) {
  json iv = json::array();
  for (const auto& i : level.intervals) iv.push_back({real_json(i.lo), real_json(i.hi)});
  return {{"n", level.n},
          {"renormalizable", renormalizable},
          {"a_n", real_json(level.a_n)},
          {"b_n", real_json(level.b_n)},
          {"intervals", iv},
          {"c1", real_json(level.c1)},
          {"c2", real_json(level.c2)}};
}

template <class Real>
json transversal_json(const Certificate<Real>& cert) {
  return {{"n", cert.n},
          {"t0", real_json(cert.t0)},
          {"m", cert.m},
          {"spectral_radius", static_cast<double>(cert.spectral_radius)},
          {"eigenvalues", complex_list(cert.eigenvalues)},
          {"P1", real_json(cert.P1)},
          {"phi_prime_numeric", real_json(cert.phi.numeric)},
          {"phi_prime_identity", real_json(cert.phi.via_identity)},
          {"positivity", cert.phi.positivity},
          {"min_distance_to_one", static_cast<double>(cert.min_distance_to_one)},
          {"eigen_root_mismatch", static_cast<double>(cert.eigen_root_mismatch)}};
}

namespace {

template <class Real>
void append_intervals(json& out, const std::vector<LabeledInterval<Real>>& list) {
  for (const auto& iv : list) {
    out.push_back({{"level", iv.level},
                   {"side", iv.sign > 0 ? "plus" : "minus"},
                   {"index", iv.index},
                   {"left", real_json(iv.left)},
                   {"right", real_json(iv.right)},
                   {"left_label", iv.left_label},
                   {"right_label", iv.right_label},
                   {"kind", to_string(iv.kind)}});
  }
}

template <class Real>
void append_rows(std::ostringstream& out, const std::vector<LabeledInterval<Real>>& list) {
  for (const auto& iv : list)
    out << iv.level << ',' << (iv.sign > 0 ? "plus" : "minus") << ',' << iv.index << ',' << to_string(iv.left) << ','
        << to_string(iv.right) << ',' << to_string(iv.kind) << '\n';
}

}  // namespace

template <class Real>
json attractor_json(const CantorSystem<Real>& system, const VerificationReport& report) {
  json intervals = json::array();
  for (const auto& lvl : system.levels) {
    append_intervals(intervals, lvl.bridges_plus);
    append_intervals(intervals, lvl.bridges_minus);
    append_intervals(intervals, lvl.gaps_plus);
    append_intervals(intervals, lvl.gaps_minus);
  }
  json checks = json::array();
  for (const auto& c : report.levels) {
    checks.push_back({{"n", c.n},
                      {"decomposition", c.decomposition},
                      {"disjoint", c.disjoint},
                      {"mapping", c.mapping},
                      {"mapping_error", static_cast<double>(c.mapping_error)},
                      {"shrink", c.shrink},
                      {"max_length", static_cast<double>(c.max_length)},
                      {"density", c.density},
                      {"pole_membership", c.pole_membership},
                      {"symmetry", c.symmetry},
                      {"imaginary_image", c.imaginary_image}});
  }
  std::vector<Real> c(system.orbit.c.begin() + 1, system.orbit.c.end());
  return {{"t_star", real_json(system.t_star)},
          {"depth", static_cast<int>(system.levels.size()) - 1},
          {"orbit_constants", reals(c)},
          {"ordering", report.ordering},
          {"ok", report.ok()},
          {"failures", report.failures},
          {"checks", checks},
          {"intervals", intervals}};
}

template <class Real>
std::string attractor_csv(const CantorSystem<Real>& system) {
  std::ostringstream out;
  out << "level,side,index,left,right,kind\n";
  for (const auto& lvl : system.levels) {
    append_rows(out, lvl.bridges_plus);
    append_rows(out, lvl.bridges_minus);
    append_rows(out, lvl.gaps_plus);
    append_rows(out, lvl.gaps_minus);
  }
  return out.str();
}

#define TANCASCADE_INSTANTIATE(R)                                                     \
  template json real_json<R>(const R&);                                               \
  template json cascade_json<R>(const CascadeTable<R>&);                              \
  template std::string cascade_csv<R>(const CascadeTable<R>&);                        \
  template json cycle_json<R>(const Cycle<R>&);                                       \
  template json renorm_json<R>(const RenormLevel<R>&, bool);                          \
  template json transversal_json<R>(const Certificate<R>&);                           \
  template json attractor_json<R>(const CantorSystem<R>&, const VerificationReport&); \
  template std::string attractor_csv<R>(const CantorSystem<R>&);

TANCASCADE_INSTANTIATE(double)
TANCASCADE_INSTANTIATE(long double)
TANCASCADE_INSTANTIATE(quad)

}  // namespace tancascade
