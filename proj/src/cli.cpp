#include "tancascade/cli.hpp"

#include "tancascade/render.hpp"
#include "tancascade/report.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <sstream>

namespace tancascade {

namespace {

constexpr int kUsage = 1;
constexpr int kFailure = 2;

struct Options {
  int precision_bits = 53;
  double tol = 1e-9;
  std::string seed_bracket;

  int depth = 5;
  bool as_json = false;
  bool as_csv = false;
  std::string t;
  int max_period = 1024;
  int level = 1;
  int n = 1;
  std::string t_star;
  std::string region = "-3.15,3.15,0,3.15";
  std::string out_path;
  int width = 0, height = 0;
  int threads = 0;
  double t_min = 0.0, t_max = 3.141592653589793;
  int marker_depth = 3;
};

// Depth at which the cascade needs more than double precision.
int required_bits(int depth) {
  if (depth <= 5) return 53;
  if (depth <= 7) return 64;
  return 113;
}

std::vector<double> split_doubles(const std::string& s) {
  std::vector<double> v;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) v.push_back(std::stod(item));
  return v;
}

template <class Real>
std::pair<Real, Real> parse_bracket(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("bracket must be lo,hi");
  return {parse_real<Real>(s.substr(0, comma)), parse_real<Real>(s.substr(comma + 1))};
}

template <class Real>
int run_cascade(const Options& o, std::ostream& out) {
  auto table = cascade_table<Real>(o.depth);
  if (o.as_csv) {
    out << cascade_csv(table);
  } else if (o.as_json) {
    out << cascade_json(table).dump(2) << '\n';
  } else {
    out << "precision " << precision_bits_of<Real>() << " bits\n";
    for (size_t i = 0; i < table.betas.size(); ++i)
      out << "n=" << table.betas[i].n << "  alpha=" << to_string(table.alphas[i].t)
          << "  beta=" << to_string(table.betas[i].t) << '\n';
    if (table.t_infinity_estimate) out << "t_inf ~ " << to_string(*table.t_infinity_estimate) << '\n';
    for (const auto& f : table.failures) out << "stopped: " << f << '\n';
  }
  return static_cast<int>(table.betas.size()) == o.depth ? 0 : kFailure;
}

template <class Real>
int run_cycle(const Options& o, std::ostream& out, std::ostream& err) {
  const Real t = parse_real<Real>(o.t);
  auto c = find_attracting_cycle<Real>(t, o.max_period, 5000, Real(o.tol));
  if (!c) {
    err << "no attracting cycle of period_T <= " << o.max_period << " found\n";
    return kFailure;
  }
  json j = cycle_json(*c);
  j["count"] = count_distinct_cycles<Real>(t, c->period_T);
  out << j.dump(2) << '\n';
  return 0;
}

template <class Real>
int run_renorm(const Options& o, std::ostream& out) {
  const Real t = parse_real<Real>(o.t);
  if (!is_renormalizable(t, o.level)) {
    out << json{{"n", o.level}, {"renormalizable", false}}.dump(2) << '\n';
    return 0;
  }
  out << renorm_json(renorm_level(t, o.level), true).dump(2) << '\n';
  return 0;
}

template <class Real>
int run_transversal(const Options& o, std::ostream& out, std::ostream& err) {
  Real beta;
  if (!o.seed_bracket.empty()) {
    auto [lo, hi] = parse_bracket<Real>(o.seed_bracket);
    beta = solve_beta(o.n, lo, hi).t;
  } else {
    auto table = cascade_table<Real>(o.n);
    if (static_cast<int>(table.betas.size()) < o.n) {
      for (const auto& f : table.failures) err << f << '\n';
      return kFailure;
    }
    beta = table.betas.back().t;
  }
  auto cert = certify(beta, o.n);
  out << transversal_json(cert).dump(2) << '\n';
  bool ok = cert.phi.positivity && cert.spectral_radius <= 1 + 1e-9L && cert.min_distance_to_one > 1e-6L;
  return ok ? 0 : kFailure;
}

template <class Real>
int run_attractor(const Options& o, std::ostream& out, std::ostream& err) {
  Real t_star;
  if (!o.t_star.empty()) {
    t_star = parse_real<Real>(o.t_star);
  } else {
    // Extrapolate from a depth-7 cascade in extended precision.
    auto table = cascade_table<long double>(7);
    if (!table.t_infinity_estimate) {
      err << "t_infinity estimate unavailable\n";
      return kFailure;
    }
    t_star = Real(*table.t_infinity_estimate);
  }
  auto sys = build_levels(t_star, o.depth);
  auto rep = verify_system(sys);
  if (o.as_csv)
    out << attractor_csv(sys);
  else
    out << attractor_json(sys, rep).dump(2) << '\n';
  for (const auto& f : rep.failures) err << f << '\n';
  return rep.ok() ? 0 : kFailure;
}

int run_plane(const Options& o, std::ostream& out) {
  auto cfg = RenderConfig::plane_defaults();
  auto r = split_doubles(o.region);
  if (r.size() != 4) throw std::invalid_argument("--region needs re_min,re_max,im_min,im_max");
  cfg.re_min = r[0];
  cfg.re_max = r[1];
  cfg.im_min = r[2];
  cfg.im_max = r[3];
  if (o.width > 0) cfg.width = o.width;
  if (o.height > 0) cfg.height = o.height;
  if (o.max_period != 1024) cfg.max_period_T = o.max_period;
  cfg.threads = o.threads;
  write_ppm(render_parameter_plane(cfg), o.out_path);
  out << "wrote " << o.out_path << " (" << cfg.width << "x" << cfg.height << ")\n";
  return 0;
}

int run_diagram(const Options& o, std::ostream& out) {
  auto cfg = RenderConfig::diagram_defaults();
  cfg.t_min = o.t_min;
  cfg.t_max = o.t_max;
  if (o.width > 0) cfg.width = o.width;
  if (o.height > 0) cfg.height = o.height;
  cfg.threads = o.threads;
  if (o.marker_depth > 0) {
    auto table = cascade_table<double>(std::min(o.marker_depth, 5));
    for (const auto& a : table.alphas) cfg.markers.push_back(a.t);
    for (const auto& b : table.betas) cfg.markers.push_back(b.t);
  }
  write_ppm(render_orbit_diagram(cfg), o.out_path);
  out << "wrote " << o.out_path << " (" << cfg.width << "x" << cfg.height << ")\n";
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Period-doubling cascade toolkit for the family f_t(x) = -t tanh(t tan x)", "tancascade"};
  app.require_subcommand(1);
  app.add_option("--precision-bits", o.precision_bits, "Mantissa bits: 53, 64 or 113 (rounded up)")
      ->check(CLI::Range(1, 113));
  app.add_option("--tol", o.tol, "Convergence tolerance for cycle detection")->check(CLI::PositiveNumber);
  app.add_option("--seed-bracket", o.seed_bracket, "lo,hi bracket for the virtual parameter (transversal)");

  auto* cascade = app.add_subcommand("cascade", "Tabulate alpha_n and beta_n");
  cascade->add_option("--depth", o.depth, "Number of levels")->required()->check(CLI::Range(1, 12));
  auto* fmt = cascade->add_option_group("format");
  fmt->add_flag("--json", o.as_json);
  fmt->add_flag("--csv", o.as_csv);
  fmt->require_option(0, 1);

  auto* cycle = app.add_subcommand("cycle", "Attracting cycle of the asymptotic value");
  cycle->add_option("--t", o.t, "Parameter in (0, pi]")->required();
  cycle->add_option("--max-period", o.max_period, "Largest period under T")->check(CLI::Range(1, 1 << 14));

  auto* renorm = app.add_subcommand("renorm", "Pre-poles and intervals of the level-n renormalization");
  renorm->add_option("--t", o.t, "Parameter in (0, pi]")->required();
  renorm->add_option("--level", o.level, "Level n >= 1")->required()->check(CLI::Range(1, 12));

  auto* transversal = app.add_subcommand("transversal", "Transversality certificate at beta_n");
  transversal->add_option("--n", o.n, "Level n >= 1")->required()->check(CLI::Range(1, 10));

  auto* attractor = app.add_subcommand("attractor", "Cantor system from the orbit of pi/2");
  attractor->add_option("--depth", o.depth, "Deepest level")->required()->check(CLI::Range(0, 10));
  attractor->add_option("--t-star", o.t_star, "Parameter (defaults to the extrapolated t_infinity)");
  attractor->add_flag("--csv", o.as_csv, "Interval table as CSV");

  auto* plane = app.add_subcommand("plane", "Period coloring of the complex parameter plane (PPM)");
  plane->add_option("--region", o.region, "re_min,re_max,im_min,im_max");
  plane->add_option("--out", o.out_path, "Output PPM path")->required();
  plane->add_option("--width", o.width)->check(CLI::PositiveNumber);
  plane->add_option("--height", o.height)->check(CLI::PositiveNumber);
  plane->add_option("--max-period", o.max_period, "Largest detected period under T")->check(CLI::Range(1, 1024));
  plane->add_option("--threads", o.threads, "Worker threads (0 = default)")->check(CLI::NonNegativeNumber);

  auto* diagram = app.add_subcommand("diagram", "Real orbit diagram (PPM)");
  diagram->add_option("--t-min", o.t_min)->check(CLI::NonNegativeNumber);
  diagram->add_option("--t-max", o.t_max)->check(CLI::PositiveNumber);
  diagram->add_option("--out", o.out_path, "Output PPM path")->required();
  diagram->add_option("--width", o.width)->check(CLI::PositiveNumber);
  diagram->add_option("--height", o.height)->check(CLI::PositiveNumber);
  diagram->add_option("--markers", o.marker_depth, "Mark alpha_n/beta_n up to this level (0 = none)")
      ->check(CLI::Range(0, 5));
  diagram->add_option("--threads", o.threads)->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : kUsage;
  }

  try {
    int bits = o.precision_bits;
    if (cascade->parsed() || transversal->parsed()) {
      int need = required_bits(cascade->parsed() ? o.depth : o.n);
      bits = std::max(bits, need);
    }
    const Precision prec = precision_from_bits(bits);
    out << std::setprecision(17);
    if (cascade->parsed()) return with_precision(prec, [&](auto tag) { return run_cascade<decltype(tag)>(o, out); });
    if (cycle->parsed()) return with_precision(prec, [&](auto tag) { return run_cycle<decltype(tag)>(o, out, err); });
    if (renorm->parsed()) return with_precision(prec, [&](auto tag) { return run_renorm<decltype(tag)>(o, out); });
    if (transversal->parsed())
      return with_precision(prec, [&](auto tag) { return run_transversal<decltype(tag)>(o, out, err); });
    if (attractor->parsed())
      return with_precision(prec, [&](auto tag) { return run_attractor<decltype(tag)>(o, out, err); });
    if (plane->parsed()) return run_plane(o, out);
    if (diagram->parsed()) return run_diagram(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::InvalidArgument ? kUsage : kFailure;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace tancascade
