#include "tancascade/render.hpp"

#include "tancascade/errors.hpp"
#include "tancascade/tanmap.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

namespace tancascade {

RenderConfig RenderConfig::plane_defaults() { return RenderConfig{}; }

RenderConfig RenderConfig::diagram_defaults() {
  RenderConfig c;
  c.width = 800;
  c.height = 600;
  c.t_min = 0.0;
  c.t_max = pi_v<double>();
  return c;
}

void RenderConfig::validate() const {
  if (width <= 0 || height <= 0) throw Error(ErrorKind::InvalidArgument, "raster dimensions must be positive");
  if (max_period_T < 1 || max_period_T > 1024) throw Error(ErrorKind::InvalidArgument, "max_period_T must lie in [1, 1024]");
  if (!(re_min < re_max) || !(im_min < im_max)) throw Error(ErrorKind::InvalidArgument, "empty plane region");
  if (!(t_min >= 0) || !(t_min < t_max) || t_max > pi_v<double>() + 1e-12)
    throw Error(ErrorKind::InvalidArgument, "t-interval must lie in (0, pi]");
  if (transient < 0 || samples < 1 || max_iter < 1) throw Error(ErrorKind::InvalidArgument, "iteration counts must be positive");
  if (!(tol > 0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
  if (saturation < 20) throw Error(ErrorKind::InvalidArgument, "saturation threshold must be >= 20");
}

Raster::Raster(int w, int h, Rgb fill) : width(w), height(h), pixels(static_cast<size_t>(w) * h * 3) {
  for (size_t i = 0; i < pixels.size(); i += 3) {
    pixels[i] = fill.r;
    pixels[i + 1] = fill.g;
    pixels[i + 2] = fill.b;
  }
}

Rgb Raster::at(int x, int y) const {
  size_t i = (static_cast<size_t>(y) * width + x) * 3;
  return {pixels[i], pixels[i + 1], pixels[i + 2]};
}

void Raster::set(int x, int y, Rgb c) {
  size_t i = (static_cast<size_t>(y) * width + x) * 3;
  pixels[i] = c.r;
  pixels[i + 1] = c.g;
  pixels[i + 2] = c.b;
}

Rgb period_color(int period_T) {
  if (period_T <= 0) return kReserved;
  double hue = std::fmod(60.0 + 137.5 * std::log2(static_cast<double>(period_T)), 360.0);
  const double s = 0.85, v = 0.95;
  double c = v * s;
  double hp = hue / 60.0;
  double x = c * (1 - std::fabs(std::fmod(hp, 2.0) - 1));
  double r = 0, g = 0, b = 0;
  switch (static_cast<int>(hp)) {
    case 0: r = c; g = x; break;
    case 1: r = x; g = c; break;
    case 2: g = c; b = x; break;
    case 3: g = x; b = c; break;
    case 4: r = x; b = c; break;
    default: r = c; b = x; break;
  }
  double m = v - c;
  auto q = [m](double u) { return static_cast<std::uint8_t>(std::lround(255 * (u + m))); };
  return {q(r), q(g), q(b)};
}

int detect_period(std::complex<double> t, const RenderConfig& cfg) {
  using C = std::complex<double>;
  C z = t;
  bool at_pole = false;
  int k = 0;
  std::vector<C> seg;
  auto step = [&](C w) { return T_step(t, w, cfg.saturation, at_pole); };
  auto close = [&](C a, C b) { return std::abs(a - b) <= cfg.tol * (1 + std::abs(b)); };
  // Near-return search at doubling checkpoints; fast-converging pixels exit early.
  for (int checkpoint = 32; k < cfg.max_iter; checkpoint = std::min(2 * checkpoint, cfg.max_iter)) {
    while (k < checkpoint) {
      z = step(z);
      if (at_pole || !std::isfinite(z.real()) || !std::isfinite(z.imag())) return 0;
      ++k;
    }
    seg.assign(1, z);
    for (int p = 1; p <= cfg.max_period_T; ++p) {
      seg.push_back(step(seg.back()));
      if (at_pole) return 0;
      if (close(seg.back(), seg[0])) {
        // A slowly rotating approach (multiplier near the unit circle) returns closer
        // after a multiple of the period than after the period itself.
        int q = p;
        for (int d = 1; d < p; ++d) {
          if (p % d == 0 && std::abs(seg[d] - seg[0]) <= 1e-3 * (1 + std::abs(seg[0]))) {
            q = d;
            break;
          }
        }
        C v = seg.back();
        for (int j = 0; j < p; ++j) v = step(v);
        if (!at_pole && close(v, seg.back())) return q;
        break;
      }
    }
    if (checkpoint == cfg.max_iter) break;
  }
  return 0;
}

double pixel_re(const RenderConfig& cfg, int x) { return cfg.re_min + (x + 0.5) * (cfg.re_max - cfg.re_min) / cfg.width; }
double pixel_im(const RenderConfig& cfg, int y) {
  return cfg.im_max - (y + 0.5) * (cfg.im_max - cfg.im_min) / cfg.height;
}

namespace {

int worker_count(const RenderConfig& cfg) { return cfg.threads > 0 ? cfg.threads : omp_get_max_threads(); }

Raster colorize(const RenderConfig& cfg, const std::vector<int>& periods) {
  Raster r(cfg.width, cfg.height);
  for (int y = 0; y < cfg.height; ++y)
    for (int x = 0; x < cfg.width; ++x) r.set(x, y, period_color(periods[static_cast<size_t>(y) * cfg.width + x]));
  return r;
}

}  // namespace

std::vector<int> plane_periods(const RenderConfig& cfg) {
  cfg.validate();
  std::vector<int> out(static_cast<size_t>(cfg.width) * cfg.height);
  const long total = static_cast<long>(out.size());
#pragma omp parallel for schedule(dynamic, 64) num_threads(worker_count(cfg))
  for (long i = 0; i < total; ++i) {
    int x = static_cast<int>(i % cfg.width), y = static_cast<int>(i / cfg.width);
    out[i] = detect_period({pixel_re(cfg, x), pixel_im(cfg, y)}, cfg);
  }
  return out;
}

std::vector<int> plane_periods_serial(const RenderConfig& cfg) {
  cfg.validate();
  std::vector<int> out(static_cast<size_t>(cfg.width) * cfg.height);
  for (int y = 0; y < cfg.height; ++y)
    for (int x = 0; x < cfg.width; ++x)
      out[static_cast<size_t>(y) * cfg.width + x] = detect_period({pixel_re(cfg, x), pixel_im(cfg, y)}, cfg);
  return out;
}

Raster render_parameter_plane(const RenderConfig& cfg) { return colorize(cfg, plane_periods(cfg)); }
Raster render_parameter_plane_serial(const RenderConfig& cfg) { return colorize(cfg, plane_periods_serial(cfg)); }

std::vector<int> row_transitions(const std::vector<int>& periods, int width, int row) {
  std::vector<int> out;
  const size_t base = static_cast<size_t>(row) * width;
  for (int x = 1; x < width; ++x)
    if (periods[base + x] != periods[base + x - 1]) out.push_back(x);
  return out;
}

namespace {

std::vector<double> distinct(std::vector<double> v, double tol) {
  std::sort(v.begin(), v.end());
  std::vector<double> out;
  for (double x : v)
    if (out.empty() || x - out.back() > tol) out.push_back(x);
  return out;
}

std::vector<double> limit_orbit(double t, double start, int transient, int samples) {
  MapParams<double> p(t);
  double x = start;
  std::vector<double> out;
  for (int k = 0; k < transient + samples; ++k) {
    if (pole_distance(x) <= p.pole_tolerance) break;
    x = eval_f(p, x);
    if (k >= transient) out.push_back(x);
  }
  return out;
}

bool same_set(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (std::fabs(a[i] - b[i]) > tol) return false;
  return true;
}

}  // namespace

DiagramHeights diagram_heights(double t, int transient, int samples, double tol) {
  DiagramHeights h;
  h.plus = distinct(limit_orbit(t, t, transient, samples), tol);
  h.minus = distinct(limit_orbit(t, -t, transient, samples), tol);
  std::vector<double> all = h.plus;
  all.insert(all.end(), h.minus.begin(), h.minus.end());
  h.merged = distinct(all, tol);
  h.groups = same_set(h.plus, h.minus, tol) ? 1 : 2;
  return h;
}

double column_t(const RenderConfig& cfg, int x) { return cfg.t_min + (x + 0.5) * (cfg.t_max - cfg.t_min) / cfg.width; }

int column_of(const RenderConfig& cfg, double t) {
  int x = static_cast<int>(std::floor((t - cfg.t_min) / (cfg.t_max - cfg.t_min) * cfg.width));
  return std::clamp(x, 0, cfg.width - 1);
}

int row_of(const RenderConfig& cfg, double x) {
  const double pi = pi_v<double>();
  int y = static_cast<int>(std::floor((pi - x) / (2 * pi) * cfg.height));
  return std::clamp(y, 0, cfg.height - 1);
}

namespace {

void draw_column(const RenderConfig& cfg, Raster& r, int x) {
  const double t = column_t(cfg, x);
  if (!(t > 0)) return;
  std::vector<unsigned char> hit(static_cast<size_t>(cfg.height), 0);
  for (double v : limit_orbit(t, t, cfg.transient, cfg.samples)) hit[static_cast<size_t>(row_of(cfg, v))] |= 1;
  for (double v : limit_orbit(t, -t, cfg.transient, cfg.samples)) hit[static_cast<size_t>(row_of(cfg, v))] |= 2;
  for (int y = kMarkerBand; y < cfg.height; ++y) {
    switch (hit[static_cast<size_t>(y)]) {
      case 1: r.set(x, y, kPlusOrbit); break;
      case 2: r.set(x, y, kMinusOrbit); break;
      case 3: r.set(x, y, kBothOrbits); break;
      default: break;
    }
  }
}

void draw_markers(const RenderConfig& cfg, Raster& r) {
  for (double m : cfg.markers) {
    if (m < cfg.t_min || m > cfg.t_max) continue;
    int x = column_of(cfg, m);
    for (int y = 0; y < std::min(kMarkerBand, cfg.height); ++y) r.set(x, y, kMarker);
  }
}

}  // namespace

Raster render_orbit_diagram(const RenderConfig& cfg) {
  cfg.validate();
  Raster r(cfg.width, cfg.height, kBackground);
#pragma omp parallel for schedule(dynamic, 4) num_threads(worker_count(cfg))
  for (int x = 0; x < cfg.width; ++x) draw_column(cfg, r, x);
  draw_markers(cfg, r);
  return r;
}

Raster render_orbit_diagram_serial(const RenderConfig& cfg) {
  cfg.validate();
  Raster r(cfg.width, cfg.height, kBackground);
  for (int x = 0; x < cfg.width; ++x) draw_column(cfg, r, x);
  draw_markers(cfg, r);
  return r;
}

BranchCount count_branches(const Raster& d, int column) {
  BranchCount bc;
  bool shared = false, exclusive = false;
  bool in_run = false;
  for (int y = kMarkerBand; y < d.height; ++y) {
    Rgb c = d.at(column, y);
    bool lit = c == kPlusOrbit || c == kMinusOrbit || c == kBothOrbits;
    if (lit && !in_run) ++bc.branches;
    if (lit) (c == kBothOrbits ? shared : exclusive) = true;
    in_run = lit;
  }
  if (bc.branches > 0) bc.groups = shared && !exclusive ? 1 : (!shared && exclusive ? 2 : 0);
  return bc;
}

std::string encode_ppm(const Raster& r) {
  std::string out = "P6\n" + std::to_string(r.width) + " " + std::to_string(r.height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(r.pixels.data()), r.pixels.size());
  return out;
}

Raster decode_ppm(const std::string& bytes) {
  std::istringstream in(bytes);
  std::string magic;
  int w = 0, h = 0, maxval = 0;
  in >> magic >> w >> h >> maxval;
  if (magic != "P6" || w <= 0 || h <= 0 || maxval != 255 || in.get() != '\n')
    throw Error(ErrorKind::IoFailure, "not a binary PPM with maxval 255");
  const auto offset = static_cast<size_t>(in.tellg());
  const size_t n = static_cast<size_t>(w) * h * 3;
  if (bytes.size() != offset + n) throw Error(ErrorKind::IoFailure, "PPM payload size mismatch");
  Raster r;
  r.width = w;
  r.height = h;
  r.pixels.assign(bytes.begin() + static_cast<long>(offset), bytes.end());
  return r;
}

void write_ppm(const Raster& r, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::IoFailure, "cannot open " + path + " for writing");
  const std::string bytes = encode_ppm(r);
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw Error(ErrorKind::IoFailure, "write to " + path + " failed");
}

Raster read_ppm(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::IoFailure, "cannot open " + path);
  std::string bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return decode_ppm(bytes);
}

}  // namespace tancascade
