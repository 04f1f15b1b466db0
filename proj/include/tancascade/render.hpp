#pragma once

// Parameter-plane period coloring, real orbit diagram, and PPM I/O.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace tancascade {

struct RenderConfig {
  // parameter plane region
  double re_min = -3.15, re_max = 3.15;
  double im_min = 0.0, im_max = 3.15;
  // orbit diagram t-interval
  double t_min = 0.0, t_max = 3.14159265358979323846;
  int width = 400;
  int height = 400;
  int transient = 2000;  // orbit diagram: f-steps discarded per column
  int samples = 256;     // orbit diagram: plotted iterates per column
  int max_iter = 4096;   // plane: T-steps before a pixel is declared non-convergent
  int max_period_T = 64;
  double tol = 1e-7;
  int threads = 0;  // 0 = OpenMP default
  double saturation = 40.0;
  std::vector<double> markers;  // diagram: t values marked in the top band

  static RenderConfig plane_defaults();
  static RenderConfig diagram_defaults();
  void validate() const;
};

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  bool operator==(const Rgb&) const = default;
};

struct Raster {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major RGB

  Raster() = default;
  Raster(int w, int h, Rgb fill = {});
  Rgb at(int x, int y) const;
  void set(int x, int y, Rgb c);
};

inline constexpr Rgb kReserved{0, 0, 0};
inline constexpr Rgb kBackground{255, 255, 255};
inline constexpr Rgb kPlusOrbit{200, 30, 30};
inline constexpr Rgb kMinusOrbit{30, 60, 200};
inline constexpr Rgb kBothOrbits{90, 20, 110};
inline constexpr Rgb kMarker{0, 150, 0};
inline constexpr int kMarkerBand = 6;

// Hue from log2 of the period so that equal periods share a color.
Rgb period_color(int period_T);

// Minimal period of the cycle attracting t under z -> i t tan z, or 0.
int detect_period(std::complex<double> t, const RenderConfig& cfg);

double pixel_re(const RenderConfig& cfg, int x);
double pixel_im(const RenderConfig& cfg, int y);

std::vector<int> plane_periods(const RenderConfig& cfg);
std::vector<int> plane_periods_serial(const RenderConfig& cfg);
Raster render_parameter_plane(const RenderConfig& cfg);
Raster render_parameter_plane_serial(const RenderConfig& cfg);

// Columns x where period(x) != period(x - 1) along one row of a period grid.
std::vector<int> row_transitions(const std::vector<int>& periods, int width, int row);

struct DiagramHeights {
  std::vector<double> plus, minus;  // distinct limit heights of the +t and -t orbits
  std::vector<double> merged;
  int groups = 0;  // 1 when both orbits share a cycle, 2 otherwise
};

DiagramHeights diagram_heights(double t, int transient, int samples, double tol = 1e-6);

double column_t(const RenderConfig& cfg, int x);
int column_of(const RenderConfig& cfg, double t);
int row_of(const RenderConfig& cfg, double x);

Raster render_orbit_diagram(const RenderConfig& cfg);
Raster render_orbit_diagram_serial(const RenderConfig& cfg);

struct BranchCount {
  int branches = 0;  // runs of lit pixels below the marker band
  int groups = 0;    // 1 if every run is shared by both orbits, 2 if none is, 0 if mixed
};

BranchCount count_branches(const Raster& diagram, int column);

std::string encode_ppm(const Raster& r);
Raster decode_ppm(const std::string& bytes);
void write_ppm(const Raster& r, const std::string& path);
Raster read_ppm(const std::string& path);

}  // namespace tancascade
