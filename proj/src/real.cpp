#include "tancascade/real.hpp"

#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace tancascade {

Precision precision_from_bits(int bits) {
  if (bits < 1 || bits > 113)
    throw std::invalid_argument("precision bits must be in [1, 113]");
  if (bits <= 53) return Precision::Double;
  if (bits <= 64) return Precision::Extended;
  return Precision::Quad;
}

namespace {
template <class Real>
std::string format(const Real& x) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<Real>::max_digits10) << x;
  return os.str();
}
}  // namespace

std::string to_string(double x) { return format(x); }
std::string to_string(long double x) { return format(x); }
std::string to_string(const quad& x) { return format(x); }

template <>
double parse_real<double>(const std::string& s) {
  return std::stod(s);
}
template <>
long double parse_real<long double>(const std::string& s) {
  return std::stold(s);
}
template <>
quad parse_real<quad>(const std::string& s) {
  return quad(s);
}

}  // namespace tancascade
