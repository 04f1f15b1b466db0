#pragma once

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/float128.hpp>

#include <limits>
#include <string>

namespace tancascade {

using quad = boost::multiprecision::float128;

// Working precisions. The value is the mantissa width in bits.
enum class Precision { Double = 53, Extended = 64, Quad = 113 };

// Smallest supported precision with at least `bits` mantissa bits.
// Throws std::invalid_argument for bits < 1 or bits > 113.
Precision precision_from_bits(int bits);

template <class Real>
constexpr int precision_bits_of() {
  return std::numeric_limits<Real>::digits;
}

template <class Real>
Real pi_v() {
  return boost::math::constants::pi<Real>();
}

template <class Real>
Real half_pi_v() {
  return boost::math::constants::half_pi<Real>();
}

// Round-trip decimal representation.
std::string to_string(double x);
std::string to_string(long double x);
std::string to_string(const quad& x);

// Parse a decimal string at full precision of Real.
template <class Real>
Real parse_real(const std::string& s);

// Calls f with a value-initialised tag of the requested type.
template <class F>
decltype(auto) with_precision(Precision p, F&& f) {
  switch (p) {
    case Precision::Double: return f(double{});
    case Precision::Extended: return f((long double){});
    case Precision::Quad: break;
  }
  return f(quad{});
}

}  // namespace tancascade
