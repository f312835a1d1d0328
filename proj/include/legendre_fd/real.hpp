#pragma once

// Scalar types the numerical kernels are instantiated for.

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <limits>
#include <string>

#ifdef LEGENDRE_FD_HAVE_FLOAT128
#include <boost/multiprecision/float128.hpp>
#endif

namespace legendre_fd {

#ifdef LEGENDRE_FD_HAVE_FLOAT128
using extended = boost::multiprecision::float128;
inline constexpr bool has_extended_precision = true;
#else
using extended = double;
inline constexpr bool has_extended_precision = false;
#endif

template <typename Real>
inline Real pi() {
    return boost::math::constants::pi<Real>();
}

template <typename Real>
inline Real epsilon() {
    return std::numeric_limits<Real>::epsilon();
}

/// Parses "p/q" or a decimal literal at the precision of Real. Throws std::invalid_argument.
template <typename Real>
Real parse_real(const std::string& text);

template <typename Real>
inline double to_double(const Real& x) {
    return static_cast<double>(x);
}

}  // namespace legendre_fd
