// Working-precision reals for the numeric layer (IEEE binary128).
#ifndef DWB_REAL_HPP
#define DWB_REAL_HPP

#include <quadmath.h>

#include <string>

#include "dwb/exact.hpp"

namespace dwb {

using Real = __float128;

/// Nearest binary128 value to r (to within an ulp).
Real to_real(const Rat& r);
inline Real to_real(double v) { return static_cast<Real>(v); }
inline double to_double(Real v) { return static_cast<double>(v); }

inline Real real_abs(Real v) { return fabsq(v); }
inline Real real_log(Real v) { return logq(v); }
inline bool real_finite(Real v) { return finiteq(v) != 0; }

/// printf-style "%.<digits>Qg".
std::string format_real(Real v, int significant_digits = 17);

/// Scalar conversion used by the templated evaluators.
template <class T>
T rat_to(const Rat& r);
template <>
inline double rat_to<double>(const Rat& r) { return r.to_double(); }
template <>
inline Real rat_to<Real>(const Rat& r) { return to_real(r); }

}  // namespace dwb

#endif  // DWB_REAL_HPP
