#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace daff::exact {

// GMP keeps mpq_class canonical (reduced, positive denominator) after every
// arithmetic operation; parse_scalar canonicalizes literals.
using Scalar = mpq_class;

Scalar parse_scalar(std::string_view text);
std::string to_string(const Scalar& s);

inline bool is_zero(const Scalar& s) { return sgn(s) == 0; }

}  // namespace daff::exact
