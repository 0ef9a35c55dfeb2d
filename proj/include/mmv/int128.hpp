#pragma once

#include <cstdint>
#include <string>

#include "mmv/errors.hpp"

namespace mmv {

using i128 = __int128;
using u128 = unsigned __int128;

/// Verifier arithmetic over bounded integers must stay below this magnitude (2^126).
inline constexpr u128 kMagnitudeCap = u128(1) << 126;

std::string to_string(i128 v);
std::string to_string(u128 v);

/// Strict decimal parse (optional leading '-', no leading zeros, no '+').
/// Throws Error(ParseError) on malformed input or overflow past the i128 range.
i128 parse_i128(const std::string& s);

u128 isqrt(u128 x);

inline i128 abs128(i128 v) { return v < 0 ? -v : v; }

inline i128 checked_add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) fail(Errc::MagnitudeOverflow, "integer addition overflow");
  return r;
}

inline i128 checked_sub(i128 a, i128 b) {
  i128 r;
  if (__builtin_sub_overflow(a, b, &r)) fail(Errc::MagnitudeOverflow, "integer subtraction overflow");
  return r;
}

inline i128 checked_mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) fail(Errc::MagnitudeOverflow, "integer multiplication overflow");
  return r;
}

/// a*b with overflow detection in the unsigned 128-bit domain; returns false on overflow.
inline bool mul_fits_u128(u128 a, u128 b, u128* out) { return !__builtin_mul_overflow(a, b, out); }

}  // namespace mmv
