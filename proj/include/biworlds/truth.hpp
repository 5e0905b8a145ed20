// Three-valued truth lattice: truth order f <= u <= t, precision order
// u <= f, u <= t with t and f incomparable.
#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>

#include "biworlds/errors.hpp"

namespace biworlds {

enum class Tv3 : uint8_t { F = 0, U = 1, T = 2 };

inline const char* to_string(Tv3 v) {
  switch (v) {
    case Tv3::F: return "f";
    case Tv3::U: return "u";
    case Tv3::T: return "t";
  }
  return "?";
}

// f <= u <= t
inline bool leq_t(Tv3 a, Tv3 b) {
  return static_cast<int>(a) <= static_cast<int>(b);
}

// u below both t and f; t and f incomparable
inline bool leq_p(Tv3 a, Tv3 b) { return a == b || a == Tv3::U; }

inline Tv3 inverse(Tv3 v) {
  switch (v) {
    case Tv3::F: return Tv3::T;
    case Tv3::T: return Tv3::F;
    default: return Tv3::U;
  }
}

inline Tv3 glb_t(Tv3 a, Tv3 b) { return leq_t(a, b) ? a : b; }
inline Tv3 lub_t(Tv3 a, Tv3 b) { return leq_t(a, b) ? b : a; }

// Greatest lower bound in the truth order; the empty glb is the top element t.
inline Tv3 glb_t(std::span<const Tv3> values) {
  Tv3 acc = Tv3::T;
  for (Tv3 v : values) acc = glb_t(acc, v);
  return acc;
}

inline Tv3 glb_t(std::initializer_list<Tv3> values) {
  return glb_t(std::span<const Tv3>(values.begin(), values.size()));
}

// Least upper bound in the precision order. Inputs come from precision
// chains, so t and f never legitimately co-occur; if they do, the chain
// invariant was broken upstream.
inline Tv3 lub_p(std::span<const Tv3> values) {
  Tv3 acc = Tv3::U;
  for (Tv3 v : values) {
    if (v == Tv3::U) continue;
    if (acc != Tv3::U && acc != v)
      throw PrecisionConflictError("lub_p: both t and f present, no upper bound exists");
    acc = v;
  }
  return acc;
}

inline Tv3 lub_p(std::initializer_list<Tv3> values) {
  return lub_p(std::span<const Tv3>(values.begin(), values.size()));
}

}  // namespace biworlds
