// Ordinals below omega^2, written omega*m + n. Modal depths live here: each
// K/M/E adds one, each C jumps to the next limit ordinal.
#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace biworlds {

struct OrdinalW2 {
  uint32_t omega_coeff = 0;  // m in omega*m + n
  uint32_t finite_part = 0;  // n

  friend auto operator<=>(const OrdinalW2&, const OrdinalW2&) = default;

  [[nodiscard]] OrdinalW2 succ() const { return {omega_coeff, finite_part + 1}; }

  // Smallest limit ordinal strictly above this one.
  [[nodiscard]] OrdinalW2 plus_omega() const { return {omega_coeff + 1, 0}; }

  [[nodiscard]] bool is_finite() const { return omega_coeff == 0; }

  [[nodiscard]] std::string str() const {
    if (omega_coeff == 0) return std::to_string(finite_part);
    std::string s = omega_coeff == 1 ? "w" : "w*" + std::to_string(omega_coeff);
    if (finite_part != 0) s += "+" + std::to_string(finite_part);
    return s;
  }
};

inline OrdinalW2 ord_max(OrdinalW2 a, OrdinalW2 b) { return a < b ? b : a; }

}  // namespace biworlds
