#pragma once

#include <compare>
#include <string>

namespace moyal {

// Integer or half-integer value stored as twice its value.
struct HalfInt {
  int twice = 0;

  static constexpr HalfInt from_twice(int t) { return HalfInt{t}; }
  static constexpr HalfInt integer(int v) { return HalfInt{2 * v}; }

  constexpr double value() const { return 0.5 * twice; }
  constexpr bool is_integer() const { return twice % 2 == 0; }

  constexpr auto operator<=>(const HalfInt&) const = default;

  std::string str() const {
    return is_integer() ? std::to_string(twice / 2) : std::to_string(twice) + "/2";
  }
};

inline constexpr HalfInt kHalf{1};

}  // namespace moyal
