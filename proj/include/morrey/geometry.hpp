#pragma once

#include <numbers>
#include <stdexcept>

namespace morrey {

/// Surface measure of the unit sphere S^{n-1} in R^n (n=1: two points).
inline double unit_sphere_area(int n) {
  switch (n) {
    case 1: return 2.0;
    case 2: return 2.0 * std::numbers::pi;
    case 3: return 4.0 * std::numbers::pi;
    default: throw std::invalid_argument("unit_sphere_area: n must be 1, 2 or 3");
  }
}

/// Volume of the unit ball in R^n.
inline double unit_ball_volume(int n) {
  return unit_sphere_area(n) / n;
}

}  // namespace morrey
