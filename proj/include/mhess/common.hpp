#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mhess {

inline constexpr double kPi = std::numbers::pi;

// C(n,k); exact in double for the small orders used here.
inline double binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0.0;
  if (k > n - k) k = n - k;
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * double(n - k + i) / double(i);
  return std::round(c);
}

// Volume of the unit ball in R^n.
inline double unit_ball_volume(int n) {
  return std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

// Surface area of the unit sphere S^{n-1}.
inline double unit_sphere_area(int n) { return n * unit_ball_volume(n); }

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace mhess
