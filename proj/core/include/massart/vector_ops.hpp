#pragma once

// Dense vector primitives shared by the whole library: the sign convention,
// the clipping weight of the reweighted loss, and unit-ball projection.

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace massart {

using Vec = std::vector<double>;

/// sign(0) = +1. Every tie-break downstream inherits this convention.
inline int sign(double t) {
  if (!std::isfinite(t)) throw std::invalid_argument("sign: non-finite input");
  return t >= 0.0 ? 1 : -1;
}

/// Reweighting factor 1 / max(|a|, floor); always in (0, 1/floor].
inline double clip_weight(double a, double floor) {
  if (!(floor > 0.0))
    throw std::invalid_argument("clip_weight: floor must be positive");
  return 1.0 / std::max(std::abs(a), floor);
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double squared_norm(std::span<const double> v) { return dot(v, v); }

inline double l2_norm(std::span<const double> v) {
  return std::sqrt(squared_norm(v));
}

inline double squared_distance(std::span<const double> a,
                               std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

inline bool all_finite(std::span<const double> v) {
  for (double c : v)
    if (!std::isfinite(c)) return false;
  return true;
}

/// v <- v / max(||v||, 1). Iterates until the norm test is stable so that
/// projecting twice returns bit-identical output.
inline void project_to_ball_in_place(Vec& v) {
  if (!all_finite(v))
    throw std::invalid_argument("project_to_ball: non-finite coordinate");
  for (;;) {
    const double n = l2_norm(v);
    if (n <= 1.0) return;
    bool changed = false;
    for (double& c : v) {
      const double scaled = c / n;
      if (scaled != c) changed = true;
      c = scaled;
    }
    if (!changed) return;
  }
}

inline Vec project_to_ball(Vec v) {
  project_to_ball_in_place(v);
  return v;
}

/// Basis vector e1 = (1, 0, ..., 0), the SGD starting iterate.
inline Vec basis_vector(std::size_t dim, std::size_t index = 0) {
  Vec v(dim, 0.0);
  v.at(index) = 1.0;
  return v;
}

inline bool is_unit(std::span<const double> v, double tol = 1e-9) {
  return std::abs(l2_norm(v) - 1.0) <= tol;
}

inline bool in_unit_ball(std::span<const double> v, double tol = 1e-9) {
  return l2_norm(v) <= 1.0 + tol;
}

}  // namespace massart
