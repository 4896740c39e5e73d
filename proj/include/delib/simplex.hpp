#pragma once

#include <Eigen/Core>

#include <cmath>

namespace delib {

using Vec3 = Eigen::Vector3d;

// Component floor applied before taking logs so simplex vertices do not
// produce -inf logits.
inline constexpr double kLogitFloor = 1e-12;

inline bool on_simplex(const Vec3& p, double tol = 1e-9) {
  return p.minCoeff() >= -tol && std::abs(p.sum() - 1.0) <= tol;
}

inline Vec3 floored_log(const Vec3& p) {
  return p.cwiseMax(kLogitFloor).array().log().matrix();
}

// Normalized exponential; invariant under additive shifts of x, so callers
// may pass raw or centered logits interchangeably.
inline Vec3 softmax(const Vec3& x) {
  Vec3 shifted = x.array() - x.maxCoeff();
  Vec3 e = shifted.array().exp().matrix();
  return e / e.sum();
}

// Index of the largest component; ties resolve to the lowest index, which is
// the fixed A < B < C option order.
inline int argmax_option(const Vec3& p, bool* tie = nullptr) {
  int best = 0;
  for (int i = 1; i < 3; ++i)
    if (p[i] > p[best]) best = i;
  if (tie) {
    *tie = false;
    for (int i = 0; i < 3; ++i)
      if (i != best && p[i] == p[best]) *tie = true;
  }
  return best;
}

inline double cosine_similarity(const Vec3& a, const Vec3& b) {
  double na = a.norm(), nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return a.dot(b) / (na * nb);
}

}  // namespace delib
