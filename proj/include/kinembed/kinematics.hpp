#pragma once

#include <cmath>
#include <numeric>
#include <optional>
#include <vector>

#include "kinembed/common.hpp"
#include "kinembed/geometry.hpp"

namespace kinembed {

// A linear planar morphology: ordered link lengths, base fixed at the origin.
struct ChainStructure {
  std::vector<double> link_lengths;

  int n_joints() const { return static_cast<int>(link_lengths.size()); }
  double total_length() const {
    return std::accumulate(link_lengths.begin(), link_lengths.end(), 0.0);
  }
};

// Joint angles in radians, one per joint. Angle i is relative to the previous
// link's direction; the first is measured from the +x axis.
struct JointPose {
  std::vector<double> angles;
};

inline void check_pose_matches(const ChainStructure& structure, const JointPose& pose) {
  if (pose.angles.size() != structure.link_lengths.size()) {
    throw DimensionError("pose has " + std::to_string(pose.angles.size()) +
                         " angles but structure has " +
                         std::to_string(structure.link_lengths.size()) + " joints");
  }
}

// Joint positions along the chain, base first: n_joints + 1 points.
inline std::vector<Point2> chain_points(const ChainStructure& structure, const JointPose& pose) {
  check_pose_matches(structure, pose);
  std::vector<Point2> pts;
  pts.reserve(structure.link_lengths.size() + 1);
  pts.push_back({0.0, 0.0});
  double theta = 0.0;
  Point2 p{0.0, 0.0};
  for (std::size_t i = 0; i < structure.link_lengths.size(); ++i) {
    theta += pose.angles[i];
    p.x += structure.link_lengths[i] * std::cos(theta);
    p.y += structure.link_lengths[i] * std::sin(theta);
    pts.push_back(p);
  }
  return pts;
}

inline Point2 forward_kinematics(const ChainStructure& structure, const JointPose& pose) {
  check_pose_matches(structure, pose);
  double theta = 0.0, x = 0.0, y = 0.0;
  for (std::size_t i = 0; i < structure.link_lengths.size(); ++i) {
    theta += pose.angles[i];
    x += structure.link_lengths[i] * std::cos(theta);
    y += structure.link_lengths[i] * std::sin(theta);
  }
  return {x, y};
}

// d(end effector)/d(joint angles), two rows by n_joints columns.
struct Jacobian2N {
  std::vector<double> dx;  // dx/ds_j
  std::vector<double> dy;  // dy/ds_j
};

inline Jacobian2N jacobian(const ChainStructure& structure, const JointPose& pose) {
  check_pose_matches(structure, pose);
  const std::size_t n = structure.link_lengths.size();
  // Column j sums l_i * (-sin, cos) of cumulative angles over i >= j.
  std::vector<double> cum(n);
  double theta = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    theta += pose.angles[i];
    cum[i] = theta;
  }
  Jacobian2N j;
  j.dx.assign(n, 0.0);
  j.dy.assign(n, 0.0);
  double sx = 0.0, sy = 0.0;
  for (std::size_t k = n; k-- > 0;) {
    sx += -structure.link_lengths[k] * std::sin(cum[k]);
    sy += structure.link_lengths[k] * std::cos(cum[k]);
    j.dx[k] = sx;
    j.dy[k] = sy;
  }
  return j;
}

struct IkConfig {
  double tolerance = 1e-4;
  int max_iters = 200;
  double damping = 0.01;
  int restarts = 5;           // used by solve_ik_retry
  double seed_noise = 0.1;    // initial seed: zeros + U(-seed_noise, seed_noise)
};

// Damped-least-squares IK from a given seed. Returns nullopt when the target
// is outside the outer workspace bound or the iteration does not converge;
// the caller decides whether to resample the seed.
inline std::optional<JointPose> solve_ik(const ChainStructure& structure, const Point2& target,
                                         const JointPose& seed, const IkConfig& config = {}) {
  check_pose_matches(structure, seed);
  if (norm(target) > structure.total_length() + config.tolerance) return std::nullopt;

  JointPose pose = seed;
  const double lambda2 = config.damping * config.damping;
  for (int iter = 0; iter < config.max_iters; ++iter) {
    const Point2 p = forward_kinematics(structure, pose);
    const double ex = target.x - p.x;
    const double ey = target.y - p.y;
    if (std::hypot(ex, ey) <= config.tolerance) {
      for (double& a : pose.angles) a = normalize_angle(a);
      return pose;
    }
    const Jacobian2N j = jacobian(structure, pose);
    // Solve (J J^T + lambda^2 I) k = e for the 2-vector k, step = J^T k.
    double a = lambda2, b = 0.0, c = lambda2;
    for (std::size_t i = 0; i < j.dx.size(); ++i) {
      a += j.dx[i] * j.dx[i];
      b += j.dx[i] * j.dy[i];
      c += j.dy[i] * j.dy[i];
    }
    const double det = a * c - b * b;
    const double kx = (c * ex - b * ey) / det;
    const double ky = (a * ey - b * ex) / det;
    for (std::size_t i = 0; i < pose.angles.size(); ++i) {
      pose.angles[i] += j.dx[i] * kx + j.dy[i] * ky;
    }
  }
  return std::nullopt;
}

inline JointPose default_ik_seed(const ChainStructure& structure, Rng& rng,
                                 const IkConfig& config = {}) {
  JointPose seed;
  seed.angles.resize(structure.link_lengths.size());
  for (double& a : seed.angles) a = rng.uniform(-config.seed_noise, config.seed_noise);
  return seed;
}

// The full seeding policy: noisy-zero seed first, then up to config.restarts
// fresh seeds uniform in (-pi, pi].
inline std::optional<JointPose> solve_ik_retry(const ChainStructure& structure,
                                               const Point2& target, Rng& rng,
                                               const IkConfig& config = {}) {
  if (auto r = solve_ik(structure, target, default_ik_seed(structure, rng, config), config)) {
    return r;
  }
  for (int attempt = 0; attempt < config.restarts; ++attempt) {
    JointPose seed;
    seed.angles.resize(structure.link_lengths.size());
    for (double& a : seed.angles) a = normalize_angle(rng.uniform(-kPi, kPi));
    if (auto r = solve_ik(structure, target, seed, config)) return r;
  }
  return std::nullopt;
}

// True iff any two non-adjacent link segments intersect. Adjacent links share
// a joint and are exempt.
inline bool self_collides(const ChainStructure& structure, const JointPose& pose) {
  const std::vector<Point2> pts = chain_points(structure, pose);
  const std::size_t n_links = structure.link_lengths.size();
  for (std::size_t i = 0; i + 2 < n_links; ++i) {
    for (std::size_t j = i + 2; j < n_links; ++j) {
      if (segments_intersect(pts[i], pts[i + 1], pts[j], pts[j + 1])) return true;
    }
  }
  return false;
}

}  // namespace kinembed
