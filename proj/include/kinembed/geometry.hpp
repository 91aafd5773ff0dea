#pragma once

#include <algorithm>
#include <cmath>

namespace kinembed {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(const Point2& a, const Point2& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

inline double norm(const Point2& p) { return std::hypot(p.x, p.y); }

namespace detail {

// Sign of the cross product (b-a) x (c-a): +1 counter-clockwise, -1
// clockwise, 0 collinear.
inline int orientation(const Point2& a, const Point2& b, const Point2& c) {
  const double v = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  if (v > 0.0) return 1;
  if (v < 0.0) return -1;
  return 0;
}

// c collinear with segment ab: is it on the segment?
inline bool on_segment(const Point2& a, const Point2& b, const Point2& c) {
  return std::min(a.x, b.x) <= c.x && c.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= c.y && c.y <= std::max(a.y, b.y);
}

}  // namespace detail

// True iff closed segments [p1,p2] and [q1,q2] share at least one point,
// including endpoint touches and collinear overlap.
inline bool segments_intersect(const Point2& p1, const Point2& p2,
                               const Point2& q1, const Point2& q2) {
  const int o1 = detail::orientation(p1, p2, q1);
  const int o2 = detail::orientation(p1, p2, q2);
  const int o3 = detail::orientation(q1, q2, p1);
  const int o4 = detail::orientation(q1, q2, p2);

  if (o1 != o2 && o3 != o4) return true;

  if (o1 == 0 && detail::on_segment(p1, p2, q1)) return true;
  if (o2 == 0 && detail::on_segment(p1, p2, q2)) return true;
  if (o3 == 0 && detail::on_segment(q1, q2, p1)) return true;
  if (o4 == 0 && detail::on_segment(q1, q2, p2)) return true;
  return false;
}

}  // namespace kinembed
