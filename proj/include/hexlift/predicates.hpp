#pragma once

#include "hexlift/types.hpp"

namespace hexlift::geom {

/// Sign of the signed area of (a, b, c): +1 counter-clockwise, -1 clockwise,
/// 0 collinear. Exact: a floating-point filter with rational fallback.
int orient2d(const Point2& a, const Point2& b, const Point2& c);

/// +1 if d lies strictly inside the circle through counter-clockwise a, b, c,
/// -1 if strictly outside, 0 if cocircular. Exact.
int incircle(const Point2& a, const Point2& b, const Point2& c, const Point2& d);

/// Lexicographic rank key used to break cocircular ties.
struct RankedPoint {
  Point2 p;
  std::size_t index;
};

/// incircle() with symbolic perturbation: each lifted height |p|^2 is raised
/// by an infinitesimal whose magnitude grows with the (x, y, index) rank of the
/// point. Never returns 0 for distinct points with a, b, c not collinear.
int incircle_perturbed(const RankedPoint& a, const RankedPoint& b, const RankedPoint& c,
                       const RankedPoint& d);

/// Lexicographic (x, y, index) order.
bool lex_less(const RankedPoint& a, const RankedPoint& b);

}  // namespace hexlift::geom
