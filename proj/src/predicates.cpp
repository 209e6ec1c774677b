#include "hexlift/predicates.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace hexlift::geom {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon() / 2.0;  // 2^-53
// Static error bounds for the floating-point filters (Shewchuk's "A" bounds).
constexpr double kOrientBound = (3.0 + 16.0 * kEps) * kEps;
constexpr double kInCircleBound = (10.0 + 96.0 * kEps) * kEps;

template <typename T>
int sign_of(const T& value) {
  return (value > 0) - (value < 0);
}

int orient2d_exact(const Point2& a, const Point2& b, const Point2& c) {
  const mpq_class ax(a.x()), ay(a.y()), bx(b.x()), by(b.y()), cx(c.x()), cy(c.y());
  const mpq_class det = (ax - cx) * (by - cy) - (ay - cy) * (bx - cx);
  return sgn(det);
}

int incircle_exact(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
  const mpq_class dx(d.x()), dy(d.y());
  const mpq_class adx = mpq_class(a.x()) - dx, ady = mpq_class(a.y()) - dy;
  const mpq_class bdx = mpq_class(b.x()) - dx, bdy = mpq_class(b.y()) - dy;
  const mpq_class cdx = mpq_class(c.x()) - dx, cdy = mpq_class(c.y()) - dy;
  const mpq_class alift = adx * adx + ady * ady;
  const mpq_class blift = bdx * bdx + bdy * bdy;
  const mpq_class clift = cdx * cdx + cdy * cdy;
  const mpq_class det = alift * (bdx * cdy - cdx * bdy) + blift * (cdx * ady - adx * cdy) +
                        clift * (adx * bdy - bdx * ady);
  return sgn(det);
}

}  // namespace

int orient2d(const Point2& a, const Point2& b, const Point2& c) {
  const double left = (a.x() - c.x()) * (b.y() - c.y());
  const double right = (a.y() - c.y()) * (b.x() - c.x());
  const double det = left - right;
  const double bound = kOrientBound * (std::abs(left) + std::abs(right));
  if (det > bound || -det > bound) return sign_of(det);
  return orient2d_exact(a, b, c);
}

int incircle(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
  const double adx = a.x() - d.x(), ady = a.y() - d.y();
  const double bdx = b.x() - d.x(), bdy = b.y() - d.y();
  const double cdx = c.x() - d.x(), cdy = c.y() - d.y();

  const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
  const double cdxady = cdx * ady, adxcdy = adx * cdy;
  const double adxbdy = adx * bdy, bdxady = bdx * ady;
  const double alift = adx * adx + ady * ady;
  const double blift = bdx * bdx + bdy * bdy;
  const double clift = cdx * cdx + cdy * cdy;

  const double det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady);
  const double permanent = (std::abs(bdxcdy) + std::abs(cdxbdy)) * alift +
                           (std::abs(cdxady) + std::abs(adxcdy)) * blift +
                           (std::abs(adxbdy) + std::abs(bdxady)) * clift;
  const double bound = kInCircleBound * permanent;
  if (det > bound || -det > bound) return sign_of(det);
  return incircle_exact(a, b, c, d);
}

bool lex_less(const RankedPoint& a, const RankedPoint& b) {
  if (a.p.x() != b.p.x()) return a.p.x() < b.p.x();
  if (a.p.y() != b.p.y()) return a.p.y() < b.p.y();
  return a.index < b.index;
}

int incircle_perturbed(const RankedPoint& a, const RankedPoint& b, const RankedPoint& c,
                       const RankedPoint& d) {
  if (const int s = incircle(a.p, b.p, c.p, d.p); s != 0) return s;

  // The lifted determinant is linear in each height, so the perturbed sign is
  // the sign of the cofactor of the most significant (lexicographically
  // largest) point whose cofactor does not vanish.
  std::array<const RankedPoint*, 4> order{&a, &b, &c, &d};
  std::sort(order.begin(), order.end(),
            [](const RankedPoint* l, const RankedPoint* r) { return lex_less(*r, *l); });
  for (const RankedPoint* top : order) {
    int s = 0;
    if (top == &d) s = -orient2d(a.p, b.p, c.p);
    else if (top == &c) s = orient2d(a.p, b.p, d.p);
    else if (top == &b) s = orient2d(a.p, d.p, c.p);
    else s = orient2d(d.p, b.p, c.p);
    if (s != 0) return s;
  }
  return 0;  // only reachable when a, b, c are collinear
}

}  // namespace hexlift::geom
