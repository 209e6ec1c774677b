#include "hexlift/triangulation.hpp"

#include "hexlift/predicates.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace hexlift {

namespace {

using geom::RankedPoint;

class Mesh {
 public:
  explicit Mesh(const std::vector<RankedPoint>& pts) : pts_(pts) {}

  void add(std::size_t a, std::size_t b, std::size_t c) {
    const std::size_t t = tris_.size();
    tris_.push_back({a, b, c});
    alive_.push_back(true);
    owner_[key(a, b)] = t;
    owner_[key(b, c)] = t;
    owner_[key(c, a)] = t;
  }

  void remove(std::size_t t) {
    alive_[t] = false;
    const auto& tri = tris_[t];
    for (int k = 0; k < 3; ++k) {
      const auto it = owner_.find(key(tri[k], tri[(k + 1) % 3]));
      if (it != owner_.end() && it->second == t) owner_.erase(it);
    }
  }

  // Triangle holding the directed edge u -> v, if any.
  bool find(std::size_t u, std::size_t v, std::size_t& t) const {
    const auto it = owner_.find(key(u, v));
    if (it == owner_.end()) return false;
    t = it->second;
    return true;
  }

  std::size_t apex(std::size_t t, std::size_t u, std::size_t v) const {
    for (const std::size_t w : tris_[t])
      if (w != u && w != v) return w;
    return u;
  }

  // Lawson flips until every interior edge is locally Delaunay.
  void legalize(std::vector<std::pair<std::size_t, std::size_t>> stack) {
    while (!stack.empty()) {
      const auto [u, v] = stack.back();
      stack.pop_back();
      std::size_t t1 = 0, t2 = 0;
      if (!find(u, v, t1) || !find(v, u, t2)) continue;
      const std::size_t w = apex(t1, u, v);
      const std::size_t z = apex(t2, v, u);
      if (geom::incircle_perturbed(pts_[u], pts_[v], pts_[w], pts_[z]) <= 0) continue;
      // Quadrilateral u, z, v, w is convex; replace diagonal u-v with w-z.
      remove(t1);
      remove(t2);
      add(u, z, w);
      add(z, v, w);
      stack.emplace_back(u, z);
      stack.emplace_back(z, v);
      stack.emplace_back(v, w);
      stack.emplace_back(w, u);
    }
  }

  std::vector<Triangle> triangles() const {
    std::vector<Triangle> out;
    for (std::size_t t = 0; t < tris_.size(); ++t) {
      if (!alive_[t]) continue;
      Triangle tri = tris_[t];
      std::rotate(tri.begin(), std::min_element(tri.begin(), tri.end()), tri.end());
      out.push_back(tri);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  static std::uint64_t key(std::size_t u, std::size_t v) {
    return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint64_t>(v);
  }

  const std::vector<RankedPoint>& pts_;
  std::vector<Triangle> tris_;
  std::vector<bool> alive_;
  std::unordered_map<std::uint64_t, std::size_t> owner_;
};

int orient(const std::vector<RankedPoint>& pts, std::size_t a, std::size_t b, std::size_t c) {
  return geom::orient2d(pts[a].p, pts[b].p, pts[c].p);
}

EdgeList path_edges(const std::vector<std::size_t>& sorted) {
  EdgeList out;
  out.degenerate = true;
  for (std::size_t k = 0; k + 1 < sorted.size(); ++k)
    out.edges.push_back({std::min(sorted[k], sorted[k + 1]), std::max(sorted[k], sorted[k + 1])});
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

std::vector<std::size_t> lex_order(const std::vector<RankedPoint>& pts) {
  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return geom::lex_less(pts[a], pts[b]); });
  return order;
}

}  // namespace

EdgeList triangulate(const Points2& points) {
  const auto m = static_cast<std::size_t>(points.rows());
  if (m < 3) throw std::invalid_argument("triangulation: need at least 3 points, got " + std::to_string(m));

  std::vector<RankedPoint> pts(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    if (!std::isfinite(points(r, 0)) || !std::isfinite(points(r, 1)))
      throw std::invalid_argument("triangulation: non-finite point at row " + std::to_string(i));
    pts[i] = {Point2(points(r, 0), points(r, 1)), i};
  }
  const std::vector<std::size_t> order = lex_order(pts);
  for (std::size_t k = 0; k + 1 < m; ++k)
    if (pts[order[k]].p == pts[order[k + 1]].p)
      throw std::invalid_argument("triangulation: duplicate points at rows " + std::to_string(order[k]) +
                                  " and " + std::to_string(order[k + 1]));

  // Leading run of collinear points in sweep order.
  std::size_t first = 2;
  while (first < m && orient(pts, order[0], order[1], order[first]) == 0) ++first;
  if (first == m) return path_edges(order);

  Mesh mesh(pts);
  std::vector<std::pair<std::size_t, std::size_t>> interior;

  // Fan from the first off-line point to the collinear chain.
  const std::size_t apex = order[first];
  const bool left = orient(pts, order[0], order[1], apex) > 0;
  std::vector<std::size_t> hull;  // counter-clockwise
  for (std::size_t k = 0; k + 1 < first; ++k) {
    const std::size_t a = order[k], b = order[k + 1];
    if (left) mesh.add(a, b, apex);
    else mesh.add(b, a, apex);
    if (k > 0) interior.emplace_back(order[k], apex);
  }
  if (left) {
    for (std::size_t k = 0; k < first; ++k) hull.push_back(order[k]);
  } else {
    for (std::size_t k = first; k-- > 0;) hull.push_back(order[k]);
  }
  hull.push_back(apex);

  // Each later point is lexicographically largest so far, hence outside the
  // current hull; stitch it to the chain of hull edges it can see.
  for (std::size_t k = first + 1; k < m; ++k) {
    const std::size_t p = order[k];
    const std::size_t h = hull.size();
    auto visible = [&](std::size_t i) { return orient(pts, hull[i], hull[(i + 1) % h], p) < 0; };

    std::size_t start = h;
    for (std::size_t i = 0; i < h; ++i)
      if (visible(i) && !visible((i + h - 1) % h)) {
        start = i;
        break;
      }
    if (start == h) throw std::logic_error("triangulation: no visible hull edge");

    std::size_t count = 0;
    while (count < h && visible((start + count) % h)) {
      const std::size_t a = hull[(start + count) % h], b = hull[(start + count + 1) % h];
      mesh.add(b, a, p);
      interior.emplace_back(a, b);
      ++count;
    }

    // Hull vertices strictly inside the visible chain disappear; p goes in their place.
    std::vector<std::size_t> next;
    next.reserve(h + 1);
    for (std::size_t i = 0; i <= h - count; ++i) next.push_back(hull[(start + count + i) % h]);
    next.push_back(p);
    hull = std::move(next);
  }

  mesh.legalize(std::move(interior));

  EdgeList out;
  out.triangles = mesh.triangles();
  for (const Triangle& t : out.triangles)
    for (int k = 0; k < 3; ++k) {
      const std::size_t a = t[k], b = t[(k + 1) % 3];
      out.edges.push_back({std::min(a, b), std::max(a, b)});
    }
  std::sort(out.edges.begin(), out.edges.end());
  out.edges.erase(std::unique(out.edges.begin(), out.edges.end()), out.edges.end());
  return out;
}

EdgeList connect_points(const Points2& points) {
  if (points.rows() >= 3) return triangulate(points);
  EdgeList out;
  if (points.rows() == 2) {
    out.edges.push_back({0, 1});
    out.degenerate = true;
  }
  return out;
}

}  // namespace hexlift
