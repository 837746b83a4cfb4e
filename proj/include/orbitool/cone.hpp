#ifndef ORBITOOL_CONE_HPP
#define ORBITOOL_CONE_HPP

#include "orbitool/group.hpp"

#include <algorithm>
#include <set>

namespace orbitool {

/// A pointed rational polyhedral cone, carried by its extreme rays.
/// Rays are stored primitive in N (integer coordinates with respect to the
/// group's fixed HNF basis of N) alongside their ambient representatives.
struct Cone {
  std::vector<IVec> rays_n;      // primitive N-coordinates, canonically sorted
  std::vector<QVec> rays_ambient;
  bool full_dim = false;

  bool operator==(const Cone& o) const { return rays_n == o.rays_n; }
};

/// Extreme rays of { v : <row, v> >= 0 for all rows }, assuming the cone is
/// pointed. Brute force over (n-1)-subsets of the inequalities; exact.
inline std::vector<QVec> extreme_rays(std::vector<QVec> ineqs, int n) {
  std::sort(ineqs.begin(), ineqs.end());
  ineqs.erase(std::unique(ineqs.begin(), ineqs.end()), ineqs.end());
  size_t m = ineqs.size();
  std::set<IVec> seen;
  std::vector<QVec> rays;

  auto feasible = [&](const QVec& w) {
    for (const QVec& row : ineqs)
      if (dot(row, w) < 0) return false;
    return true;
  };

  std::vector<size_t> comb;
  auto visit = [&](const std::vector<size_t>& subset) {
    QMat rows;
    for (size_t i : subset) rows.push_back(ineqs[i]);
    QMat ker = nullspace(rows);
    if (ker.size() != 1) return;
    QVec w = ker[0];
    if (!feasible(w)) {
      for (Rat& x : w) x = -x;
      if (!feasible(w)) return;
    }
    IVec prim = primitive_direction(w);
    if (seen.insert(prim).second) rays.push_back(to_qvec(prim));
  };

  // enumerate all (n-1)-subsets
  if (n == 1) {
    QVec w{Rat(1)};
    if (feasible(w)) rays.push_back(w);
    w[0] = -1;
    if (feasible(w)) rays.push_back(w);
    return rays;
  }
  std::vector<size_t> subset(n - 1);
  auto rec = [&](auto&& self, size_t pos, size_t start) -> void {
    if (pos == subset.size()) { visit(subset); return; }
    for (size_t i = start; i < m; ++i) {
      subset[pos] = i;
      self(self, pos + 1, i + 1);
    }
  };
  if (m >= static_cast<size_t>(n - 1)) rec(rec, 0, 0);
  std::sort(rays.begin(), rays.end());
  return rays;
}

/// Build a Cone from ambient ray directions, normalizing each ray to the
/// primitive point of N on it.
inline Cone make_cone(const Group& g, const std::vector<QVec>& ray_dirs) {
  Cone c;
  std::set<IVec> seen;
  for (const QVec& r : ray_dirs) {
    IVec prim = g.primitive_in_n(r);
    if (seen.insert(prim).second) c.rays_n.push_back(prim);
  }
  std::sort(c.rays_n.begin(), c.rays_n.end());
  for (const IVec& y : c.rays_n) c.rays_ambient.push_back(g.ambient(y));
  QMat span;
  for (const QVec& r : c.rays_ambient) span.push_back(r);
  c.full_dim = (rank(span) == g.n());
  return c;
}

}  // namespace orbitool

#endif
