#ifndef ORBITOOL_GEOMETRY_HPP
#define ORBITOOL_GEOMETRY_HPP

#include "orbitool/linalg.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace orbitool {

/// Affine dimension of a point set.
inline int affine_dim(const std::vector<QVec>& pts) {
  if (pts.empty()) return -1;
  QMat diffs;
  for (size_t i = 1; i < pts.size(); ++i) diffs.push_back(pts[i] - pts[0]);
  return diffs.empty() ? 0 : rank(diffs);
}

inline bool affinely_independent(const std::vector<QVec>& pts) {
  return affine_dim(pts) == static_cast<int>(pts.size()) - 1;
}

namespace detail {

/// Coordinates of the points within their own affine hull: an exact chart
/// pts[i] = origin + coords[i] * basis.
struct AffineChart {
  int dim = 0;
  std::vector<QVec> coords;  // one per input point, length dim
};

inline AffineChart affine_chart(const std::vector<QVec>& pts) {
  AffineChart chart;
  if (pts.empty()) return chart;
  size_t amb = pts[0].size();
  QMat diffs;
  for (size_t i = 1; i < pts.size(); ++i) diffs.push_back(pts[i] - pts[0]);
  // pick a row basis of the difference space
  QMat reduced = diffs;
  int d = row_reduce(reduced);
  chart.dim = d;
  QMat basis(reduced.begin(), reduced.begin() + d);
  // coords: solve x * basis = diff  (basis rows are reduced-echelon, so the
  // pivot columns read the solution off directly)
  std::vector<size_t> pivots;
  for (int i = 0; i < d; ++i) {
    size_t c = 0;
    while (c < amb && basis[i][c] == 0) ++c;
    pivots.push_back(c);
  }
  chart.coords.assign(pts.size(), QVec(d, Rat(0)));
  for (size_t i = 1; i < pts.size(); ++i) {
    QVec diff = pts[i] - pts[0];
    QVec x(d, Rat(0));
    for (int k = 0; k < d; ++k) {
      x[k] = diff[pivots[k]];
      for (size_t c = 0; c < amb; ++c) diff[c] -= x[k] * basis[k][c];
    }
    if (!is_zero(diff))
      throw ValidationError("affine_chart: point outside the affine hull");
    chart.coords[i] = std::move(x);
  }
  return chart;
}

/// Facets of a full-dimensional polytope given by vertex coordinates in its
/// own dimension. Brute force over hyperplane-spanning vertex subsets.
inline std::vector<std::vector<int>> facets_in_chart(const std::vector<QVec>& coords) {
  int k = coords.empty() ? 0 : static_cast<int>(coords[0].size());
  int m = static_cast<int>(coords.size());
  if (k == 0) return {};
  std::set<std::vector<int>> found;
  std::vector<int> subset(k);
  auto consider = [&]() {
    QMat rows;  // homogeneous: hyperplane { x : <f, x> + c = 0 }
    for (int i : subset) {
      QVec row = coords[i];
      row.push_back(1);
      rows.push_back(std::move(row));
    }
    QMat ker = nullspace(rows);
    if (ker.size() != 1) return;
    const QVec& f = ker[0];
    int pos = 0, neg = 0;
    std::vector<int> on;
    for (int i = 0; i < m; ++i) {
      Rat v = f[k];
      for (int c = 0; c < k; ++c) v += f[c] * coords[i][c];
      if (v > 0) ++pos;
      else if (v < 0) ++neg;
      else on.push_back(i);
    }
    if (pos > 0 && neg > 0) return;   // not supporting
    if (pos == 0 && neg == 0) return; // degenerate
    found.insert(on);
  };
  auto rec = [&](auto&& self, int pos, int start) -> void {
    if (pos == k) { consider(); return; }
    for (int i = start; i < m; ++i) {
      subset[pos] = i;
      self(self, pos + 1, i + 1);
    }
  };
  rec(rec, 0, 0);
  return {found.begin(), found.end()};
}

}  // namespace detail

/// Geometric facets of the polytope conv(pts), as index sets into pts.
inline std::vector<std::vector<int>> polytope_facets(const std::vector<QVec>& pts) {
  if (affinely_independent(pts)) {
    // simplex: drop one vertex at a time
    std::vector<std::vector<int>> f;
    for (size_t skip = 0; skip < pts.size(); ++skip) {
      std::vector<int> ids;
      for (size_t i = 0; i < pts.size(); ++i)
        if (i != skip) ids.push_back(static_cast<int>(i));
      if (!ids.empty()) f.push_back(std::move(ids));
    }
    return f;
  }
  auto chart = detail::affine_chart(pts);
  return detail::facets_in_chart(chart.coords);
}

/// All proper and improper faces of conv(pts) grouped by dimension
/// (0 .. dim); excludes the empty face.
inline std::map<int, std::set<std::vector<int>>> polytope_faces(const std::vector<QVec>& pts) {
  std::map<int, std::set<std::vector<int>>> faces;
  std::vector<int> all(pts.size());
  for (size_t i = 0; i < pts.size(); ++i) all[i] = static_cast<int>(i);
  auto rec = [&](auto&& self, const std::vector<int>& ids) -> void {
    std::vector<QVec> sub;
    for (int i : ids) sub.push_back(pts[i]);
    int d = affine_dim(sub);
    if (!faces[d].insert(ids).second) return;
    if (d == 0) return;
    for (const auto& facet_local : polytope_facets(sub)) {
      std::vector<int> ids2;
      for (int li : facet_local) ids2.push_back(ids[li]);
      std::sort(ids2.begin(), ids2.end());
      self(self, ids2);
    }
  };
  rec(rec, all);
  return faces;
}

/// Triangulation of conv(pts) into simplex index sets, fanned from the
/// first vertex.
inline std::vector<std::vector<int>> triangulate(const std::vector<QVec>& pts) {
  std::vector<int> all(pts.size());
  for (size_t i = 0; i < pts.size(); ++i) all[i] = static_cast<int>(i);
  auto rec = [&](auto&& self, const std::vector<int>& ids) -> std::vector<std::vector<int>> {
    std::vector<QVec> sub;
    for (int i : ids) sub.push_back(pts[i]);
    if (affinely_independent(sub)) return {ids};
    int apex = ids[0];
    std::vector<std::vector<int>> tris;
    for (const auto& facet_local : polytope_facets(sub)) {
      std::vector<int> fids;
      bool has_apex = false;
      for (int li : facet_local) {
        fids.push_back(ids[li]);
        has_apex |= (ids[li] == apex);
      }
      if (has_apex) continue;
      for (auto& t : self(self, fids)) {
        t.push_back(apex);
        std::sort(t.begin(), t.end());
        tris.push_back(std::move(t));
      }
    }
    return tris;
  };
  return rec(rec, all);
}

}  // namespace orbitool

#endif
