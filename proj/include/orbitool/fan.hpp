#ifndef ORBITOOL_FAN_HPP
#define ORBITOOL_FAN_HPP

#include "orbitool/cone.hpp"
#include "orbitool/geometry.hpp"
#include "orbitool/group.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>

namespace orbitool {

/// A rational polytope decomposition of the junior simplex: vertex list plus
/// maximal cells as vertex-id sets (cells may be non-simplicial).
struct Decomposition {
  int n = 0;                            // ambient dimension
  std::vector<QVec> vertices;           // points of the junior simplex
  std::vector<std::vector<int>> cells;  // sorted vertex ids

  std::vector<QVec> cell_points(const std::vector<int>& cell) const {
    std::vector<QVec> pts;
    pts.reserve(cell.size());
    for (int id : cell) pts.push_back(vertices[id]);
    return pts;
  }

  std::optional<int> vertex_id(const QVec& p) const {
    for (size_t i = 0; i < vertices.size(); ++i)
      if (vertices[i] == p) return static_cast<int>(i);
    return std::nullopt;
  }
};

namespace detail {

inline bool in_junior_simplex(const QVec& v) {
  Rat sum = 0;
  for (const Rat& x : v) {
    if (x < 0) return false;
    sum += x;
  }
  return sum == 1;
}

/// |det| of the full vertex matrix; the simplex's share of the quadrant.
inline Rat simplex_weight(const std::vector<QVec>& pts) {
  return boost::multiprecision::abs(det(QMat(pts.begin(), pts.end())));
}

inline Rat cell_weight(const Decomposition& d, const std::vector<int>& cell) {
  auto pts = d.cell_points(cell);
  Rat w = 0;
  for (const auto& tri : triangulate(pts)) {
    std::vector<QVec> simplex;
    for (int li : tri) simplex.push_back(pts[li]);
    w += simplex_weight(simplex);
  }
  return w;
}

/// A facet lies on the boundary of the junior simplex iff some coordinate
/// vanishes on all of its vertices.
inline bool facet_on_boundary(const Decomposition& d, const std::vector<int>& facet) {
  for (int c = 0; c < d.n; ++c) {
    bool all_zero = true;
    for (int id : facet) all_zero &= (d.vertices[id][c] == 0);
    if (all_zero) return true;
  }
  return false;
}

inline std::vector<std::vector<int>> cell_facets(const Decomposition& d,
                                                 const std::vector<int>& cell) {
  auto pts = d.cell_points(cell);
  std::vector<std::vector<int>> out;
  for (const auto& local : polytope_facets(pts)) {
    std::vector<int> ids;
    for (int li : local) ids.push_back(cell[li]);
    std::sort(ids.begin(), ids.end());
    out.push_back(std::move(ids));
  }
  return out;
}

}  // namespace detail

/// Validate and construct a decomposition: every vertex in the junior
/// simplex, exact volume tiling, and every interior facet shared by exactly
/// two cells.
inline Decomposition build_decomposition(int n, std::vector<QVec> vertices,
                                         std::vector<std::vector<int>> cells) {
  Decomposition d;
  d.n = n;
  d.vertices = std::move(vertices);
  d.cells = std::move(cells);
  std::set<QVec> vseen;
  for (const QVec& v : d.vertices) {
    if (static_cast<int>(v.size()) != n)
      throw ValidationError("decomposition: vertex dimension mismatch");
    if (!detail::in_junior_simplex(v))
      throw ValidationError("decomposition: vertex " + vec_str(v) +
                            " is not in the junior simplex");
    if (!vseen.insert(v).second)
      throw ValidationError("decomposition: duplicate vertex " + vec_str(v));
  }
  Rat total = 0;
  for (auto& cell : d.cells) {
    std::sort(cell.begin(), cell.end());
    cell.erase(std::unique(cell.begin(), cell.end()), cell.end());
    for (int id : cell)
      if (id < 0 || id >= static_cast<int>(d.vertices.size()))
        throw ValidationError("decomposition: cell references unknown vertex id");
    if (affine_dim(d.cell_points(cell)) != n - 1)
      throw ValidationError("decomposition: cell is not full-dimensional in the simplex");
    total += detail::cell_weight(d, cell);
  }
  if (total > 1)
    throw ValidationError("decomposition: cells overlap (volume sum exceeds vol(simplex))");
  if (total < 1)
    throw ValidationError("decomposition: cells leave a gap (volume sum falls short)");

  std::map<std::vector<int>, int> facet_count;
  for (const auto& cell : d.cells)
    for (auto& f : detail::cell_facets(d, cell)) ++facet_count[f];
  for (const auto& [facet, count] : facet_count) {
    bool boundary = detail::facet_on_boundary(d, facet);
    if (boundary ? count != 1 : count != 2) {
      std::string ids;
      for (int id : facet) ids += (ids.empty() ? "" : ",") + std::to_string(id);
      throw ValidationError("decomposition: dangling facet {" + ids + "} shared by " +
                            std::to_string(count) + " cell(s)");
    }
  }
  return d;
}

/// All i-dimensional faces of the decomposition, -1 <= i <= n-1.
inline std::vector<std::vector<int>> strata(const Decomposition& d, int i) {
  if (i < -1 || i > d.n - 1) throw ValidationError("strata: dimension out of range");
  if (i == -1) return {std::vector<int>{}};
  std::set<std::vector<int>> out;
  for (const auto& cell : d.cells) {
    auto pts = d.cell_points(cell);
    for (const auto& [dim, faces] : polytope_faces(pts)) {
      if (dim != i) continue;
      for (const auto& local : faces) {
        std::vector<int> ids;
        for (int li : local) ids.push_back(cell[li]);
        std::sort(ids.begin(), ids.end());
        out.insert(std::move(ids));
      }
    }
  }
  return {out.begin(), out.end()};
}

/// chi(X) = number of maximal cells.
inline long long euler_number(const Decomposition& d) {
  return static_cast<long long>(d.cells.size());
}

inline Int vertex_mv(const Group& g, const QVec& v) { return g.m_v(v); }

/// Crepant iff every vertex is a lattice point of N.
inline bool is_crepant(const Decomposition& d, const Group& g) {
  for (const QVec& v : d.vertices)
    if (!g.in_n(v)) return false;
  return true;
}

struct SmoothnessReport {
  bool smooth = true;
  std::vector<int> offending_cells;  // indices into cells
};

/// Smooth iff every maximal cell is a simplex whose scaled vertices m_v*v
/// form a Z-basis of N.
inline SmoothnessReport is_smooth(const Decomposition& d, const Group& g) {
  SmoothnessReport rep;
  for (size_t ci = 0; ci < d.cells.size(); ++ci) {
    const auto& cell = d.cells[ci];
    bool ok = static_cast<int>(cell.size()) == d.n;
    if (ok) {
      QMat rows;
      for (int id : cell) rows.push_back(to_qvec(g.primitive_in_n(d.vertices[id])));
      Rat dv = det(rows);
      ok = (dv == 1 || dv == -1);
    }
    if (!ok) {
      rep.smooth = false;
      rep.offending_cells.push_back(static_cast<int>(ci));
    }
  }
  return rep;
}

/// Vertices with m_v > 1 and their discrepancy coefficients m_v - 1.
inline std::vector<std::pair<int, Int>> discrepancies(const Decomposition& d, const Group& g) {
  std::vector<std::pair<int, Int>> out;
  for (size_t i = 0; i < d.vertices.size(); ++i) {
    Int m = g.m_v(d.vertices[i]);
    if (m > 1) out.emplace_back(static_cast<int>(i), m - 1);
  }
  return out;
}

/// Star of an interior vertex, with the combinatorial signature of a
/// (P^1)^3 exceptional divisor: 6 neighbour rays in 3 antipodal pairs that
/// sum to the primitive vector of the vertex ray, arranged in 8 octant cells.
struct StarReport {
  int vertex = -1;
  std::vector<int> cells;      // indices into decomposition cells
  std::vector<int> neighbors;  // vertex ids
  bool cube_pattern = false;
  std::vector<std::pair<int, int>> antipodal_pairs;  // vertex id pairs
};

inline StarReport star_classify(const Decomposition& d, const Group& g, int vid) {
  if (vid < 0 || vid >= static_cast<int>(d.vertices.size()))
    throw ValidationError("star_classify: not a vertex");
  const QVec& v = d.vertices[vid];
  for (const Rat& x : v)
    if (x == 0)
      throw ValidationError("star_classify: vertex " + vec_str(v) +
                            " is not interior to the simplex");
  StarReport rep;
  rep.vertex = vid;
  std::set<int> nb;
  for (size_t ci = 0; ci < d.cells.size(); ++ci) {
    const auto& cell = d.cells[ci];
    if (!std::binary_search(cell.begin(), cell.end(), vid)) continue;
    rep.cells.push_back(static_cast<int>(ci));
    for (int id : cell)
      if (id != vid) nb.insert(id);
  }
  rep.neighbors.assign(nb.begin(), nb.end());

  // cube pattern: 6 neighbours, 8 simplicial cells, 3 antipodal pairs
  if (rep.neighbors.size() != 6 || rep.cells.size() != 8) return rep;
  for (int ci : rep.cells)
    if (static_cast<int>(d.cells[ci].size()) != d.n) return rep;
  IVec pv = g.primitive_in_n(v);
  std::map<int, int> partner;
  for (int u : rep.neighbors) {
    if (partner.count(u)) continue;
    for (int u2 : rep.neighbors) {
      if (u2 == u || partner.count(u2)) continue;
      IVec yu = g.primitive_in_n(d.vertices[u]);
      IVec yu2 = g.primitive_in_n(d.vertices[u2]);
      bool sums = true;
      for (int c = 0; c < d.n; ++c) sums &= (yu[c] + yu2[c] == pv[c]);
      if (sums) {
        partner[u] = u2;
        partner[u2] = u;
        rep.antipodal_pairs.emplace_back(u, u2);
        break;
      }
    }
  }
  if (rep.antipodal_pairs.size() != 3) {
    rep.antipodal_pairs.clear();
    return rep;
  }
  // the 8 cells must be exactly the octants: one neighbour per pair
  std::set<std::vector<int>> want;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) {
        std::vector<int> cell{vid,
                              a ? rep.antipodal_pairs[0].second : rep.antipodal_pairs[0].first,
                              b ? rep.antipodal_pairs[1].second : rep.antipodal_pairs[1].first,
                              c ? rep.antipodal_pairs[2].second : rep.antipodal_pairs[2].first};
        std::sort(cell.begin(), cell.end());
        want.insert(std::move(cell));
      }
  std::set<std::vector<int>> have;
  for (int ci : rep.cells) have.insert(d.cells[ci]);
  rep.cube_pattern = (want == have);
  if (!rep.cube_pattern) rep.antipodal_pairs.clear();
  return rep;
}

/// The unique integer relation across an interior wall between two
/// unimodular simplicial cells, normalized so the opposite rays have
/// coefficient one. Coefficients are fiber degrees of the divisors D_u.
struct WallRelation {
  std::vector<int> facet;   // vertex ids
  int cell_a = -1, cell_b = -1;
  int opposite_a = -1, opposite_b = -1;         // vertex ids
  std::vector<std::pair<int, Int>> coefficients;  // (vertex id in facet, a_u)
};

inline WallRelation wall_relation(const Decomposition& d, const Group& g,
                                  std::vector<int> facet) {
  std::sort(facet.begin(), facet.end());
  std::vector<int> owners;
  for (size_t ci = 0; ci < d.cells.size(); ++ci) {
    bool contains = true;
    for (int id : facet)
      contains &= std::binary_search(d.cells[ci].begin(), d.cells[ci].end(), id);
    if (contains) owners.push_back(static_cast<int>(ci));
  }
  if (owners.size() != 2)
    throw ValidationError("wall_relation: facet is not interior (shared by " +
                          std::to_string(owners.size()) + " cells)");
  WallRelation rel;
  rel.facet = facet;
  rel.cell_a = owners[0];
  rel.cell_b = owners[1];
  for (int ci : owners) {
    const auto& cell = d.cells[ci];
    if (static_cast<int>(cell.size()) != d.n)
      throw ValidationError("wall_relation: neighbouring cell is not simplicial");
  }
  auto opposite = [&](int ci) {
    for (int id : d.cells[ci])
      if (!std::binary_search(facet.begin(), facet.end(), id)) return id;
    throw ValidationError("wall_relation: facet equals a cell");
  };
  rel.opposite_a = opposite(owners[0]);
  rel.opposite_b = opposite(owners[1]);

  // expand prim(v') in the basis (prim(v), prim(u) for u in facet)
  QMat basis;
  std::vector<int> basis_ids{rel.opposite_a};
  basis.push_back(to_qvec(g.primitive_in_n(d.vertices[rel.opposite_a])));
  for (int id : facet) {
    basis_ids.push_back(id);
    basis.push_back(to_qvec(g.primitive_in_n(d.vertices[id])));
  }
  Rat det_a = det(basis);
  if (det_a != 1 && det_a != -1)
    throw ValidationError("wall_relation: neighbouring cell is not unimodular");
  QVec target = to_qvec(g.primitive_in_n(d.vertices[rel.opposite_b]));
  QVec coeff = mul(target, inverse(basis));  // solve x * basis = target
  if (coeff[0] != -1)
    throw ValidationError("wall_relation: opposite-ray coefficient is not -1");
  for (size_t k = 1; k < coeff.size(); ++k) {
    if (den(coeff[k]) != 1)
      throw ValidationError("wall_relation: non-integer relation coefficient");
    rel.coefficients.emplace_back(basis_ids[k], -num(coeff[k]));
  }
  return rel;
}

/// Hilbert basis (minimal monoid generators) of the M-integral points of
/// the dual cone of C: the invariant monomials of the local model.
/// Candidates are enumerated over the zonotope box spanned by the primitive
/// extreme-ray generators, which provably contains every irreducible.
inline std::vector<ExpVec> dual_cone_hilbert_basis(const Group& g, const Cone& c,
                                                   long long degree_bound = -1) {
  if (!c.full_dim)
    throw ValidationError("dual_cone_hilbert_basis: cone is not full-dimensional");
  if (degree_bound < 0) degree_bound = 4 * g.d();
  int n = g.n();
  std::vector<QVec> dual_rays = extreme_rays(c.rays_ambient, n);
  std::vector<ExpVec> ray_gens;
  for (const QVec& w : dual_rays) ray_gens.push_back(g.primitive_in_m(w));

  ExpVec lo(n, 0), hi(n, 0);
  for (const ExpVec& r : ray_gens)
    for (int i = 0; i < n; ++i) {
      if (r[i] < 0) lo[i] += r[i];
      else hi[i] += r[i];
    }
  for (int i = 0; i < n; ++i)
    if (hi[i] > degree_bound || -lo[i] > degree_bound)
      throw ResourceError(
          "dual_cone_hilbert_basis: degree bound " + std::to_string(degree_bound) +
          " is insufficient; raise it to at least " +
          std::to_string(std::max<long long>(hi[i], -static_cast<long long>(lo[i]))));

  auto in_dual = [&](const ExpVec& x) {
    for (const QVec& ray : c.rays_ambient)
      if (dot(ray, x) < 0) return false;
    return true;
  };
  auto height = [&](const ExpVec& x) {
    Rat h = 0;
    for (const QVec& ray : c.rays_ambient) h += dot(ray, x);
    return h;
  };

  std::vector<ExpVec> monoid;
  ExpVec x = lo;
  while (true) {
    bool zero = std::all_of(x.begin(), x.end(), [](int v) { return v == 0; });
    if (!zero && in_dual(x) && g.in_m(x)) monoid.push_back(x);
    int pos = n - 1;
    while (pos >= 0 && x[pos] == hi[pos]) { x[pos] = lo[pos]; --pos; }
    if (pos < 0) break;
    ++x[pos];
  }
  std::sort(monoid.begin(), monoid.end(), [&](const ExpVec& a, const ExpVec& b) {
    Rat ha = height(a), hb = height(b);
    if (ha != hb) return ha < hb;
    return a < b;
  });

  std::vector<ExpVec> basis;
  for (const ExpVec& cand : monoid) {
    bool reducible = false;
    for (const ExpVec& b : basis) {
      ExpVec rest(n);
      bool rest_zero = true;
      for (int i = 0; i < n; ++i) {
        rest[i] = cand[i] - b[i];
        rest_zero &= (rest[i] == 0);
      }
      if (rest_zero) continue;
      if (in_dual(rest) && g.in_m(rest)) { reducible = true; break; }
    }
    if (!reducible) basis.push_back(cand);
  }
  std::sort(basis.begin(), basis.end());
  return basis;
}

/// Canonical form for comparing decompositions up to vertex relabeling.
inline std::pair<std::vector<QVec>, std::set<std::vector<int>>> canonical_form(
    const Decomposition& d) {
  std::vector<int> order(d.vertices.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return d.vertices[a] < d.vertices[b]; });
  std::vector<int> newid(order.size());
  std::vector<QVec> verts(order.size());
  for (size_t rank = 0; rank < order.size(); ++rank) {
    newid[order[rank]] = static_cast<int>(rank);
    verts[rank] = d.vertices[order[rank]];
  }
  std::set<std::vector<int>> cells;
  for (const auto& cell : d.cells) {
    std::vector<int> c;
    for (int id : cell) c.push_back(newid[id]);
    std::sort(c.begin(), c.end());
    cells.insert(std::move(c));
  }
  return {verts, cells};
}

inline bool same_decomposition(const Decomposition& a, const Decomposition& b) {
  return canonical_form(a) == canonical_form(b);
}

}  // namespace orbitool

#endif
