#ifndef ORBITOOL_RESOLUTIONS_HPP
#define ORBITOOL_RESOLUTIONS_HPP

#include "orbitool/fan.hpp"
#include "orbitool/staircase.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>

namespace orbitool {

/// The lattice decomposition of the triangle for A_r(3): vertices
/// (m1,m2,m3)/(r+1) with the up/down triangles between them.
inline Decomposition build_xi_ar3(int r) {
  if (r < 1) throw ValidationError("build_xi_ar3: r >= 1 required");
  long long d = r + 1;
  std::map<std::array<int, 3>, int> id;
  std::vector<QVec> vertices;
  for (int m1 = 0; m1 <= r + 1; ++m1)
    for (int m2 = 0; m1 + m2 <= r + 1; ++m2) {
      int m3 = r + 1 - m1 - m2;
      id[{m1, m2, m3}] = static_cast<int>(vertices.size());
      vertices.push_back({Rat(m1, d), Rat(m2, d), Rat(m3, d)});
    }
  std::vector<std::vector<int>> cells;
  for (auto& [m, vid] : id) {
    auto [m1, m2, m3] = m;
    if (m1 >= 1) {
      cells.push_back({vid, id.at({m1 - 1, m2 + 1, m3}), id.at({m1 - 1, m2, m3 + 1})});
      if (m3 >= 1)
        cells.push_back({vid, id.at({m1 - 1, m2 + 1, m3}), id.at({m1, m2 + 1, m3 - 1})});
    }
  }
  return build_decomposition(3, std::move(vertices), std::move(cells));
}

enum class A14Kind { Xi, Xi1, Xi2, Xi3, XiStar };

inline A14Kind a14_kind_from_string(const std::string& s) {
  if (s == "Xi") return A14Kind::Xi;
  if (s == "Xi_1") return A14Kind::Xi1;
  if (s == "Xi_2") return A14Kind::Xi2;
  if (s == "Xi_3") return A14Kind::Xi3;
  if (s == "Xi_star") return A14Kind::XiStar;
  throw ValidationError("build_a14: unknown kind '" + s + "'");
}

/// The named decompositions for A_1(4): Xi (4 corner simplices plus the
/// octahedron), Xi_k (octahedron split along the diagonal through v^{k,4}),
/// and Xi_star (barycentric split of the octahedron at the center).
inline Decomposition build_a14(A14Kind kind) {
  std::vector<QVec> vertices;
  std::map<std::pair<int, int>, int> vij;  // 0-based {i,j} -> id
  auto half = Rat(1, 2);
  for (int i = 0; i < 4; ++i) {
    QVec e(4, Rat(0));
    e[i] = 1;
    vertices.push_back(std::move(e));
  }
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      QVec v(4, Rat(0));
      v[i] = half;
      v[j] = half;
      vij[{i, j}] = static_cast<int>(vertices.size());
      vertices.push_back(std::move(v));
    }
  auto vid = [&](int i, int j) { return vij.at({std::min(i, j), std::max(i, j)}); };

  std::vector<std::vector<int>> cells;
  for (int i = 0; i < 4; ++i) {
    std::vector<int> corner{i};
    for (int j = 0; j < 4; ++j)
      if (j != i) corner.push_back(vid(i, j));
    cells.push_back(std::move(corner));
  }
  switch (kind) {
    case A14Kind::Xi: {
      std::vector<int> diamond;
      for (auto& [key, id] : vij) diamond.push_back(id);
      cells.push_back(std::move(diamond));
      break;
    }
    case A14Kind::Xi1:
    case A14Kind::Xi2:
    case A14Kind::Xi3: {
      int k = kind == A14Kind::Xi1 ? 0 : kind == A14Kind::Xi2 ? 1 : 2;
      int i = (k + 1) % 3, j = (k + 2) % 3;
      int p = vid(k, 3), q = vid(i, j);  // the chosen diagonal
      // equator square in cyclic order: eq[0]<->eq[2] and eq[1]<->eq[3] are
      // the antipodal pairs, so consecutive entries are the square's edges
      std::array<int, 4> eq{vid(i, 3), vid(j, 3), vid(k, j), vid(k, i)};
      for (int t = 0; t < 4; ++t) cells.push_back({p, q, eq[t], eq[(t + 1) % 4]});
      break;
    }
    case A14Kind::XiStar: {
      int c = static_cast<int>(vertices.size());
      vertices.push_back(QVec(4, Rat(1, 4)));
      for (int f = 0; f < 4; ++f) {
        // F_f: triangle of the octahedron facing corner f
        std::vector<int> cf{c};
        for (int j = 0; j < 4; ++j)
          if (j != f) cf.push_back(vid(f, j));
        cells.push_back(std::move(cf));
        // F_f': triangle avoiding coordinate f
        std::vector<int> cfp{c};
        for (int a = 0; a < 4; ++a)
          for (int b = a + 1; b < 4; ++b)
            if (a != f && b != f) cfp.push_back(vid(a, b));
        cells.push_back(std::move(cfp));
      }
      break;
    }
  }
  return build_decomposition(4, std::move(vertices), std::move(cells));
}

/// Remove a cube-pattern vertex and re-triangulate its octahedral star along
/// the chosen antipodal pair (index into the star report's pair list).
inline Decomposition blow_down(const Decomposition& d, const Group& g, int vid,
                               int pair_index) {
  StarReport star = star_classify(d, g, vid);
  if (!star.cube_pattern)
    throw ValidationError("blow_down: vertex star does not have the cube pattern");
  if (pair_index < 0 || pair_index >= static_cast<int>(star.antipodal_pairs.size()))
    throw ValidationError("blow_down: invalid diagonal choice");
  auto [p, q] = star.antipodal_pairs[pair_index];
  std::vector<std::pair<int, int>> others;
  for (int k = 0; k < 3; ++k)
    if (k != pair_index) others.push_back(star.antipodal_pairs[k]);

  std::set<int> star_cells(star.cells.begin(), star.cells.end());
  std::vector<std::vector<int>> cells;
  for (size_t ci = 0; ci < d.cells.size(); ++ci)
    if (!star_cells.count(static_cast<int>(ci))) cells.push_back(d.cells[ci]);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      std::vector<int> cell{p, q, a ? others[0].second : others[0].first,
                            b ? others[1].second : others[1].first};
      cells.push_back(std::move(cell));
    }

  // drop the vertex and reindex
  std::vector<QVec> vertices;
  std::vector<int> newid(d.vertices.size(), -1);
  for (size_t i = 0; i < d.vertices.size(); ++i) {
    if (static_cast<int>(i) == vid) continue;
    newid[i] = static_cast<int>(vertices.size());
    vertices.push_back(d.vertices[i]);
  }
  for (auto& cell : cells)
    for (int& id : cell) id = newid[id];
  return build_decomposition(d.n, std::move(vertices), std::move(cells));
}

/// The four cells of a diagonal-split octahedron around `center`, detected
/// structurally, together with the three antipodal vertex pairs.
struct FlopSite {
  std::vector<int> cells;                          // indices into cells
  std::vector<std::pair<int, int>> pairs;          // canonically sorted
  int current_pair = -1;                           // index into pairs
};

inline FlopSite find_flop_site(const Decomposition& d, const QVec& center) {
  FlopSite site;
  // vertices antipodal about the center
  std::map<int, int> partner;
  for (size_t i = 0; i < d.vertices.size(); ++i)
    for (size_t j = i + 1; j < d.vertices.size(); ++j) {
      QVec sum = d.vertices[i] + d.vertices[j];
      if (sum == Rat(2) * center) {
        partner[static_cast<int>(i)] = static_cast<int>(j);
        partner[static_cast<int>(j)] = static_cast<int>(i);
      }
    }
  // cells entirely inside the antipodal vertex set that contain a diagonal
  std::set<int> diag_candidates;
  for (size_t ci = 0; ci < d.cells.size(); ++ci) {
    const auto& cell = d.cells[ci];
    bool inside = true;
    int diag = -1;
    for (int id : cell) {
      if (!partner.count(id)) { inside = false; break; }
      if (std::binary_search(cell.begin(), cell.end(), partner.at(id))) diag = id;
    }
    if (inside && diag >= 0) {
      site.cells.push_back(static_cast<int>(ci));
      diag_candidates.insert(std::min(diag, partner.at(diag)));
    }
  }
  if (site.cells.size() != 4 || diag_candidates.size() != 1)
    throw ValidationError("flop: no diagonal-split octahedron found at " + vec_str(center));
  std::set<int> verts;
  for (int ci : site.cells)
    for (int id : d.cells[ci]) verts.insert(id);
  if (verts.size() != 6)
    throw ValidationError("flop: octahedron site does not have 6 vertices");
  std::set<int> done;
  for (int v : verts) {
    if (done.count(v)) continue;
    int w = partner.at(v);
    if (!verts.count(w)) throw ValidationError("flop: site vertices are not antipodal");
    done.insert(v);
    done.insert(w);
    site.pairs.emplace_back(std::min(v, w), std::max(v, w));
  }
  std::sort(site.pairs.begin(), site.pairs.end(),
            [&](auto& a, auto& b) { return d.vertices[a.first] < d.vertices[b.first]; });
  int diag = *diag_candidates.begin();
  for (size_t k = 0; k < site.pairs.size(); ++k)
    if (site.pairs[k].first == diag || site.pairs[k].second == diag)
      site.current_pair = static_cast<int>(k);
  return site;
}

/// Switch the diagonal of a split octahedron: the 4-fold flop.
inline Decomposition flop(const Decomposition& d, const Group& g, const QVec& center,
                          int from_pair, int to_pair) {
  FlopSite site = find_flop_site(d, center);
  if (site.current_pair != from_pair)
    throw ValidationError("flop: site diagonal is pair " +
                          std::to_string(site.current_pair) + ", not " +
                          std::to_string(from_pair));
  if (to_pair == from_pair || to_pair < 0 || to_pair >= 3)
    throw ValidationError("flop: invalid target diagonal");
  auto [p, q] = site.pairs[to_pair];
  std::vector<std::pair<int, int>> others;
  for (int k = 0; k < 3; ++k)
    if (k != to_pair) others.push_back(site.pairs[k]);
  std::set<int> old_cells(site.cells.begin(), site.cells.end());
  std::vector<std::vector<int>> cells;
  for (size_t ci = 0; ci < d.cells.size(); ++ci)
    if (!old_cells.count(static_cast<int>(ci))) cells.push_back(d.cells[ci]);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      cells.push_back({p, q, a ? others[0].second : others[0].first,
                       b ? others[1].second : others[1].first});
  return build_decomposition(d.n, d.vertices, std::move(cells));
}

/// A fully blown-down variant of the Hilb fan, one diagonal choice per
/// discrepant divisor.
struct BlowDownVariant {
  std::vector<int> choices;  // pair index per divisor, in divisor order
  bool smooth = false;
  bool crepant = false;
  long long euler = 0;
  bool fully_validated = false;  // end-to-end rebuild vs local star checks
};

struct DivisorInfo {
  int vertex = -1;
  Int coefficient = 0;
  bool cube_pattern = false;
  std::vector<std::pair<int, int>> antipodal_pairs;
};

/// End-to-end result of the Hilb pipeline for one group.
struct ResolutionReport {
  int n = 0;
  long long fixed_points = 0;
  Decomposition fan;
  std::vector<int> excluded_cones;  // staircase indices with degenerate cones
  bool smooth = false;
  bool crepant = false;
  long long euler = 0;
  std::vector<DivisorInfo> divisors;
  bool stars_disjoint = true;
  std::vector<BlowDownVariant> blow_downs;
  // flop graph: edges between blow-down variants differing in one choice
  std::vector<std::pair<int, int>> flop_edges;
};

struct PipelineOptions {
  long long enumeration_bound = 64;
  // build and fully validate every combination up to this many; beyond it,
  // combinations are checked from locally validated star re-triangulations
  long long full_combination_limit = 256;
};

inline Decomposition assemble_fan(const Group& g, const std::vector<Staircase>& fixed,
                                  std::vector<int>* excluded = nullptr) {
  std::vector<QVec> vertices;
  std::map<QVec, int> vid;
  std::vector<std::vector<int>> cells;
  for (size_t si = 0; si < fixed.size(); ++si) {
    Cone c = cone_of_staircase(g, fixed[si]);
    if (!c.full_dim) {
      if (!excluded) throw ValidationError("assemble_fan: degenerate cone");
      excluded->push_back(static_cast<int>(si));
      continue;
    }
    std::vector<int> cell;
    for (const QVec& ray : c.rays_ambient) {
      Rat sum = 0;
      for (const Rat& x : ray) sum += x;
      QVec pt = (Rat(1) / sum) * ray;
      auto it = vid.find(pt);
      int id;
      if (it == vid.end()) {
        id = static_cast<int>(vertices.size());
        vid.emplace(pt, id);
        vertices.push_back(pt);
      } else {
        id = it->second;
      }
      cell.push_back(id);
    }
    std::sort(cell.begin(), cell.end());
    cells.push_back(std::move(cell));
  }
  return build_decomposition(g.n(), std::move(vertices), std::move(cells));
}

/// Enumerate fixed points, assemble and validate the fan, evaluate the
/// toric predicates, classify discrepant divisors, and work through the
/// blow-down combinations.
inline ResolutionReport hilb_pipeline(const Group& g, const PipelineOptions& opts = {}) {
  ResolutionReport rep;
  rep.n = g.n();
  auto fixed = enumerate_fixed_points(g, opts.enumeration_bound);
  rep.fixed_points = static_cast<long long>(fixed.size());
  rep.fan = assemble_fan(g, fixed, &rep.excluded_cones);
  rep.smooth = is_smooth(rep.fan, g).smooth;
  rep.crepant = is_crepant(rep.fan, g);
  rep.euler = euler_number(rep.fan);

  for (auto& [vidx, coeff] : discrepancies(rep.fan, g)) {
    DivisorInfo info;
    info.vertex = vidx;
    info.coefficient = coeff;
    StarReport star = star_classify(rep.fan, g, vidx);
    info.cube_pattern = star.cube_pattern;
    info.antipodal_pairs = star.antipodal_pairs;
    rep.divisors.push_back(std::move(info));
  }
  // disjointness of the exceptional divisors: no two discrepant vertices
  // share a cell (equivalently, the star cell sets do not overlap)
  std::set<int> touched_cells;
  for (const auto& div : rep.divisors) {
    StarReport star = star_classify(rep.fan, g, div.vertex);
    for (int ci : star.cells)
      if (!touched_cells.insert(ci).second) rep.stars_disjoint = false;
  }

  size_t m = rep.divisors.size();
  bool all_cube = std::all_of(rep.divisors.begin(), rep.divisors.end(),
                              [](const DivisorInfo& d) { return d.cube_pattern; });
  if (m == 0 || !all_cube || !rep.stars_disjoint) return rep;

  long long total = 1;
  for (size_t i = 0; i < m; ++i) total *= 3;
  bool full = total <= opts.full_combination_limit;

  // local star data, used when there are too many combinations to rebuild
  struct LocalChoice {
    bool smooth = true;
  };
  std::vector<std::array<LocalChoice, 3>> local(m);
  bool base_rest_smooth = true;
  bool base_rest_crepant = true;
  if (!full) {
    // cells outside every star must already be unimodular, and every
    // surviving vertex must already be a lattice point
    std::set<int> star_cells;
    for (const auto& div : rep.divisors)
      for (int ci : star_classify(rep.fan, g, div.vertex).cells) star_cells.insert(ci);
    for (int off : is_smooth(rep.fan, g).offending_cells)
      if (!star_cells.count(off)) base_rest_smooth = false;
    for (size_t vi = 0; vi < rep.fan.vertices.size() && base_rest_crepant; ++vi) {
      bool removed = false;
      for (const auto& div : rep.divisors) removed |= (div.vertex == static_cast<int>(vi));
      if (!removed) base_rest_crepant = g.in_n(rep.fan.vertices[vi]);
    }
    for (size_t di = 0; di < m; ++di) {
      for (int k = 0; k < 3; ++k) {
        // the 4 replacement cells; smoothness is the only cell-local predicate
        auto [p, q] = rep.divisors[di].antipodal_pairs[k];
        std::vector<std::pair<int, int>> others;
        for (int t = 0; t < 3; ++t)
          if (t != k) others.push_back(rep.divisors[di].antipodal_pairs[t]);
        for (int a = 0; a < 2 && local[di][k].smooth; ++a)
          for (int b = 0; b < 2 && local[di][k].smooth; ++b) {
            QMat rows;
            for (int id : {p, q, a ? others[0].second : others[0].first,
                           b ? others[1].second : others[1].first})
              rows.push_back(to_qvec(g.primitive_in_n(rep.fan.vertices[id])));
            Rat dv = det(rows);
            local[di][k].smooth = (dv == 1 || dv == -1);
          }
      }
    }
  }

  std::vector<int> choice(m, 0);
  for (long long combo = 0; combo < total; ++combo) {
    long long c = combo;
    for (size_t i = 0; i < m; ++i) {
      choice[i] = static_cast<int>(c % 3);
      c /= 3;
    }
    BlowDownVariant var;
    var.choices = choice;
    if (full) {
      Decomposition blown = rep.fan;
      // blow down in canonical (descending-id) order so ids stay stable
      std::vector<std::pair<int, int>> order;  // (vertex id, choice)
      for (size_t i = 0; i < m; ++i) order.emplace_back(rep.divisors[i].vertex, choice[i]);
      std::sort(order.begin(), order.end(), std::greater<>());
      for (auto& [vidx, k] : order) blown = blow_down(blown, g, vidx, k);
      var.smooth = is_smooth(blown, g).smooth;
      var.crepant = is_crepant(blown, g);
      var.euler = euler_number(blown);
      var.fully_validated = true;
    } else {
      var.smooth = base_rest_smooth;
      for (size_t i = 0; i < m && var.smooth; ++i)
        var.smooth = local[i][choice[i]].smooth;
      var.crepant = base_rest_crepant;
      var.euler = rep.euler - 4 * static_cast<long long>(m);
      var.fully_validated = false;
    }
    rep.blow_downs.push_back(std::move(var));
  }
  for (long long a = 0; a < total; ++a)
    for (size_t i = 0; i < m; ++i) {
      long long stride = 1;
      for (size_t j = 0; j < i; ++j) stride *= 3;
      int digit = static_cast<int>((a / stride) % 3);
      for (int k = digit + 1; k < 3; ++k) {
        long long b = a + (k - digit) * stride;
        rep.flop_edges.emplace_back(a, b);
      }
    }
  return rep;
}

}  // namespace orbitool

#endif
