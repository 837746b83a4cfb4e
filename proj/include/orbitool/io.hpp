#ifndef ORBITOOL_IO_HPP
#define ORBITOOL_IO_HPP

#include "orbitool/fan.hpp"
#include "orbitool/group.hpp"
#include "orbitool/resolutions.hpp"
#include "orbitool/staircase.hpp"

#include <json.hpp>

#include <limits>
#include <set>
#include <sstream>
#include <string>

namespace orbitool {

using json = nlohmann::ordered_json;

inline long long json_int(const Int& v, const std::string& what) {
  if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
    throw ValidationError(what + " does not fit a 64-bit JSON integer");
  return static_cast<long long>(v);
}

inline json rat_json(const Rat& q) {
  return json::array({json_int(num(q), "numerator"), json_int(den(q), "denominator")});
}

inline Rat rat_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    throw ValidationError("expected a rational as [num, den]");
  long long n = j[0].get<long long>(), d = j[1].get<long long>();
  if (d == 0) throw ValidationError("rational with zero denominator");
  return Rat(n, d);
}

inline json qvec_json(const QVec& v) {
  json a = json::array();
  for (const Rat& q : v) a.push_back(rat_json(q));
  return a;
}

inline QVec qvec_from_json(const json& j) {
  if (!j.is_array()) throw ValidationError("expected a point as an array of rationals");
  QVec v;
  for (const auto& e : j) v.push_back(rat_from_json(e));
  return v;
}

// ---- group specs ----------------------------------------------------------

inline void reject_unknown_fields(const json& j, std::initializer_list<const char*> allowed,
                                  const std::string& what) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) ok |= (it.key() == k);
    if (!ok) throw ValidationError(what + ": unknown field '" + it.key() + "'");
  }
}

inline Group group_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("group spec: expected a JSON object");
  if (j.contains("family")) {
    reject_unknown_fields(j, {"family", "r", "n"}, "group spec");
    if (!j["family"].is_string() || j["family"].get<std::string>() != "A")
      throw ValidationError("group spec: unknown family");
    if (!j.contains("r") || !j["r"].is_number_integer() ||
        !j.contains("n") || !j["n"].is_number_integer())
      throw ValidationError("group spec: family form requires integer fields r and n");
    return Group::a_family(j["r"].get<int>(), j["n"].get<int>());
  }
  reject_unknown_fields(j, {"n", "d", "gens"}, "group spec");
  if (!j.contains("n") || !j["n"].is_number_integer() ||
      !j.contains("d") || !j["d"].is_number_integer() ||
      !j.contains("gens") || !j["gens"].is_array())
    throw ValidationError("group spec: expected fields n, d, gens");
  std::vector<std::vector<long long>> gens;
  for (const auto& row : j["gens"]) {
    if (!row.is_array()) throw ValidationError("group spec: generator is not an array");
    std::vector<long long> g;
    for (const auto& x : row) {
      if (!x.is_number_integer()) throw ValidationError("group spec: non-integer exponent");
      g.push_back(x.get<long long>());
    }
    gens.push_back(std::move(g));
  }
  return Group(j["n"].get<int>(), j["d"].get<long long>(), std::move(gens));
}

inline json group_to_json(const Group& g) {
  json j;
  j["n"] = g.n();
  j["d"] = g.d();
  j["gens"] = g.gens();
  return j;
}

inline json group_info_json(const Group& g) {
  json j;
  j["schema"] = "orbitool/1";
  j["group"] = group_to_json(g);
  j["order"] = json_int(g.order(), "group order");
  j["invariant_factors"] = g.invariant_factors();
  j["is_a_family"] = g.is_a_family();
  return j;
}

// ---- fan documents --------------------------------------------------------

inline json fan_to_json(const Group& g, const Decomposition& d) {
  json j;
  j["schema"] = "orbitool/1";
  j["group"] = group_to_json(g);
  json verts = json::array();
  for (const QVec& v : d.vertices) verts.push_back(qvec_json(v));
  j["vertices"] = std::move(verts);
  j["cells"] = d.cells;
  return j;
}

inline std::pair<Group, Decomposition> fan_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("fan document: expected a JSON object");
  reject_unknown_fields(j, {"schema", "group", "vertices", "cells"}, "fan document");
  if (!j.contains("schema") || j["schema"] != "orbitool/1")
    throw ValidationError("fan document: missing or unsupported schema (want \"orbitool/1\")");
  if (!j.contains("group") || !j.contains("vertices") || !j.contains("cells"))
    throw ValidationError("fan document: expected fields schema, group, vertices, cells");
  Group g = group_from_json(j["group"]);
  std::vector<QVec> vertices;
  for (const auto& v : j["vertices"]) {
    QVec pt = qvec_from_json(v);
    if (static_cast<int>(pt.size()) != g.n())
      throw ValidationError("fan document: vertex dimension != n");
    vertices.push_back(std::move(pt));
  }
  std::vector<std::vector<int>> cells;
  for (const auto& c : j["cells"]) {
    if (!c.is_array()) throw ValidationError("fan document: cell is not an array");
    std::vector<int> cell;
    for (const auto& id : c) {
      if (!id.is_number_integer()) throw ValidationError("fan document: non-integer vertex id");
      cell.push_back(id.get<int>());
    }
    cells.push_back(std::move(cell));
  }
  Decomposition d = build_decomposition(g.n(), std::move(vertices), std::move(cells));
  return {std::move(g), std::move(d)};
}

// ---- reports --------------------------------------------------------------

inline json staircase_json(const Staircase& s) {
  json a = json::array();
  for (const ExpVec& p : s.pts) a.push_back(p);
  return a;
}

inline json fixed_points_json(const Group& g, const std::vector<Staircase>& fixed) {
  json j;
  j["schema"] = "orbitool/1";
  j["group"] = group_to_json(g);
  j["count"] = fixed.size();
  json list = json::array();
  for (const Staircase& s : fixed) {
    json entry;
    entry["staircase"] = staircase_json(s);
    json gens = json::array();
    for (const ExpVec& m : minimal_generators(s)) gens.push_back(m);
    entry["generators"] = std::move(gens);
    list.push_back(std::move(entry));
  }
  j["fixed_points"] = std::move(list);
  return j;
}

inline json fan_check_json(const Group& g, const Decomposition& d) {
  json j;
  j["schema"] = "orbitool/1";
  SmoothnessReport sm = is_smooth(d, g);
  j["smooth"] = sm.smooth;
  if (!sm.smooth) j["singular_cells"] = sm.offending_cells;
  j["crepant"] = is_crepant(d, g);
  j["euler"] = euler_number(d);
  json disc = json::array();
  for (auto& [vid, coeff] : discrepancies(d, g)) {
    json e;
    e["vertex"] = vid;
    e["point"] = qvec_json(d.vertices[vid]);
    e["coefficient"] = json_int(coeff, "discrepancy coefficient");
    disc.push_back(std::move(e));
  }
  j["discrepancies"] = std::move(disc);
  return j;
}

inline json wall_json(const Decomposition& d, const WallRelation& rel) {
  json j;
  j["schema"] = "orbitool/1";
  j["facet"] = rel.facet;
  j["cells"] = json::array({rel.cell_a, rel.cell_b});
  j["opposite"] = json::array({rel.opposite_a, rel.opposite_b});
  json coeffs = json::array();
  for (auto& [vid, a] : rel.coefficients) {
    json e;
    e["vertex"] = vid;
    e["point"] = qvec_json(d.vertices[vid]);
    e["degree"] = json_int(a, "wall coefficient");
    coeffs.push_back(std::move(e));
  }
  j["coefficients"] = std::move(coeffs);
  return j;
}

inline json hilbert_basis_json(const std::vector<ExpVec>& basis) {
  json j;
  j["schema"] = "orbitool/1";
  j["generators"] = json::array();
  for (const ExpVec& b : basis) j["generators"].push_back(b);
  return j;
}

inline json resolution_report_json(const Group& g, const ResolutionReport& rep) {
  json j;
  j["schema"] = "orbitool/1";
  j["group"] = group_to_json(g);
  j["fixed_points"] = rep.fixed_points;
  j["excluded_cones"] = rep.excluded_cones;
  j["fan"] = fan_to_json(g, rep.fan);
  j["smooth"] = rep.smooth;
  j["crepant"] = rep.crepant;
  j["euler"] = rep.euler;
  json divs = json::array();
  for (const auto& div : rep.divisors) {
    json e;
    e["vertex"] = div.vertex;
    e["point"] = qvec_json(rep.fan.vertices[div.vertex]);
    e["coefficient"] = json_int(div.coefficient, "discrepancy coefficient");
    e["cube_pattern"] = div.cube_pattern;
    json pairs = json::array();
    for (auto& [a, b] : div.antipodal_pairs) pairs.push_back(json::array({a, b}));
    e["antipodal_pairs"] = std::move(pairs);
    divs.push_back(std::move(e));
  }
  j["discrepant_divisors"] = std::move(divs);
  j["stars_disjoint"] = rep.stars_disjoint;
  json blows = json::array();
  for (const auto& var : rep.blow_downs) {
    json e;
    e["choices"] = var.choices;
    e["smooth"] = var.smooth;
    e["crepant"] = var.crepant;
    e["euler"] = var.euler;
    e["fully_validated"] = var.fully_validated;
    blows.push_back(std::move(e));
  }
  j["blow_downs"] = std::move(blows);
  json edges = json::array();
  for (auto& [a, b] : rep.flop_edges) edges.push_back(json::array({a, b}));
  j["flop_edges"] = std::move(edges);
  return j;
}

inline json error_json(const std::string& type, const std::string& message) {
  json j;
  j["error"] = json{{"type", type}, {"message", message}};
  return j;
}

// ---- staircase text diagrams ----------------------------------------------

/// UTF-8 grid rendering: for n = 2 one grid (Z2 up, Z1 right); higher n is
/// layered over the trailing coordinates. A bullet marks a monomial of the
/// staircase.
inline std::string staircase_text(const Staircase& s) {
  int n = s.n;
  ExpVec box(n, 1);
  for (const ExpVec& p : s.pts)
    for (int i = 0; i < n; ++i) box[i] = std::max(box[i], p[i] + 1);
  std::ostringstream out;
  auto grid = [&](const ExpVec& tail) {
    for (int y = box[1] - 1; y >= 0; --y) {
      for (int x = 0; x < box[0]; ++x) {
        ExpVec p = tail;
        p[0] = x;
        p[1] = y;
        out << (s.contains(p) ? "•" : "·") << ' ';
      }
      out << '\n';
    }
  };
  if (n == 1) {
    for (int x = 0; x < box[0]; ++x) out << (s.contains({x}) ? "•" : "·") << ' ';
    out << '\n';
    return out.str();
  }
  ExpVec tail(n, 0);
  while (true) {
    if (n > 2) {
      out << "layer (";
      for (int i = 2; i < n; ++i) out << (i > 2 ? "," : "") << tail[i];
      out << "):\n";
    }
    grid(tail);
    int pos = n - 1;
    while (pos >= 2 && tail[pos] == box[pos] - 1) { tail[pos] = 0; --pos; }
    if (pos < 2) break;
    ++tail[pos];
    out << '\n';
  }
  return out.str();
}

// ---- SVG (n = 3) ----------------------------------------------------------

namespace detail {

/// Deterministic fixed-point decimal of a rational, 2 places.
inline std::string svg_num(const Rat& q) {
  Int scaled = num(q * 100) / den(q * 100);
  // round half away from zero
  Rat rem = q * 100 - Rat(scaled);
  if (rem >= Rat(1, 2)) ++scaled;
  if (rem <= Rat(-1, 2)) --scaled;
  bool neg = scaled < 0;
  Int a = neg ? -scaled : scaled;
  std::string whole = Int(a / 100).str();
  std::string frac = Int(a % 100).str();
  if (frac.size() < 2) frac = "0" + frac;
  return (neg ? "-" : "") + whole + "." + frac;
}

}  // namespace detail

/// SVG picture of a decomposition of the triangle: the simplex is drawn as a
/// fixed equilateral triangle with the first coordinate at the top corner and
/// vertices labeled by their integer triples on the common denominator.
inline std::string decomposition_svg(const Decomposition& d) {
  if (d.n != 3) throw ValidationError("svg rendering is only available for n = 3");
  const QVec corner1{Rat(250), Rat(40)};
  const QVec corner2{Rat(40), Rat(420)};
  const QVec corner3{Rat(460), Rat(420)};
  auto embed = [&](const QVec& v) {
    QVec p(2, Rat(0));
    for (int c = 0; c < 2; ++c)
      p[c] = v[0] * corner1[c] + v[1] * corner2[c] + v[2] * corner3[c];
    return p;
  };
  Int denom = 1;
  for (const QVec& v : d.vertices)
    for (const Rat& x : v) denom = int_lcm(denom, den(x));

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"500\" height=\"470\" "
         "viewBox=\"0 0 500 470\">\n";
  std::set<std::pair<int, int>> edges;
  for (const auto& cell : d.cells) {
    auto pts = d.cell_points(cell);
    for (const auto& facet : polytope_facets(pts))
      if (facet.size() == 2)
        edges.insert({std::min(cell[facet[0]], cell[facet[1]]),
                      std::max(cell[facet[0]], cell[facet[1]])});
  }
  for (auto& [a, b] : edges) {
    QVec pa = embed(d.vertices[a]), pb = embed(d.vertices[b]);
    out << "  <line x1=\"" << detail::svg_num(pa[0]) << "\" y1=\"" << detail::svg_num(pa[1])
        << "\" x2=\"" << detail::svg_num(pb[0]) << "\" y2=\"" << detail::svg_num(pb[1])
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  }
  for (size_t i = 0; i < d.vertices.size(); ++i) {
    QVec p = embed(d.vertices[i]);
    out << "  <circle cx=\"" << detail::svg_num(p[0]) << "\" cy=\"" << detail::svg_num(p[1])
        << "\" r=\"3\" fill=\"black\"/>\n";
    std::string label = "(";
    for (int c = 0; c < 3; ++c) {
      Rat m = d.vertices[i][c] * Rat(denom);
      label += (c ? "," : "") + num(m).str();
    }
    label += ")";
    out << "  <text x=\"" << detail::svg_num(p[0] + 5) << "\" y=\""
        << detail::svg_num(p[1] - 5) << "\" font-size=\"11\">" << label << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

// ---- DOT flop graph ---------------------------------------------------------

inline std::string flop_graph_dot(const ResolutionReport& rep) {
  std::ostringstream out;
  out << "graph flops {\n";
  for (size_t i = 0; i < rep.blow_downs.size(); ++i) {
    out << "  v" << i << " [label=\"";
    const auto& c = rep.blow_downs[i].choices;
    for (size_t k = 0; k < c.size(); ++k) out << (k ? "," : "") << c[k];
    out << "\"];\n";
  }
  for (auto& [a, b] : rep.flop_edges) out << "  v" << a << " -- v" << b << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace orbitool

#endif
