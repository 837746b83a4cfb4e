#include "orbitool/orbitool.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace orbitool;

namespace {

Decomposition single_simplex(int n) {
  std::vector<QVec> verts;
  for (int i = 0; i < n; ++i) {
    QVec e(n, Rat(0));
    e[i] = 1;
    verts.push_back(std::move(e));
  }
  std::vector<int> cell(n);
  for (int i = 0; i < n; ++i) cell[i] = i;
  return build_decomposition(n, std::move(verts), {cell});
}

int find_vertex(const Decomposition& d, const QVec& p) {
  auto id = d.vertex_id(p);
  REQUIRE(id.has_value());
  return *id;
}

QVec v14(int i, int j) {
  QVec v(4, Rat(0));
  v[i] = Rat(1, 2);
  v[j] = Rat(1, 2);
  return v;
}

}  // namespace

TEST_CASE("decomposition validation") {
  SECTION("Xi for A_1(4): 10 vertices, 5 cells") {
    Decomposition xi = build_a14(A14Kind::Xi);
    CHECK(xi.vertices.size() == 10);
    CHECK(xi.cells.size() == 5);
  }
  SECTION("single junior simplex") {
    CHECK(single_simplex(3).cells.size() == 1);
    CHECK(single_simplex(4).cells.size() == 1);
  }
  SECTION("Xi* for A_1(4): 11 vertices, 12 simplices") {
    Decomposition xs = build_a14(A14Kind::XiStar);
    CHECK(xs.vertices.size() == 11);
    CHECK(xs.cells.size() == 12);
  }
  SECTION("gap, overlap, and dangling facets are rejected") {
    std::vector<QVec> verts{{Rat(1), Rat(0)}, {Rat(0), Rat(1)}, {Rat(1, 2), Rat(1, 2)}};
    CHECK_THROWS_WITH(build_decomposition(2, verts, {{0, 2}}),
                      Catch::Matchers::ContainsSubstring("gap"));
    CHECK_THROWS_WITH(build_decomposition(2, verts, {{0, 1}, {0, 2}}),
                      Catch::Matchers::ContainsSubstring("overlap"));
    // T-vertex: the edge (e1, c) is split on one side but whole on the other,
    // so volumes match while the facet keys do not pair up
    std::vector<QVec> verts3{{Rat(1), Rat(0), Rat(0)},
                             {Rat(0), Rat(1), Rat(0)},
                             {Rat(0), Rat(0), Rat(1)},
                             {Rat(1, 3), Rat(1, 3), Rat(1, 3)},
                             {Rat(2, 3), Rat(1, 6), Rat(1, 6)}};
    CHECK_THROWS_WITH(build_decomposition(3, verts3,
                                          {{0, 1, 4}, {1, 4, 3}, {1, 2, 3}, {0, 2, 3}}),
                      Catch::Matchers::ContainsSubstring("dangling"));
    CHECK_THROWS_WITH(build_decomposition(2, {{Rat(1, 2), Rat(1, 4)}}, {}),
                      Catch::Matchers::ContainsSubstring("junior simplex"));
  }
}

TEST_CASE("strata") {
  Decomposition xi = build_a14(A14Kind::Xi);
  CHECK(strata(xi, 3).size() == 5);
  CHECK(strata(xi, -1).size() == 1);
  CHECK(strata(single_simplex(4), 3).size() == 1);
  Decomposition xs = build_a14(A14Kind::XiStar);
  CHECK(strata(xs, 0).size() == 11);
  CHECK_THROWS_AS(strata(xs, 4), ValidationError);
}

TEST_CASE("euler numbers") {
  CHECK(euler_number(build_a14(A14Kind::XiStar)) == 12);
  CHECK(euler_number(build_a14(A14Kind::Xi1)) == 8);
  CHECK(euler_number(build_a14(A14Kind::Xi2)) == 8);
  CHECK(euler_number(build_a14(A14Kind::Xi3)) == 8);
  CHECK(euler_number(single_simplex(3)) == 1);
}

TEST_CASE("crepancy") {
  Group g = Group::a_family(1, 4);
  CHECK(is_crepant(build_a14(A14Kind::Xi), g));
  CHECK(is_crepant(build_a14(A14Kind::Xi1), g));
  CHECK_FALSE(is_crepant(build_a14(A14Kind::XiStar), g));
  CHECK(is_crepant(single_simplex(4), g));
}

TEST_CASE("smoothness") {
  Group g = Group::a_family(1, 4);
  SECTION("Xi is singular exactly at the octahedron") {
    Decomposition xi = build_a14(A14Kind::Xi);
    auto rep = is_smooth(xi, g);
    CHECK_FALSE(rep.smooth);
    REQUIRE(rep.offending_cells.size() == 1);
    CHECK(xi.cells[rep.offending_cells[0]].size() == 6);
  }
  CHECK(is_smooth(build_a14(A14Kind::XiStar), g).smooth);
  for (auto k : {A14Kind::Xi1, A14Kind::Xi2, A14Kind::Xi3})
    CHECK(is_smooth(build_a14(k), g).smooth);
  for (int r = 1; r <= 4; ++r)
    CHECK(is_smooth(build_xi_ar3(r), Group::a_family(r, 3)).smooth);
}

TEST_CASE("corner cells of Xi are unimodular in N but not in N_0") {
  // |det(e^1, v^{1,2}, ..., v^{1,n})| = 1/2^{n-1} in ambient coordinates
  for (int n = 3; n <= 5; ++n) {
    Group g = Group::a_family(1, n);
    QMat ambient;
    QMat ncoords;
    QVec e1(n, Rat(0));
    e1[0] = 1;
    ambient.push_back(e1);
    ncoords.push_back(to_qvec(g.primitive_in_n(e1)));
    for (int j = 1; j < n; ++j) {
      QVec v(n, Rat(0));
      v[0] = Rat(1, 2);
      v[j] = Rat(1, 2);
      ambient.push_back(v);
      ncoords.push_back(to_qvec(g.primitive_in_n(v)));
    }
    Rat da = det(ambient), dn = det(ncoords);
    Rat expect = Rat(1);
    for (int i = 0; i + 1 < n; ++i) expect /= 2;
    CHECK(boost::multiprecision::abs(da) == expect);
    CHECK(boost::multiprecision::abs(dn) == 1);
  }
}

TEST_CASE("discrepancies") {
  Group g = Group::a_family(1, 4);
  Decomposition xs = build_a14(A14Kind::XiStar);
  auto disc = discrepancies(xs, g);
  REQUIRE(disc.size() == 1);
  CHECK(xs.vertices[disc[0].first] == QVec(4, Rat(1, 4)));
  CHECK(disc[0].second == 1);
  CHECK(discrepancies(build_a14(A14Kind::Xi1), g).empty());
}

TEST_CASE("star classification") {
  Group g = Group::a_family(1, 4);
  Decomposition xs = build_a14(A14Kind::XiStar);
  int c = find_vertex(xs, QVec(4, Rat(1, 4)));

  StarReport star = star_classify(xs, g, c);
  REQUIRE(star.cube_pattern);
  CHECK(star.cells.size() == 8);
  CHECK(star.neighbors.size() == 6);
  std::set<std::set<int>> pairs;
  for (auto& [a, b] : star.antipodal_pairs) pairs.insert({a, b});
  std::set<std::set<int>> expect{
      {find_vertex(xs, v14(0, 1)), find_vertex(xs, v14(2, 3))},
      {find_vertex(xs, v14(0, 2)), find_vertex(xs, v14(1, 3))},
      {find_vertex(xs, v14(0, 3)), find_vertex(xs, v14(1, 2))}};
  CHECK(pairs == expect);

  SECTION("interior lattice vertex of an A_r(3) fan is a hexagon, not a cube") {
    Decomposition xi3 = build_xi_ar3(2);
    Group g3 = Group::a_family(2, 3);
    int v = find_vertex(xi3, {Rat(1, 3), Rat(1, 3), Rat(1, 3)});
    StarReport s3 = star_classify(xi3, g3, v);
    CHECK(s3.cells.size() == 6);
    CHECK_FALSE(s3.cube_pattern);
  }
  SECTION("non-interior vertex rejected") {
    int e1 = find_vertex(xs, {Rat(1), Rat(0), Rat(0), Rat(0)});
    CHECK_THROWS_AS(star_classify(xs, g, e1), ValidationError);
  }
}

TEST_CASE("wall relations") {
  SECTION("A_r(2) resolution: every interior wall is a (-2)-curve") {
    for (int r = 1; r <= 5; ++r) {
      Group g = Group::a_family(r, 2);
      Decomposition fan = assemble_fan(g, enumerate_fixed_points(g));
      for (size_t vid = 0; vid < fan.vertices.size(); ++vid) {
        bool interior = true;
        for (const Rat& x : fan.vertices[vid]) interior &= (x > 0);
        if (!interior) continue;
        WallRelation rel = wall_relation(fan, g, {static_cast<int>(vid)});
        REQUIRE(rel.coefficients.size() == 1);
        CHECK(rel.coefficients[0].second == -2);
      }
    }
  }
  SECTION("Xi*: walls through c have degree -1 at c") {
    Group g = Group::a_family(1, 4);
    Decomposition xs = build_a14(A14Kind::XiStar);
    int c = find_vertex(xs, QVec(4, Rat(1, 4)));
    int walls = 0;
    for (const auto& facet : strata(xs, 2)) {
      if (!std::binary_search(facet.begin(), facet.end(), c)) continue;
      if (detail::facet_on_boundary(xs, facet)) continue;
      // only facets between two maximal cells (interior walls)
      int owners = 0;
      for (const auto& cell : xs.cells) {
        bool inside = true;
        for (int id : facet) inside &= std::binary_search(cell.begin(), cell.end(), id);
        owners += inside;
      }
      if (owners != 2) continue;
      WallRelation rel = wall_relation(xs, g, facet);
      for (auto& [vid, a] : rel.coefficients)
        if (vid == c) {
          CHECK(a == -1);
          ++walls;
        }
    }
    CHECK(walls == 12);  // the 12 interior triangles of the barycentric split
  }
  SECTION("boundary facet rejected") {
    Group g = Group::a_family(1, 4);
    Decomposition xs = build_a14(A14Kind::XiStar);
    int e1 = find_vertex(xs, {Rat(1), Rat(0), Rat(0), Rat(0)});
    int v = find_vertex(xs, v14(0, 1));
    int w = find_vertex(xs, v14(0, 2));
    CHECK_THROWS_AS(wall_relation(xs, g, {e1, v, w}), ValidationError);
  }
}

TEST_CASE("wall relation evaluates to zero in N") {
  Group g = Group::a_family(1, 4);
  Decomposition xs = build_a14(A14Kind::XiStar);
  for (const auto& facet : strata(xs, 2)) {
    if (detail::facet_on_boundary(xs, facet)) continue;
    WallRelation rel;
    try {
      rel = wall_relation(xs, g, facet);
    } catch (const ValidationError&) {
      continue;
    }
    IVec sum = g.primitive_in_n(xs.vertices[rel.opposite_a]);
    IVec other = g.primitive_in_n(xs.vertices[rel.opposite_b]);
    for (size_t i = 0; i < sum.size(); ++i) sum[i] += other[i];
    for (auto& [vid, a] : rel.coefficients) {
      IVec u = g.primitive_in_n(xs.vertices[vid]);
      for (size_t i = 0; i < sum.size(); ++i) sum[i] += a * u[i];
    }
    for (const Int& x : sum) CHECK(x == 0);
  }
}

TEST_CASE("dual cone Hilbert bases") {
  SECTION("octahedron cone of A_1(4): the 8 invariants of the 14-point model") {
    Group g = Group::a_family(1, 4);
    std::vector<QVec> rays;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) rays.push_back(v14(i, j));
    Cone diamond = make_cone(g, rays);
    auto basis = dual_cone_hilbert_basis(g, diamond);
    std::vector<ExpVec> expect;
    for (int j = 0; j < 4; ++j) {
      ExpVec x(4, 0);
      x[j] = 2;
      expect.push_back(x);  // X_j = Z_j^2
      ExpVec y(4, 1);
      y[j] = -1;
      expect.push_back(y);  // Y_j = Z_1Z_2Z_3Z_4 / Z_j^2 * Z_j
    }
    std::sort(expect.begin(), expect.end());
    REQUIRE(basis == expect);

    // relations x_i y_i = x_j y_j and x_i x_j = y_i' y_j' as exponent sums
    auto X = [&](int j) { ExpVec x(4, 0); x[j] = 2; return x; };
    auto Y = [&](int j) { ExpVec y(4, 1); y[j] = -1; return y; };
    auto plus = [](const ExpVec& a, const ExpVec& b) {
      ExpVec s(a.size());
      for (size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
      return s;
    };
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) CHECK(plus(X(i), Y(i)) == plus(X(j), Y(j)));
    // {i,j} and its complement {i',j'}
    int idx[4] = {0, 1, 2, 3};
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        std::vector<int> comp;
        for (int t : idx)
          if (t != i && t != j) comp.push_back(t);
        CHECK(plus(X(i), X(j)) == plus(Y(comp[0]), Y(comp[1])));
      }
  }
  SECTION("smooth unimodular cone: exactly the dual basis") {
    Group g = Group::a_family(1, 2);
    QVec v{Rat(1, 2), Rat(1, 2)}, e1{Rat(1), Rat(0)};
    Cone c = make_cone(g, {e1, v});
    auto basis = dual_cone_hilbert_basis(g, c);
    CHECK(basis.size() == 2);
  }
  SECTION("full quadrant: the n+1 invariants of A_r(n)") {
    for (int r = 1; r <= 2; ++r)
      for (int n = 2; n <= 3; ++n) {
        Group g = Group::a_family(r, n);
        std::vector<QVec> axes;
        for (int i = 0; i < n; ++i) {
          QVec e(n, Rat(0));
          e[i] = 1;
          axes.push_back(std::move(e));
        }
        auto basis = dual_cone_hilbert_basis(g, make_cone(g, axes));
        std::vector<ExpVec> expect{ExpVec(n, 1)};
        for (int j = 0; j < n; ++j) {
          ExpVec y(n, 0);
          y[j] = r + 1;
          expect.push_back(y);
        }
        std::sort(expect.begin(), expect.end());
        CHECK(basis == expect);
      }
  }
  SECTION("insufficient degree bound fails loudly") {
    Group g = Group::a_family(5, 2);
    std::vector<QVec> axes{{Rat(1), Rat(0)}, {Rat(0), Rat(1)}};
    CHECK_THROWS_AS(dual_cone_hilbert_basis(g, make_cone(g, axes), 2), ResourceError);
  }
}

TEST_CASE("two-of-three property on the test corpus") {
  struct Item {
    Group g;
    Decomposition d;
  };
  std::vector<Item> corpus;
  for (int r = 1; r <= 4; ++r) {
    Group g = Group::a_family(r, 2);
    corpus.push_back({g, assemble_fan(g, enumerate_fixed_points(g))});
  }
  for (int r = 1; r <= 4; ++r)
    corpus.push_back({Group::a_family(r, 3), build_xi_ar3(r)});
  Group g14 = Group::a_family(1, 4);
  for (auto k : {A14Kind::Xi, A14Kind::Xi1, A14Kind::Xi2, A14Kind::Xi3, A14Kind::XiStar})
    corpus.push_back({g14, build_a14(k)});
  for (const auto& [g, d] : corpus) {
    bool smooth = is_smooth(d, g).smooth;
    bool crepant = is_crepant(d, g);
    bool euler_ok = euler_number(d) == g.order_ll();
    int have = smooth + crepant + euler_ok;
    CAPTURE(g.d(), g.n(), smooth, crepant, euler_ok);
    CHECK(have != 2);  // any two imply the third
  }
}
