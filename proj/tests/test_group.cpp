#include "orbitool/orbitool.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace orbitool;

namespace {

// Independent character oracle: evaluate the raw generator pairing
// <g, I> mod d for every generator. Two exponent vectors restrict to the
// same function on G iff they agree on all generators.
std::vector<long long> raw_character(const Group& g, const ExpVec& i) {
  std::vector<long long> vals;
  for (const auto& gen : g.gens()) {
    long long acc = 0;
    for (int s = 0; s < g.n(); ++s) acc = ((acc + gen[s] * i[s]) % g.d() + g.d()) % g.d();
    vals.push_back(acc);
  }
  return vals;
}

Group random_group(std::mt19937& rng) {
  std::uniform_int_distribution<int> nd(2, 4), dd(1, 6), gd(0, 2);
  while (true) {
    int n = nd(rng);
    long long d = dd(rng);
    int k = 1 + gd(rng);
    std::vector<std::vector<long long>> gens;
    for (int t = 0; t < k; ++t) {
      std::vector<long long> row(n);
      long long sum = 0;
      for (int s = 0; s + 1 < n; ++s) {
        row[s] = std::uniform_int_distribution<long long>(0, d - 1)(rng);
        sum += row[s];
      }
      row[n - 1] = ((d - sum % d) % d + d) % d;
      gens.push_back(std::move(row));
    }
    Group g(n, d, gens);
    if (g.order_ll() <= 10000) return g;
  }
}

}  // namespace

TEST_CASE("group order from lattice arithmetic matches element enumeration") {
  std::mt19937 rng(20240817);
  for (int trial = 0; trial < 40; ++trial) {
    Group g = random_group(rng);
    CAPTURE(g.n(), g.d());
    CHECK(g.order() == Int(g.enumerate_elements().size()));
  }
  for (int r = 0; r <= 4; ++r)
    for (int n = 2; n <= 4; ++n) {
      Group g = Group::a_family(r, n);
      Int expect = 1;
      for (int i = 0; i + 1 < n; ++i) expect *= r + 1;
      CHECK(g.order() == expect);
      CHECK(g.order() == Int(g.enumerate_elements().size()));
      CHECK(g.is_a_family());
    }
}

TEST_CASE("character map is a homomorphism and separates by raw evaluation") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> ed(0, 8);
  for (int trial = 0; trial < 25; ++trial) {
    Group g = random_group(rng);
    for (int rep = 0; rep < 30; ++rep) {
      ExpVec a(g.n()), b(g.n()), sum(g.n());
      for (int s = 0; s < g.n(); ++s) {
        a[s] = ed(rng);
        b[s] = ed(rng);
        sum[s] = a[s] + b[s];
      }
      CHECK(g.add(g.character_of(a), g.character_of(b)) == g.character_of(sum));
      CHECK((g.character_of(a) == g.character_of(b)) ==
            (raw_character(g, a) == raw_character(g, b)));
    }
  }
}

TEST_CASE("A_r(2): Z_1 and Z_2^r share a character") {
  for (int r = 1; r <= 6; ++r) {
    Group g = Group::a_family(r, 2);
    CHECK(g.character_of({1, 0}) == g.character_of({0, r}));
  }
}

TEST_CASE("invariant monomials have the trivial character") {
  for (int r = 1; r <= 3; ++r)
    for (int n = 2; n <= 4; ++n) {
      Group g = Group::a_family(r, n);
      ExpVec x(n, 1);
      CHECK(g.in_m(x));
      for (int j = 0; j < n; ++j) {
        ExpVec y(n, 0);
        y[j] = r + 1;
        CHECK(g.in_m(y));
      }
      ExpVec z(n, 0);
      z[0] = 1;
      if (g.order_ll() > 1) CHECK_FALSE(g.in_m(z));
    }
}

TEST_CASE("N-membership and m_v") {
  Group g = Group::a_family(1, 4);
  QVec v12{Rat(1, 2), Rat(1, 2), Rat(0), Rat(0)};
  CHECK(g.n_membership(v12) == std::pair<bool, Int>{true, 1});
  QVec c(4, Rat(1, 4));
  CHECK(g.n_membership(c) == std::pair<bool, Int>{false, 2});
  QVec e1{Rat(1), Rat(0), Rat(0), Rat(0)};
  CHECK(g.n_membership(e1) == std::pair<bool, Int>{true, 1});

  // m_v is minimal: k*v not in N for 0 < k < m_v
  std::mt19937 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    Group h = random_group(rng);
    std::uniform_int_distribution<long long> numd(0, 12);
    QVec v(h.n());
    for (int s = 0; s < h.n(); ++s) v[s] = Rat(numd(rng), 1 + numd(rng));
    if (is_zero(v)) continue;
    Int m = h.m_v(v);
    CHECK(h.in_n(Rat(m) * v));
    for (Int k = 1; k < m && k < 50; ++k) CHECK_FALSE(h.in_n(Rat(k) * v));
  }
}

TEST_CASE("socle generators: closed form vs box brute force") {
  // oracle: minimal elements (under divisibility) of the box slice of
  // I(o)^perp with the requested character
  auto brute = [](const Group& g, const Character& rho) {
    int r = g.a_family_r(), n = g.n();
    std::vector<ExpVec> hits;
    ExpVec i(n, 0);
    while (true) {
      bool has_zero = false;
      for (int s = 0; s < n; ++s) has_zero |= (i[s] == 0);
      if (has_zero && g.character_of(i) == rho) hits.push_back(i);
      int pos = n - 1;
      while (pos >= 0 && i[pos] == r) { i[pos] = 0; --pos; }
      if (pos < 0) break;
      ++i[pos];
    }
    std::vector<ExpVec> mins;
    for (const ExpVec& a : hits) {
      bool minimal = true;
      for (const ExpVec& b : hits) {
        if (a == b) continue;
        bool divides = true;
        for (int s = 0; s < n; ++s) divides &= (b[s] <= a[s]);
        if (divides) { minimal = false; break; }
      }
      if (minimal) mins.push_back(a);
    }
    std::sort(mins.begin(), mins.end());
    return mins;
  };

  for (int r = 1; r <= 3; ++r)
    for (int n = 2; n <= 4; ++n) {
      Group g = Group::a_family(r, n);
      for (const auto& elem : g.enumerate_elements()) {
        ExpVec i(n);
        for (int s = 0; s < n; ++s) i[s] = static_cast<int>(elem[s]);
        Character rho = g.character_of(i);
        CAPTURE(r, n, i);
        CHECK(g.socle_generators(rho) == brute(g, rho));
      }
    }
}

TEST_CASE("socle generators: paper patterns") {
  // A_r(2): the character of Z_1^k pairs Z_1^k with Z_2^{r+1-k}
  for (int r = 1; r <= 5; ++r) {
    Group g = Group::a_family(r, 2);
    for (int k = 1; k <= r; ++k) {
      auto gens = g.socle_generators(g.character_of({k, 0}));
      std::vector<ExpVec> expect{{0, r + 1 - k}, {k, 0}};
      std::sort(expect.begin(), expect.end());
      CHECK(gens == expect);
    }
  }
  // A_1(n): exactly two generators, complementary 0/1 vectors
  for (int n = 3; n <= 5; ++n) {
    Group g = Group::a_family(1, n);
    for (const auto& elem : g.enumerate_elements()) {
      ExpVec i(n);
      for (int s = 0; s < n; ++s) i[s] = static_cast<int>(elem[s]);
      Character rho = g.character_of(i);
      if (rho == g.trivial_character()) {
        CHECK(g.socle_generators(rho) == std::vector<ExpVec>{ExpVec(n, 0)});
        continue;
      }
      auto gens = g.socle_generators(rho);
      REQUIRE(gens.size() == 2);
      for (int s = 0; s < n; ++s) CHECK(gens[0][s] + gens[1][s] == 1);
    }
  }
}

TEST_CASE("socle generators reject non-A-family groups") {
  Group g(3, 4, {{1, 3, 0}});  // cyclic, not the full A_3(3)
  REQUIRE_FALSE(g.is_a_family());
  CHECK_THROWS_AS(g.socle_generators(g.character_of({1, 0, 0})), ValidationError);
}

TEST_CASE("linear algebra kernels") {
  SECTION("hnf is upper triangular with positive diagonal") {
    Mat rows{{4, 0}, {0, 4}, {1, 3}};
    Mat h = row_hnf(rows, 2);
    CHECK(h[1][0] == 0);
    CHECK(h[0][0] > 0);
    CHECK(h[1][1] > 0);
    CHECK(h[0][0] * h[1][1] == 4);  // index of the A_3(2) lattice
  }
  SECTION("smith transforms satisfy p*a*q = s with divisibility") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> vd(-5, 5), nd(2, 4);
    for (int trial = 0; trial < 30; ++trial) {
      size_t n = nd(rng);
      Mat a(n, IVec(n));
      for (auto& row : a)
        for (auto& x : row) x = vd(rng);
      SmithResult r = smith_normal_form(a);
      CHECK(mul(mul(r.p, a), r.q) == r.s);
      for (size_t i = 0; i + 1 < n; ++i) {
        CHECK(r.s[i][i] >= 0);
        if (r.s[i][i] != 0 && r.s[i + 1][i + 1] != 0)
          CHECK(r.s[i + 1][i + 1] % r.s[i][i] == 0);
      }
      Rat dp = det(to_qmat(r.p)), dq = det(to_qmat(r.q));
      CHECK((dp == 1 || dp == -1));
      CHECK((dq == 1 || dq == -1));
    }
  }
  SECTION("nullspace vectors annihilate the rows") {
    QMat a{{Rat(1), Rat(2), Rat(3)}, {Rat(2), Rat(4), Rat(6)}};
    QMat ker = nullspace(a);
    REQUIRE(ker.size() == 2);
    for (const QVec& x : ker)
      for (const QVec& row : a) CHECK(dot(row, x) == 0);
  }
}

TEST_CASE("group construction rejects bad input") {
  CHECK_THROWS_AS(Group(1, 2, {}), ValidationError);
  CHECK_THROWS_AS(Group(2, 0, {}), ValidationError);
  CHECK_THROWS_AS(Group(2, 4, {{1, 0}}), ValidationError);   // not in SL_n
  CHECK_THROWS_AS(Group(2, 4, {{1, 2, 3}}), ValidationError);  // wrong length
}
