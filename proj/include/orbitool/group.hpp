#ifndef ORBITOOL_GROUP_HPP
#define ORBITOOL_GROUP_HPP

#include "orbitool/linalg.hpp"

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>

namespace orbitool {

/// Element of the dual group in canonical form: a tuple in prod Z/s_i
/// where (s_i) are the nontrivial Smith invariant factors of M0/M.
struct Character {
  std::vector<long long> t;

  auto operator<=>(const Character&) const = default;
  bool trivial() const {
    for (long long x : t) if (x != 0) return false;
    return true;
  }
};

/// A finite diagonal abelian subgroup of SL_n(C), together with the exact
/// lattice data it induces: N = exp^{-1}(G) in R^n and its dual M.
///
/// All derived data is computed once at construction; instances are
/// immutable and safe to share across threads.
class Group {
public:
  /// `gens` rows are exponent vectors a in (Z/d)^n; each generator is the
  /// diagonal matrix diag(exp(2 pi i a_s / d)).
  Group(int n, long long d, std::vector<std::vector<long long>> gens)
      : n_(n), d_(d), gens_(std::move(gens)) {
    if (n_ < 2) throw ValidationError("group: dimension n must be >= 2");
    if (d_ < 1) throw ValidationError("group: exponent d must be >= 1");
    for (auto& g : gens_) {
      if (static_cast<int>(g.size()) != n_)
        throw ValidationError("group: generator length != n");
      long long sum = 0;
      for (auto& x : g) {
        x %= d_;
        if (x < 0) x += d_;
        sum += x;
      }
      if (sum % d_ != 0)
        throw ValidationError("group: generator " + gens_str(g) +
                              " has row sum != 0 mod d (not in SL_n)");
    }
    init_lattices();
  }

  /// The A_r(n) family: all diagonal elements of SL_n with g^{r+1} = 1,
  /// generated by e_i - e_{i+1} over Z/(r+1).
  static Group a_family(int r, int n) {
    if (r < 0) throw ValidationError("group: family A requires r >= 0");
    long long d = r + 1;
    std::vector<std::vector<long long>> gens;
    for (int i = 0; i + 1 < n; ++i) {
      std::vector<long long> g(n, 0);
      g[i] = 1 % d;
      g[i + 1] = (d - 1) % d;
      gens.push_back(std::move(g));
    }
    return Group(n, d, std::move(gens));
  }

  int n() const { return n_; }
  long long d() const { return d_; }
  const std::vector<std::vector<long long>>& gens() const { return gens_; }
  const Int& order() const { return order_; }
  long long order_ll() const { return order_ll_; }

  /// Nontrivial Smith invariant factors of M0/M (the dual group shape).
  const std::vector<long long>& invariant_factors() const { return smith_; }

  /// True when G is exactly the A_{d-1}(n) group (all diagonal SL_n
  /// elements of order dividing d).
  bool is_a_family() const { return is_a_family_; }
  int a_family_r() const { return static_cast<int>(d_) - 1; }

  /// Character of the (Laurent) monomial Z^I; a homomorphism in I.
  Character character_of(const ExpVec& i) const {
    Character c;
    c.t.resize(smith_.size());
    for (size_t k = 0; k < smith_.size(); ++k) {
      long long acc = 0;
      for (int s = 0; s < n_; ++s)
        acc = (acc + p_mod_[k][s] * static_cast<long long>(i[s])) % smith_[k];
      if (acc < 0) acc += smith_[k];
      c.t[k] = acc;
    }
    return c;
  }

  Character trivial_character() const {
    Character c;
    c.t.assign(smith_.size(), 0);
    return c;
  }

  Character add(const Character& a, const Character& b) const {
    Character c;
    c.t.resize(smith_.size());
    for (size_t k = 0; k < smith_.size(); ++k) c.t[k] = (a.t[k] + b.t[k]) % smith_[k];
    return c;
  }

  /// Dense index of a character in [0, |G|).
  long long char_index(const Character& c) const {
    long long idx = 0;
    for (size_t k = 0; k < smith_.size(); ++k) idx = idx * smith_[k] + c.t[k];
    return idx;
  }

  long long char_index_of(const ExpVec& i) const { return char_index(character_of(i)); }

  /// Z^I is a G-invariant monomial iff its character is trivial.
  bool in_m(const ExpVec& i) const { return character_of(i).trivial(); }

  /// v in N = exp^{-1}(G)?
  bool in_n(const QVec& v) const {
    QVec y = mul(v, w_q_);
    for (const Rat& q : y) if (den(q) != 1) return false;
    return true;
  }

  /// Smallest positive integer m with m*v in N (v rational; always exists,
  /// bounded by the lcm of the coordinate denominators).
  Int m_v(const QVec& v) const {
    QVec y = mul(v, w_q_);
    return lcm_denominators(y);
  }

  /// N-membership plus m_v, as a pair.
  std::pair<bool, Int> n_membership(const QVec& v) const {
    Int m = m_v(v);
    return {m == 1, m};
  }

  /// Coordinates of v with respect to the fixed HNF basis of N.
  QVec n_coords(const QVec& v) const { return mul(v, w_q_); }

  /// Ambient point of an N-coordinate vector.
  QVec ambient(const QVec& ncoords) const { return mul(ncoords, bn_); }
  QVec ambient(const IVec& ncoords) const { return mul(to_qvec(ncoords), bn_); }

  /// Primitive element of N on the ray through v, in N-coordinates.
  IVec primitive_in_n(const QVec& v) const { return primitive_direction(n_coords(v)); }

  /// Same point expressed in the ambient R^n.
  QVec primitive_in_n_ambient(const QVec& v) const { return ambient(primitive_in_n(v)); }

  /// Primitive element of M on the ray through the M0-direction w,
  /// returned as a (Laurent) exponent vector.
  ExpVec primitive_in_m(const QVec& w) const {
    // M-coordinates of w: solve (columns of W) * z = w.
    QVec z = mul(w, w_inv_t_);
    IVec z0 = primitive_direction(z);
    ExpVec out(n_);
    for (int s = 0; s < n_; ++s) {
      Int acc = 0;
      for (int t = 0; t < n_; ++t) acc += w_[s][t] * z0[t];
      out[s] = static_cast<int>(acc);
    }
    return out;
  }

  /// Explicit enumeration of the group elements as exponent vectors in
  /// (Z/d)^n. Capped; intended for cross-checks at desk scale.
  std::vector<std::vector<long long>> enumerate_elements(long long cap = 1000000) const {
    std::set<std::vector<long long>> seen;
    std::vector<std::vector<long long>> queue;
    std::vector<long long> id(n_, 0);
    seen.insert(id);
    queue.push_back(id);
    for (size_t head = 0; head < queue.size(); ++head) {
      for (const auto& g : gens_) {
        auto next = queue[head];
        for (int s = 0; s < n_; ++s) next[s] = (next[s] + g[s]) % d_;
        if (seen.insert(next).second) {
          if (static_cast<long long>(seen.size()) > cap)
            throw ResourceError("group enumeration exceeds cap " + std::to_string(cap));
          queue.push_back(std::move(next));
        }
      }
    }
    return {queue.begin(), queue.end()};
  }

  /// Monomial generators of the rho-eigenspace of I(o)^perp for A_r(n)
  /// groups: the closed form applied to a sorted representative, with the
  /// result un-sorted, cross-checkable against the box brute force.
  std::vector<ExpVec> socle_generators(const Character& rho) const {
    if (!is_a_family_)
      throw ValidationError("socle_generators: closed form is only available for A_r(n) groups");
    int r = a_family_r();
    if (rho == trivial_character()) return {ExpVec(n_, 0)};

    // lexicographically smallest representative in I(o)^perp
    std::optional<ExpVec> rep;
    ExpVec i(n_, 0);
    while (true) {
      bool has_zero = false;
      for (int s = 0; s < n_; ++s) has_zero |= (i[s] == 0);
      if (has_zero && character_of(i) == rho) { rep = i; break; }
      int pos = n_ - 1;
      while (pos >= 0 && i[pos] == r) { i[pos] = 0; --pos; }
      if (pos < 0) break;
      ++i[pos];
    }
    if (!rep)
      throw ValidationError("socle_generators: no representative found (character not realized)");

    std::vector<int> perm(n_);
    for (int s = 0; s < n_; ++s) perm[s] = s;
    std::stable_sort(perm.begin(), perm.end(),
                     [&](int a, int b) { return (*rep)[a] < (*rep)[b]; });
    ExpVec sorted(n_);
    for (int s = 0; s < n_; ++s) sorted[s] = (*rep)[perm[s]];

    std::set<ExpVec> out;
    for (int j = 0; j < n_; ++j) {
      ExpVec k_sorted(n_);
      for (int s = 0; s < n_; ++s)
        k_sorted[s] = sorted[s] < sorted[j] ? r + 1 - sorted[j] + sorted[s]
                                            : sorted[s] - sorted[j];
      ExpVec k(n_);
      for (int s = 0; s < n_; ++s) k[perm[s]] = k_sorted[s];
      out.insert(std::move(k));
    }
    return {out.begin(), out.end()};
  }

private:
  static std::string gens_str(const std::vector<long long>& g) {
    std::string s = "(";
    for (size_t i = 0; i < g.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(g[i]);
    }
    return s + ")";
  }

  void init_lattices() {
    // d*N is spanned over Z by d*e_i and the generator rows.
    Mat rows;
    for (int i = 0; i < n_; ++i) {
      IVec r(n_, 0);
      r[i] = d_;
      rows.push_back(std::move(r));
    }
    for (const auto& g : gens_) {
      IVec r(n_);
      for (int s = 0; s < n_; ++s) r[s] = g[s];
      rows.push_back(std::move(r));
    }
    hd_ = row_hnf(rows, n_);

    Int det_hd = 1;
    for (int i = 0; i < n_; ++i) det_hd *= hd_[i][i];
    Int dn = 1;
    for (int i = 0; i < n_; ++i) dn *= d_;
    if (dn % det_hd != 0) throw ValidationError("group: lattice index inconsistency");
    order_ = dn / det_hd;
    if (order_ > Int(1) << 62)
      throw ResourceError("group order too large for character arithmetic");
    order_ll_ = static_cast<long long>(order_);

    // Basis rows of N and the integer matrix W = d * Hd^{-1};
    // v in N  <=>  v*W integral, and the columns of W span M.
    QMat hd_q = to_qmat(hd_);
    QMat hd_inv = inverse(hd_q);
    bn_.assign(n_, QVec(n_));
    w_q_.assign(n_, QVec(n_));
    w_.assign(n_, IVec(n_));
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        bn_[i][j] = hd_q[i][j] / d_;
        Rat wij = hd_inv[i][j] * d_;
        if (den(wij) != 1) throw ValidationError("group: d*Hd^{-1} not integral");
        w_q_[i][j] = wij;
        w_[i][j] = num(wij);
      }
    w_inv_t_ = inverse(to_qmat(w_));
    // transpose so that primitive_in_m can use row-vector multiplication
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j) std::swap(w_inv_t_[i][j], w_inv_t_[j][i]);

    // Characters: Z^n / (columns of W)  ~  sum Z/s_i  via  I -> P I.
    SmithResult snf = smith_normal_form(w_);
    for (int i = 0; i < n_; ++i) {
      Int s = snf.s[i][i];
      if (s <= 1) continue;
      smith_.push_back(static_cast<long long>(s));
      std::vector<long long> row(n_);
      for (int j = 0; j < n_; ++j) {
        Int m = snf.p[i][j] % s;
        if (m < 0) m += s;
        row[j] = static_cast<long long>(m);
      }
      p_mod_.push_back(std::move(row));
    }

    Int a_order = 1;
    for (int i = 0; i + 1 < n_; ++i) a_order *= d_;
    is_a_family_ = (order_ == a_order);
  }

  int n_;
  long long d_;
  std::vector<std::vector<long long>> gens_;
  Int order_;
  long long order_ll_ = 0;
  bool is_a_family_ = false;
  Mat hd_;         // HNF row basis of d*N
  QMat bn_;        // row basis of N (= Hd / d)
  Mat w_;          // d * Hd^{-1}
  QMat w_q_;
  QMat w_inv_t_;   // (W^{-1})^T
  std::vector<long long> smith_;
  std::vector<std::vector<long long>> p_mod_;
};

}  // namespace orbitool

#endif
