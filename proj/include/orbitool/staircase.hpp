#ifndef ORBITOOL_STAIRCASE_HPP
#define ORBITOOL_STAIRCASE_HPP

#include "orbitool/cone.hpp"
#include "orbitool/group.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <map>
#include <mutex>
#include <thread>

namespace orbitool {

/// A finite order ideal in Z^n_{>=0}, stored lexicographically sorted.
struct Staircase {
  int n = 0;
  std::vector<ExpVec> pts;

  bool operator==(const Staircase&) const = default;
  bool operator<(const Staircase& o) const { return pts < o.pts; }

  bool contains(const ExpVec& p) const {
    return std::binary_search(pts.begin(), pts.end(), p);
  }

  /// Order-ideal property: closed under componentwise decrease.
  bool is_order_ideal() const {
    for (const ExpVec& p : pts)
      for (int i = 0; i < n; ++i) {
        if (p[i] == 0) continue;
        ExpVec q = p;
        --q[i];
        if (!contains(q)) return false;
      }
    return true;
  }
};

inline Staircase make_staircase(int n, std::vector<ExpVec> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  Staircase s{n, std::move(pts)};
  if (!s.is_order_ideal())
    throw ValidationError("staircase: point set is not an order ideal");
  return s;
}

/// Multiplicity of each character among the monomials of the staircase.
inline std::map<Character, long long> census(const Group& g, const Staircase& s) {
  std::map<Character, long long> counts;
  for (const ExpVec& p : s.pts) ++counts[g.character_of(p)];
  return counts;
}

/// Carries the regular representation: every character exactly once.
inline bool is_regular(const Group& g, const Staircase& s) {
  if (static_cast<long long>(s.pts.size()) != g.order_ll()) return false;
  for (auto& [c, m] : census(g, s))
    if (m != 1) return false;
  return true;
}

/// The unique minimal monomial generating set of the ideal whose standard
/// monomials are the staircase: minimal elements of the complement.
inline std::vector<ExpVec> minimal_generators(const Staircase& s) {
  int n = s.n;
  ExpVec box(n, 0);
  for (const ExpVec& p : s.pts)
    for (int i = 0; i < n; ++i) box[i] = std::max(box[i], p[i] + 1);
  std::vector<ExpVec> gens;
  ExpVec j(n, 0);
  while (true) {
    if (!s.contains(j)) {
      bool minimal = true;
      for (int i = 0; i < n && minimal; ++i) {
        if (j[i] == 0) continue;
        ExpVec q = j;
        --q[i];
        minimal = s.contains(q);
      }
      if (minimal) gens.push_back(j);
    }
    int pos = n - 1;
    while (pos >= 0 && j[pos] == box[pos]) { j[pos] = 0; --pos; }
    if (pos < 0) break;
    ++j[pos];
  }
  return gens;
}

/// Staircase of a cofinite monomial ideal given by generators.
inline Staircase staircase_of_generators(int n, const std::vector<ExpVec>& gens) {
  ExpVec box(n, -1);
  for (const ExpVec& g : gens) {
    int nz = 0, axis = -1;
    for (int i = 0; i < n; ++i)
      if (g[i] != 0) { ++nz; axis = i; }
    if (nz == 1 && (box[axis] < 0 || g[axis] < box[axis])) box[axis] = g[axis];
  }
  for (int i = 0; i < n; ++i)
    if (box[i] < 0)
      throw ValidationError("staircase_of_generators: ideal is not cofinite (missing pure power)");
  std::vector<ExpVec> pts;
  ExpVec j(n, 0);
  while (true) {
    bool in_ideal = false;
    for (const ExpVec& g : gens) {
      bool divides = true;
      for (int i = 0; i < n && divides; ++i) divides = g[i] <= j[i];
      if (divides) { in_ideal = true; break; }
    }
    if (!in_ideal) pts.push_back(j);
    int pos = n - 1;
    while (pos >= 0 && j[pos] == box[pos] - 1) { j[pos] = 0; --pos; }
    if (pos < 0) break;
    ++j[pos];
  }
  return Staircase{n, std::move(pts)};
}

/// The unique standard monomial with the same character as the ideal
/// generator g; the deformation partner of g.
inline ExpVec matched_partner(const Group& g, const Staircase& s, const ExpVec& gen) {
  if (!is_regular(g, s))
    throw ValidationError("matched_partner: staircase is not regular, partner not unique");
  Character c = g.character_of(gen);
  for (const ExpVec& p : s.pts)
    if (g.character_of(p) == c) return p;
  throw ValidationError("matched_partner: no partner found");
}

namespace detail {

struct EnumCtx {
  const Group* group;
  int n;
  ExpVec cap;                 // exclusive per-axis exponent bound
  long long target;           // |G|
  bool prune_characters;
  std::vector<long long> code_char;  // box code -> character index (pruned mode)
  std::vector<long long> stride;

  long long encode(const ExpVec& p) const {
    long long c = 0;
    for (int i = 0; i < n; ++i) c += stride[i] * p[i];
    return c;
  }
  ExpVec decode(long long c) const {
    ExpVec p(n);
    for (int i = 0; i < n; ++i) { p[i] = static_cast<int>(c / stride[i]); c %= stride[i]; }
    return p;
  }
};

// DFS over order ideals, adding points in increasing lex order (box codes
// are lex-compatible), so every ideal is produced exactly once.
inline void enum_dfs(const EnumCtx& ctx, std::vector<long long>& cur,
                     std::vector<char>& in_set, std::vector<char>& char_used,
                     const std::vector<long long>& frontier,
                     std::vector<Staircase>& out) {
  if (static_cast<long long>(cur.size()) == ctx.target) {
    std::vector<ExpVec> pts;
    pts.reserve(cur.size());
    for (long long c : cur) pts.push_back(ctx.decode(c));
    std::sort(pts.begin(), pts.end());
    out.push_back(Staircase{ctx.n, std::move(pts)});
    return;
  }
  long long last = cur.empty() ? -1 : cur.back();
  for (size_t fi = 0; fi < frontier.size(); ++fi) {
    long long q = frontier[fi];
    if (q <= last) continue;
    long long ci = -1;
    if (ctx.prune_characters) {
      ci = ctx.code_char[q];
      if (char_used[ci]) continue;
    }
    // remaining frontier plus the newly addable upper neighbours of q
    std::vector<long long> next;
    next.reserve(frontier.size() + ctx.n);
    for (size_t fj = 0; fj < frontier.size(); ++fj)
      if (fj != fi) next.push_back(frontier[fj]);
    in_set[q] = 1;
    if (ci >= 0) char_used[ci] = 1;
    ExpVec p = ctx.decode(q);
    for (int i = 0; i < ctx.n; ++i) {
      if (p[i] + 1 >= ctx.cap[i]) continue;
      ExpVec up = p;
      ++up[i];
      bool addable = true;
      for (int j = 0; j < ctx.n && addable; ++j) {
        if (up[j] == 0) continue;
        ExpVec low = up;
        --low[j];
        addable = in_set[ctx.encode(low)];
      }
      if (addable) next.push_back(ctx.encode(up));
    }
    std::sort(next.begin(), next.end());
    cur.push_back(q);
    enum_dfs(ctx, cur, in_set, char_used, next, out);
    cur.pop_back();
    in_set[q] = 0;
    if (ci >= 0) char_used[ci] = 0;
  }
}

inline int worker_count() {
  if (const char* env = std::getenv("ORBITOOL_THREADS")) {
    int t = std::atoi(env);
    if (t >= 1) return t;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

inline std::vector<Staircase> enumerate_order_ideals(const Group& g, const ExpVec& cap,
                                                     bool prune_characters) {
  EnumCtx ctx;
  ctx.group = &g;
  ctx.n = g.n();
  ctx.cap = cap;
  ctx.target = g.order_ll();
  ctx.prune_characters = prune_characters;
  ctx.stride.assign(ctx.n, 1);
  for (int i = ctx.n - 2; i >= 0; --i) ctx.stride[i] = ctx.stride[i + 1] * cap[i + 1];
  long long box_size = ctx.stride[0] * cap[0];
  if (prune_characters) {
    ctx.code_char.resize(box_size);
    for (long long c = 0; c < box_size; ++c)
      ctx.code_char[c] = g.char_index_of(ctx.decode(c));
  }

  std::vector<Staircase> result;
  if (ctx.target == 1) {
    result.push_back(Staircase{ctx.n, {ExpVec(ctx.n, 0)}});
    return result;
  }

  // root: the origin is always present
  std::vector<long long> frontier;
  for (int i = 0; i < ctx.n; ++i)
    if (cap[i] > 1) frontier.push_back(ctx.stride[i]);
  std::sort(frontier.begin(), frontier.end());

  // split the DFS at depth one and farm the subtrees out to workers
  struct Task {
    std::vector<long long> cur;
    std::vector<long long> frontier;
  };
  std::vector<Task> tasks;
  {
    std::vector<char> in_set(box_size, 0), char_used;
    if (prune_characters) char_used.assign(g.order_ll(), 0);
    in_set[0] = 1;
    if (prune_characters) char_used[ctx.code_char[0]] = 1;
    for (size_t fi = 0; fi < frontier.size(); ++fi) {
      long long q = frontier[fi];
      if (prune_characters && char_used[ctx.code_char[q]]) continue;
      Task t;
      t.cur = {0, q};
      ExpVec p = ctx.decode(q);
      in_set[q] = 1;
      for (size_t fj = 0; fj < frontier.size(); ++fj)
        if (fj != fi) t.frontier.push_back(frontier[fj]);
      for (int i = 0; i < ctx.n; ++i) {
        if (p[i] + 1 >= cap[i]) continue;
        ExpVec up = p;
        ++up[i];
        bool addable = true;
        for (int j = 0; j < ctx.n && addable; ++j) {
          if (up[j] == 0) continue;
          ExpVec low = up;
          --low[j];
          addable = in_set[ctx.encode(low)];
        }
        if (addable) t.frontier.push_back(ctx.encode(up));
      }
      in_set[q] = 0;
      std::sort(t.frontier.begin(), t.frontier.end());
      tasks.push_back(std::move(t));
    }
  }

  int workers = std::min<int>(worker_count(), static_cast<int>(tasks.size()));
  workers = std::max(workers, 1);
  std::mutex out_mutex;
  std::atomic<size_t> next_task{0};
  auto run = [&]() {
    std::vector<char> in_set(box_size, 0), char_used;
    if (prune_characters) char_used.assign(g.order_ll(), 0);
    std::vector<Staircase> local;
    for (size_t ti = next_task.fetch_add(1); ti < tasks.size(); ti = next_task.fetch_add(1)) {
      auto& t = tasks[ti];
      std::vector<long long> cur = t.cur;
      for (long long c : cur) {
        in_set[c] = 1;
        if (prune_characters) char_used[ctx.code_char[c]] = 1;
      }
      enum_dfs(ctx, cur, in_set, char_used, t.frontier, local);
      for (long long c : cur) {
        in_set[c] = 0;
        if (prune_characters) char_used[ctx.code_char[c]] = 0;
      }
    }
    std::lock_guard<std::mutex> lock(out_mutex);
    result.insert(result.end(), local.begin(), local.end());
  };
  if (workers == 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& th : pool) th.join();
  }
  std::sort(result.begin(), result.end());
  return result;
}

}  // namespace detail

/// All torus-fixed points of Hilb^G: regular staircases of size |G|,
/// canonically sorted. Deterministic regardless of worker count.
inline std::vector<Staircase> enumerate_fixed_points(const Group& g, long long bound = 64) {
  if (g.order_ll() > bound)
    throw ResourceError("enumerate_fixed_points: |G| = " + std::to_string(g.order_ll()) +
                        " exceeds bound " + std::to_string(bound));
  // Z_i^d is invariant, so a regular staircase never reaches exponent d.
  ExpVec cap(g.n(), static_cast<int>(std::min<long long>(g.d(), g.order_ll())));
  auto all = detail::enumerate_order_ideals(g, cap, /*prune_characters=*/true);
  std::vector<Staircase> out;
  for (auto& s : all)
    if (is_regular(g, s)) out.push_back(std::move(s));
  std::sort(out.begin(), out.end());
  return out;
}

/// Unpruned reference enumeration (oracle-grade): every order ideal of
/// size |G| within the per-axis bound |G|, filtered for regularity.
inline std::vector<Staircase> enumerate_fixed_points_brute(const Group& g) {
  ExpVec cap(g.n(), static_cast<int>(g.order_ll()));
  auto all = detail::enumerate_order_ideals(g, cap, /*prune_characters=*/false);
  std::vector<Staircase> out;
  for (auto& s : all)
    if (is_regular(g, s)) out.push_back(std::move(s));
  std::sort(out.begin(), out.end());
  return out;
}

/// Closure of the weight vectors in the first quadrant whose initial ideal
/// is the staircase ideal: { v >= 0 : <v, g> >= <v, partner(g)> }.
inline Cone cone_of_staircase(const Group& g, const Staircase& s) {
  if (!is_regular(g, s))
    throw ValidationError("cone_of_staircase: staircase is not regular");
  int n = g.n();
  std::vector<QVec> ineqs;
  for (int i = 0; i < n; ++i) {
    QVec e(n, Rat(0));
    e[i] = 1;
    ineqs.push_back(std::move(e));
  }
  for (const ExpVec& gen : minimal_generators(s)) {
    ExpVec partner = matched_partner(g, s, gen);
    QVec row(n);
    for (int i = 0; i < n; ++i) row[i] = gen[i] - partner[i];
    ineqs.push_back(std::move(row));
  }
  std::vector<QVec> rays = extreme_rays(ineqs, n);
  return make_cone(g, rays);
}

}  // namespace orbitool

#endif
