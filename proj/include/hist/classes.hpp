#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "hist/errors.hpp"
#include "hist/graph.hpp"
#include "hist/vertex_set.hpp"

namespace hist {

// Permutation of vertex ids such that each vertex's later neighbors form a
// clique (simplicial at elimination). Standard chordality certificate.
struct PerfectEliminationOrder {
  std::vector<int> order;
};

struct NotChordal {
  std::vector<int> hole;  // chordless cycle of length >= 4
};

// Clique side / independent side of a split graph.
struct SplitPartition {
  VertexSet C;
  VertexSet I;
};

enum class GoodBad { good, bad };

// Lexicographic breadth-first search; returns the visit order.
inline std::vector<int> lex_bfs(const Graph& g) {
  // Partition refinement over a list of buckets.
  std::vector<std::vector<int>> buckets{std::vector<int>(g.n)};
  for (int v = 0; v < g.n; ++v) buckets[0][v] = v;
  std::vector<int> order;
  order.reserve(g.n);
  std::vector<char> done(g.n, 0);
  while (!buckets.empty()) {
    int v = buckets.front().front();
    auto& front = buckets.front();
    front.erase(front.begin());
    if (front.empty()) buckets.erase(buckets.begin());
    done[v] = 1;
    order.push_back(v);
    std::vector<char> is_nbr(g.n, 0);
    for (int u : g.adj[v]) is_nbr[u] = 1;
    std::vector<std::vector<int>> next;
    for (auto& b : buckets) {
      std::vector<int> in, out;
      for (int u : b) (is_nbr[u] ? in : out).push_back(u);
      if (!in.empty()) next.push_back(std::move(in));
      if (!out.empty()) next.push_back(std::move(out));
    }
    buckets = std::move(next);
  }
  return order;
}

inline bool is_valid_peo(const Graph& g, const std::vector<int>& order) {
  if (int(order.size()) != g.n) return false;
  std::vector<int> pos(g.n, -1);
  for (int i = 0; i < g.n; ++i) {
    if (order[i] < 0 || order[i] >= g.n || pos[order[i]] >= 0) return false;
    pos[order[i]] = i;
  }
  for (int i = 0; i < g.n; ++i) {
    int v = order[i];
    // later neighbors must form a clique; enough to check the earliest one
    // against the rest
    int p = -1;
    for (int u : g.adj[v])
      if (pos[u] > i && (p < 0 || pos[u] < pos[p])) p = u;
    if (p < 0) continue;
    for (int u : g.adj[v])
      if (pos[u] > i && u != p && !g.has_edge(p, u)) return false;
  }
  return true;
}

namespace classes_detail {

// Shortest p-w path avoiding N[v] \ {p,w}; used to close a chordless cycle
// through v.
inline std::optional<std::vector<int>> hole_path(const Graph& g, int v, int p, int w) {
  std::vector<char> banned(g.n, 0);
  banned[v] = 1;
  for (int u : g.adj[v]) banned[u] = 1;
  banned[p] = banned[w] = 0;
  std::vector<int> prev(g.n, -2);
  std::deque<int> q;
  prev[p] = -1;
  q.push_back(p);
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    if (x == w) break;
    for (int y : g.adj[x])
      if (!banned[y] && prev[y] == -2) {
        prev[y] = x;
        q.push_back(y);
      }
  }
  if (prev[w] == -2) return std::nullopt;
  std::vector<int> path;
  for (int x = w; x != -1; x = prev[x]) path.push_back(x);
  std::reverse(path.begin(), path.end());
  return path;  // p ... w
}

inline std::vector<int> find_hole(const Graph& g, int v0, int p0, int w0) {
  auto close = [&](int v, int p, int w) -> std::optional<std::vector<int>> {
    auto path = hole_path(g, v, p, w);
    if (!path) return std::nullopt;
    std::vector<int> cycle{v};
    cycle.insert(cycle.end(), path->begin(), path->end());
    return cycle;
  };
  if (auto c = close(v0, p0, w0)) return *c;
  for (int v = 0; v < g.n; ++v)
    for (int p : g.adj[v])
      for (int w : g.adj[v]) {
        if (p >= w || g.has_edge(p, w)) continue;
        if (auto c = close(v, p, w)) return *c;
      }
  throw error(errc::precondition, "no hole found in a non-chordal graph");
}

}  // namespace classes_detail

// LexBFS + simplicial check; on failure returns a chordless cycle.
inline std::variant<PerfectEliminationOrder, NotChordal> recognize_chordal(const Graph& g) {
  auto order = lex_bfs(g);
  std::reverse(order.begin(), order.end());  // reverse LexBFS order is a PEO iff chordal
  std::vector<int> pos(g.n);
  for (int i = 0; i < g.n; ++i) pos[order[i]] = i;
  for (int i = 0; i < g.n; ++i) {
    int v = order[i];
    int p = -1;
    for (int u : g.adj[v])
      if (pos[u] > i && (p < 0 || pos[u] < pos[p])) p = u;
    if (p < 0) continue;
    for (int u : g.adj[v]) {
      if (pos[u] <= i || u == p || g.has_edge(p, u)) continue;
      return NotChordal{classes_detail::find_hole(g, v, p, u)};
    }
  }
  return PerfectEliminationOrder{std::move(order)};
}

inline bool is_chordal(const Graph& g) {
  return std::holds_alternative<PerfectEliminationOrder>(recognize_chordal(g));
}

// All maximal cliques of a chordal graph, each exactly once; at most n.
inline std::vector<VertexSet> maximal_cliques_chordal(const Graph& g,
                                                      const PerfectEliminationOrder& peo) {
  if (!is_valid_peo(g, peo.order)) throw error(errc::invalid_peo, "order is not a PEO for g");
  std::vector<int> pos(g.n);
  for (int i = 0; i < g.n; ++i) pos[peo.order[i]] = i;
  std::vector<VertexSet> cands;
  for (int i = 0; i < g.n; ++i) {
    int v = peo.order[i];
    VertexSet c(g.n);
    c.insert(v);
    for (int u : g.adj[v])
      if (pos[u] > i) c.insert(u);
    cands.push_back(std::move(c));
  }
  std::vector<VertexSet> out;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    bool maximal = true;
    for (std::size_t j = 0; j < cands.size() && maximal; ++j)
      if (j != i && cands[i].is_subset_of(cands[j]) && !(cands[j].is_subset_of(cands[i]) && j > i))
        maximal = false;
    if (maximal) out.push_back(cands[i]);
  }
  return out;
}

inline bool dominates(const Graph& g, const VertexSet& c) {
  std::vector<char> hit(g.n, 0);
  for (int v : c.to_vector()) {
    hit[v] = 1;
    for (int u : g.adj[v]) hit[u] = 1;
  }
  for (int v = 0; v < g.n; ++v)
    if (!hit[v]) return false;
  return true;
}

// Maximal dominating clique of a connected chordal graph, or nullopt. A
// dominating clique extends to a maximal dominating clique, so scanning the
// maximal cliques is exhaustive; existence is equivalent to diameter <= 3.
inline std::optional<VertexSet> find_dominating_clique(const Graph& g) {
  auto rec = recognize_chordal(g);
  auto* peo = std::get_if<PerfectEliminationOrder>(&rec);
  if (!peo) throw error(errc::not_chordal, "find_dominating_clique requires a chordal graph");
  for (const auto& c : maximal_cliques_chordal(g, *peo))
    if (dominates(g, c)) return c;
  return std::nullopt;
}

inline std::vector<VertexSet> all_maximal_dominating_cliques(const Graph& g) {
  auto rec = recognize_chordal(g);
  auto* peo = std::get_if<PerfectEliminationOrder>(&rec);
  if (!peo) throw error(errc::not_chordal, "expected a chordal graph");
  std::vector<VertexSet> out;
  for (const auto& c : maximal_cliques_chordal(g, *peo))
    if (dominates(g, c)) out.push_back(c);
  return out;
}

// Canonical split partition: |C| maximal, ties broken by the lexicographically
// smallest C. Hammer-Simeone degree test plus the fact that two same-size
// clique sides differ in at most one vertex.
inline std::optional<SplitPartition> split_partition(const Graph& g) {
  std::vector<int> by_deg(g.n);
  for (int v = 0; v < g.n; ++v) by_deg[v] = v;
  std::sort(by_deg.begin(), by_deg.end(), [&](int a, int b) {
    if (g.degree(a) != g.degree(b)) return g.degree(a) > g.degree(b);
    return a < b;
  });
  int h = 0;
  for (int i = 0; i < g.n; ++i)
    if (g.degree(by_deg[i]) >= i) h = i + 1;
  long long lhs = 0, rhs = 0;
  for (int i = 0; i < h; ++i) lhs += g.degree(by_deg[i]);
  for (int i = h; i < g.n; ++i) rhs += g.degree(by_deg[i]);
  if (lhs != (long long)h * (h - 1) + rhs) return std::nullopt;

  auto valid = [&](const VertexSet& c) {
    return g.is_clique(c) && g.is_independent(VertexSet::full(g.n) - c);
  };
  VertexSet base(g.n);
  for (int i = 0; i < h; ++i) base.insert(by_deg[i]);
  if (!valid(base)) {
    // Degree ties can put the wrong vertex on the boundary; repair by trying
    // boundary swaps among equal-degree vertices.
    bool fixed = false;
    for (int i = 0; i < h && !fixed; ++i)
      for (int j = h; j < g.n && !fixed; ++j) {
        if (g.degree(by_deg[i]) != g.degree(by_deg[j])) continue;
        VertexSet alt = base;
        alt.erase(by_deg[i]);
        alt.insert(by_deg[j]);
        if (valid(alt)) {
          base = alt;
          fixed = true;
        }
      }
    if (!fixed) return std::nullopt;
  }

  // All valid clique sides of size h differ from `base` by a single swap:
  // two of them can't differ in two vertices, since the outsiders would be
  // simultaneously adjacent (clique side) and non-adjacent (independent side).
  VertexSet best = base;
  auto base_members = base.to_vector();
  for (int w = 0; w < g.n; ++w) {
    if (base.contains(w)) continue;
    for (int v : base_members) {
      VertexSet alt = base;
      alt.erase(v);
      alt.insert(w);
      if (valid(alt) && alt.lex_less(best)) best = alt;
    }
  }
  return SplitPartition{best, VertexSet::full(g.n) - best};
}

inline void check_split_partition(const Graph& g, const SplitPartition& p) {
  if (!g.is_clique(p.C) || !g.is_independent(p.I) ||
      !(p.C | p.I).is_subset_of(VertexSet::full(g.n)) || (p.C & p.I).size() != 0 ||
      (p.C | p.I).size() != g.n)
    throw error(errc::not_split, "invalid split partition");
}

// True iff every vertex on the independent side has degree at most one.
inline bool is_block_split(const Graph& g, const SplitPartition& p) {
  check_split_partition(g, p);
  for (int v : p.I.to_vector())
    if (g.degree(v) > 1) return false;
  return true;
}

// Class-level test: some split partition witnesses block-splitness iff the
// vertices of degree >= 2 form a clique (and the graph is split).
inline bool is_block_split_graph(const Graph& g) {
  VertexSet d(g.n);
  for (int v = 0; v < g.n; ++v)
    if (g.degree(v) >= 2) d.insert(v);
  if (!g.is_clique(d)) return false;
  return split_partition(g).has_value();
}

// u in C is good iff d(u) != |C|, i.e. it has zero or at least two pendant
// neighbors in I.
inline std::map<int, GoodBad> classify_good_bad(const Graph& g, const SplitPartition& p) {
  if (!is_block_split(g, p))
    throw error(errc::not_block_split, "classify_good_bad needs a block-split partition");
  std::map<int, GoodBad> out;
  int c = p.C.size();
  for (int u : p.C.to_vector()) out[u] = (g.degree(u) != c) ? GoodBad::good : GoodBad::bad;
  return out;
}

inline int count_good(const Graph& g, const SplitPartition& p) {
  int good = 0;
  for (auto& [u, gb] : classify_good_bad(g, p))
    if (gb == GoodBad::good) ++good;
  return good;
}

}  // namespace hist
