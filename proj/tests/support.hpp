#pragma once

// Test-only helpers: independent brute-force oracles, corpus generators and
// small utilities shared by the unit tests and the acceptance suite. Nothing
// here may call into the implementation paths it is used to check.

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "hist/classes.hpp"
#include "hist/generators.hpp"
#include "hist/graph.hpp"
#include "hist/witness.hpp"

namespace support {

using hist::Graph;
using hist::TreeWitness;
using hist::VertexSet;

// ---------------------------------------------------------------------------
// Graph construction helpers
// ---------------------------------------------------------------------------

inline Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  Graph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

inline Graph complete(int n) {
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

inline Graph path(int n) {
  Graph g(n);
  for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

inline Graph cycle(int n) {
  Graph g = path(n);
  g.add_edge(0, n - 1);
  return g;
}

// triangle with one pendant per corner
inline Graph net_graph() {
  return from_edges(6, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 4}, {2, 5}});
}

inline Graph petersen() {
  Graph g(10);
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(5 + i, 5 + (i + 2) % 5);
    g.add_edge(i, 5 + i);
  }
  return g;
}

// K_c plus the given number of pendants on each clique vertex.
inline Graph clique_with_pendants(int c, const std::vector<int>& pendants) {
  int n = c;
  for (int p : pendants) n += p;
  Graph g(n);
  for (int u = 0; u < c; ++u)
    for (int v = u + 1; v < c; ++v) g.add_edge(u, v);
  int next = c;
  for (int u = 0; u < int(pendants.size()); ++u)
    for (int j = 0; j < pendants[u]; ++j) g.add_edge(u, next++);
  return g;
}

// ---------------------------------------------------------------------------
// Independent brute-force oracles
// ---------------------------------------------------------------------------

// HIST existence by trying every (n-1)-subset of edges. Only for tiny n.
inline bool naive_hist_exists(const Graph& g) {
  if (g.n <= 1) return true;
  auto edges = g.edges();
  int need = g.n - 1;
  if (int(edges.size()) < need) return false;
  std::vector<int> pick(need);
  std::function<bool(int, int)> rec = [&](int idx, int from) -> bool {
    if (idx == need) {
      auto w = TreeWitness::from_edges(g.n, [&] {
        std::vector<std::pair<int, int>> sel;
        for (int e : pick) sel.push_back(edges[e]);
        return sel;
      }());
      if (!hist::is_spanning_tree(g, w)) return false;
      for (int v = 0; v < g.n; ++v)
        if (w.degrees[v] == 2) return false;
      return true;
    }
    for (int e = from; e < int(edges.size()); ++e) {
      pick[idx] = e;
      if (rec(idx + 1, e + 1)) return true;
    }
    return false;
  };
  return rec(0, 0);
}

// Like naive_hist_exists but returns the first witness found.
inline std::optional<TreeWitness> naive_find_hist(const Graph& g) {
  if (g.n <= 1) return TreeWitness::from_edges(g.n, {});
  auto edges = g.edges();
  int need = g.n - 1;
  if (int(edges.size()) < need) return std::nullopt;
  std::vector<int> pick(need);
  std::optional<TreeWitness> found;
  std::function<bool(int, int)> rec = [&](int idx, int from) -> bool {
    if (idx == need) {
      std::vector<std::pair<int, int>> sel;
      for (int e : pick) sel.push_back(edges[e]);
      auto w = TreeWitness::from_edges(g.n, sel);
      if (!hist::is_spanning_tree(g, w)) return false;
      for (int v = 0; v < g.n; ++v)
        if (w.degrees[v] == 2) return false;
      found = w;
      return true;
    }
    for (int e = from; e < int(edges.size()); ++e) {
      pick[idx] = e;
      if (rec(idx + 1, e + 1)) return true;
    }
    return false;
  };
  rec(0, 0);
  return found;
}

// Does G[S] have a spanning tree whose degree-1 set is exactly d1 and
// degree-2 set exactly d2? Brute force over edge subsets of G[S].
inline bool naive_degree_class_tree(const Graph& g, const std::vector<int>& sub,
                                    const std::set<int>& d1, const std::set<int>& d2) {
  std::vector<int> idx(g.n, -1);
  for (std::size_t i = 0; i < sub.size(); ++i) idx[sub[i]] = int(i);
  std::vector<std::pair<int, int>> edges;
  for (auto [u, v] : g.edges())
    if (idx[u] >= 0 && idx[v] >= 0) edges.emplace_back(idx[u], idx[v]);
  int k = int(sub.size());
  if (k == 0) return false;
  int need = k - 1;
  if (int(edges.size()) < need) return false;
  std::vector<int> pick(need);
  std::function<bool(int, int)> rec = [&](int at, int from) -> bool {
    if (at == need) {
      std::vector<std::pair<int, int>> sel;
      for (int e : pick) sel.push_back(edges[e]);
      auto w = TreeWitness::from_edges(k, sel);
      hist::detail::Dsu dsu(k);
      for (auto [u, v] : sel)
        if (!dsu.unite(u, v)) return false;
      for (int v = 0; v < k; ++v) {
        int orig = sub[v];
        bool want1 = d1.count(orig), want2 = d2.count(orig);
        if (want1 && w.degrees[v] != 1) return false;
        if (want2 && w.degrees[v] != 2) return false;
        if (!want1 && !want2 && w.degrees[v] < 3) return false;
      }
      return true;
    }
    for (int e = from; e < int(edges.size()); ++e) {
      pick[at] = e;
      if (rec(at + 1, e + 1)) return true;
    }
    return false;
  };
  return rec(0, 0);
}

// HISF variant restricted to non-degenerate forests: exactly k components,
// no cycle, no degree-2 vertex, and every component contains a vertex of
// degree >= 3. Brute force over edge subsets.
inline bool naive_hisf_branching(const Graph& g, int k) {
  auto edges = g.edges();
  int want = g.n - k;
  if (want < 0 || want > int(edges.size())) return false;
  std::vector<int> pick(want);
  std::function<bool(int, int)> rec = [&](int at, int from) -> bool {
    if (at == want) {
      hist::detail::Dsu dsu(g.n);
      std::vector<int> deg(g.n, 0);
      for (int e : pick) {
        auto [u, v] = edges[e];
        if (!dsu.unite(u, v)) return false;
        ++deg[u];
        ++deg[v];
      }
      for (int v = 0; v < g.n; ++v)
        if (deg[v] == 2) return false;
      std::map<int, bool> has_branch;
      for (int v = 0; v < g.n; ++v) has_branch[dsu.find(v)] |= (deg[v] >= 3);
      for (auto& [root, ok] : has_branch)
        if (!ok) return false;
      return true;
    }
    for (int e = from; e < int(edges.size()); ++e) {
      pick[at] = e;
      if (rec(at + 1, e + 1)) return true;
    }
    return false;
  };
  if (want == 0) return g.n == 0;  // isolated vertices have no branching vertex
  return rec(0, 0);
}

// Chordless cycle of length >= 4 existence by direct search: for every
// non-adjacent pair with a common neighbor, look for an induced path between
// them avoiding the rest of that neighborhood.
inline bool naive_has_hole(const Graph& g) {
  for (int v = 0; v < g.n; ++v)
    for (int a : g.adj[v])
      for (int b : g.adj[v]) {
        if (a >= b || g.has_edge(a, b)) continue;
        std::vector<char> banned(g.n, 0);
        banned[v] = 1;
        for (int u : g.adj[v]) banned[u] = 1;
        banned[a] = banned[b] = 0;
        std::vector<int> stack{a};
        std::vector<char> seen(g.n, 0);
        seen[a] = 1;
        while (!stack.empty()) {
          int u = stack.back();
          stack.pop_back();
          for (int w : g.adj[u])
            if (!banned[w] && !seen[w]) {
              seen[w] = 1;
              stack.push_back(w);
            }
        }
        if (seen[b]) return true;
      }
  return false;
}

// All valid split partitions by subset enumeration (n <= 20 or so).
inline std::vector<VertexSet> all_clique_sides(const Graph& g) {
  std::vector<VertexSet> out;
  for (std::uint32_t mask = 0; mask < (1u << g.n); ++mask) {
    VertexSet c = VertexSet::from_mask(g.n, mask);
    if (g.is_clique(c) && g.is_independent(VertexSet::full(g.n) - c)) out.push_back(c);
  }
  return out;
}

// Spanning tree count via the Kirchhoff matrix (fraction-free Bareiss).
inline long long matrix_tree_count(const Graph& g) {
  if (g.n <= 1) return 1;
  int k = g.n - 1;
  std::vector<std::vector<long long>> a(k, std::vector<long long>(k, 0));
  for (int u = 0; u < k; ++u) a[u][u] = g.degree(u);
  for (auto [u, v] : g.edges()) {
    if (u < k && v < k) {
      a[u][v] -= 1;
      a[v][u] -= 1;
    }
  }
  long long prev = 1;
  for (int i = 0; i < k - 1; ++i) {
    if (a[i][i] == 0) {
      int swap_with = -1;
      for (int r = i + 1; r < k; ++r)
        if (a[r][i] != 0) swap_with = r;
      if (swap_with < 0) return 0;
      std::swap(a[i], a[swap_with]);
      for (auto& row : a) row[i] = -row[i];  // keep the determinant sign
    }
    for (int r = i + 1; r < k; ++r)
      for (int c = i + 1; c < k; ++c) a[r][c] = (a[r][c] * a[i][i] - a[r][i] * a[i][c]) / prev;
    prev = a[i][i];
  }
  return a[k - 1][k - 1];
}

// ---------------------------------------------------------------------------
// Corpus enumeration and random corpora
// ---------------------------------------------------------------------------

// Every labeled connected graph on exactly n vertices.
inline void for_each_connected_graph(int n, const std::function<void(const Graph&)>& fn) {
  std::vector<std::pair<int, int>> all;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) all.emplace_back(u, v);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << all.size()); ++mask) {
    Graph g(n);
    for (std::size_t e = 0; e < all.size(); ++e)
      if ((mask >> e) & 1) g.add_edge(all[e].first, all[e].second);
    if (hist::is_connected(g)) fn(g);
  }
}

inline Graph random_connected(int n, double density, std::uint64_t seed) {
  for (std::uint64_t tweak = 0;; ++tweak) {
    Graph g = hist::gen_random(hist::RandomClass::any, n, density, seed + (tweak << 32));
    if (hist::is_connected(g)) return g;
  }
}

// Connected random split graph; non_block filters to instances some I-vertex
// of the canonical partition makes non-block-split.
inline std::optional<Graph> random_split_connected(int n, std::uint64_t seed, bool non_block) {
  std::mt19937_64 rng(seed ^ 0xabcdef12345ull);
  std::uniform_real_distribution<double> dens(0.2, 0.9);
  Graph g = hist::gen_random(hist::RandomClass::split, n, dens(rng), seed);
  if (!hist::is_connected(g)) return std::nullopt;
  auto p = hist::split_partition(g);
  if (!p) return std::nullopt;
  if (non_block == hist::is_block_split(g, *p)) return std::nullopt;
  if (hist::is_tree(g) || (g.n == 3 && hist::is_complete(g))) return std::nullopt;
  return g;
}

inline std::optional<Graph> random_block_split(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x5eed5eedull);
  std::uniform_int_distribution<int> csize(3, std::max(3, n - 1));
  int c = std::min(n, csize(rng));
  std::uniform_int_distribution<int> owner(0, c - 1);
  Graph g(n);
  for (int u = 0; u < c; ++u)
    for (int v = u + 1; v < c; ++v) g.add_edge(u, v);
  for (int v = c; v < n; ++v) g.add_edge(owner(rng), v);
  if (c == 3 && n == 3) return std::nullopt;  // K3
  return g;
}

// Random chordal diameter-3 non-split instance built around a dominating
// clique; rejects candidates failing the recognizers.
inline std::optional<Graph> random_chordal_d3(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0xd3d3d3ull);
  std::uniform_int_distribution<int> csize(2, std::min(5, n - 3));
  int c = csize(rng);
  Graph g(n);
  for (int u = 0; u < c; ++u)
    for (int v = u + 1; v < c; ++v) g.add_edge(u, v);
  std::uniform_int_distribution<int> owner(0, c - 1);
  std::vector<std::vector<int>> owners(n);
  for (int v = c; v < n; ++v) {
    // attach to a random nonempty clique subset (subsets of a clique are
    // cliques, so the result stays chordal)
    int first = owner(rng);
    g.add_edge(first, v);
    owners[v].push_back(first);
    for (int u = 0; u < c; ++u)
      if (u != first && std::uniform_real_distribution<double>(0, 1)(rng) < 0.25) {
        g.add_edge(u, v);
        owners[v].push_back(u);
      }
  }
  // a few outside edges between vertices sharing a clique neighbor
  std::uniform_int_distribution<int> tries(1, 3);
  int want = tries(rng);
  for (int t = 0; t < want * 4 && want > 0; ++t) {
    std::uniform_int_distribution<int> pick(c, n - 1);
    int a = pick(rng), b = pick(rng);
    if (a == b || g.has_edge(a, b)) continue;
    bool share = false;
    for (int u : owners[a])
      for (int w : owners[b]) share = share || (u == w);
    if (!share) continue;
    g.add_edge(a, b);
    --want;
  }
  if (!hist::is_connected(g)) return std::nullopt;
  auto d = hist::diameter(g);
  if (!d || *d != 3) return std::nullopt;
  if (hist::split_partition(g)) return std::nullopt;
  if (!hist::is_chordal(g)) return std::nullopt;
  return g;
}

// Clique clusters plus a small deletion set, for kernelization tests.
inline Graph planted_cluster(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0xc105e2ull);
  std::uniform_int_distribution<int> spick(0, 2);
  int s = std::min(spick(rng), n - 2);
  int rest = n - s;
  std::vector<int> sizes;
  while (rest > 0) {
    std::uniform_int_distribution<int> csize(1, rest);
    int c = csize(rng);
    if (std::uniform_real_distribution<double>(0, 1)(rng) < 0.6) c = rest;  // favor big cliques
    sizes.push_back(c);
    rest -= c;
  }
  Graph g(n);
  int base = s;
  std::vector<std::pair<int, int>> ranges;
  for (int c : sizes) {
    for (int u = base; u < base + c; ++u)
      for (int v = u + 1; v < base + c; ++v) g.add_edge(u, v);
    ranges.emplace_back(base, base + c);
    base += c;
  }
  // connect S vertices to random clique members and to each other
  for (int a = 0; a < s; ++a) {
    for (auto [lo, hi] : ranges)
      for (int v = lo; v < hi; ++v)
        if (std::uniform_real_distribution<double>(0, 1)(rng) < 0.5) g.add_edge(a, v);
    for (int b = a + 1; b < s; ++b)
      if (std::uniform_real_distribution<double>(0, 1)(rng) < 0.5) g.add_edge(a, b);
  }
  // stitch everything connected via vertex 0 of each range
  for (std::size_t i = 0; i + 1 < ranges.size(); ++i)
    if (!g.has_edge(ranges[i].first, ranges[i + 1].first))
      g.add_edge(ranges[i].first, ranges[i + 1].first);
  if (s > 0 && !ranges.empty() && !g.has_edge(0, ranges[0].first))
    g.add_edge(0, ranges[0].first);
  return g;
}

// ---------------------------------------------------------------------------
// Chordal-bipartite instances for the hardness pipeline
// ---------------------------------------------------------------------------

// No induced cycle of length >= 6; exhaustive over subsets (n <= 14).
inline bool is_chordal_bipartite_desk(const Graph& g) {
  for (std::uint32_t mask = 0; mask < (1u << g.n); ++mask) {
    int k = std::popcount(mask);
    if (k < 6) continue;
    std::vector<int> vs;
    for (int v = 0; v < g.n; ++v)
      if ((mask >> v) & 1) vs.push_back(v);
    // induced subgraph must be a cycle: all degrees 2, connected
    bool cyc = true;
    int edges = 0;
    for (std::size_t i = 0; i < vs.size() && cyc; ++i) {
      int d = 0;
      for (std::size_t j = 0; j < vs.size(); ++j)
        if (i != j && g.has_edge(vs[i], vs[j])) ++d;
      cyc = (d == 2);
      edges += d;
    }
    if (!cyc || edges != 2 * k) continue;
    VertexSet s = VertexSet::from_mask(g.n, mask);
    std::vector<int> kept;
    Graph sub = hist::induced_subgraph(g, s, &kept);
    if (hist::is_connected(sub)) return false;  // found an induced long cycle
  }
  return true;
}

// Random bipartite instance with equal sides, pendant s (in U) and t (in V),
// connected and chordal bipartite.
struct BipartiteInstance {
  Graph g;
  int s = 0, t = 0;
};

inline std::optional<BipartiteInstance> random_chordal_bipartite(int u_size, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0xb1f2ull);
  int n = 2 * u_size;
  // U side: 0..u-1 (s = 0), V side: u..n-1 (t = n-1)
  Graph g(n);
  std::uniform_real_distribution<double> coin(0, 1);
  // s attaches to exactly one non-t V vertex; t to one non-s U vertex
  if (u_size < 2) return std::nullopt;
  std::uniform_int_distribution<int> vpick(u_size, n - 2);
  std::uniform_int_distribution<int> upick(1, u_size - 1);
  g.add_edge(0, vpick(rng));
  g.add_edge(upick(rng), n - 1);
  for (int a = 1; a < u_size; ++a)
    for (int b = u_size; b < n - 1; ++b)
      if (coin(rng) < 0.55) g.add_edge(a, b);
  if (!hist::is_connected(g)) return std::nullopt;
  if (g.degree(0) != 1 || g.degree(n - 1) != 1) return std::nullopt;
  if (!is_chordal_bipartite_desk(g)) return std::nullopt;
  return BipartiteInstance{g, 0, n - 1};
}

// ---------------------------------------------------------------------------
// Tiny parallel map used by the heavier corpora
// ---------------------------------------------------------------------------

inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn,
                         int workers = 2) {
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::atomic<bool> failed{false};
  std::vector<std::string> errors(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      while (!failed.load()) {
        std::size_t i = next.fetch_add(1);
        if (i >= count) break;
        try {
          fn(i);
        } catch (const std::exception& e) {
          errors[w] = e.what();
          failed.store(true);
        }
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (!e.empty()) throw std::runtime_error(e);
}

}  // namespace support
