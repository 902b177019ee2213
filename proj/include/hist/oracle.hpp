#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "hist/errors.hpp"
#include "hist/graph.hpp"
#include "hist/verdict.hpp"
#include "hist/witness.hpp"

namespace hist {

struct OracleOptions {
  int max_n = 10;
  // Recursion-node budget; exceeding it raises TooLarge instead of silently
  // returning a wrong answer.
  std::uint64_t node_cap = 200000000;
};

namespace oracle_detail {

// Include/exclude search over the lexicographically sorted edge list. The
// include branch is taken first, so trees are visited in lexicographic order
// of their sorted edge-index lists. Excluding an edge is only allowed while
// the remaining graph stays connected (bridge detection). With prune_degree2
// set, branches that finalize a vertex at degree 2 (or 0) are cut; only
// spanning trees that could still be HISTs survive.
struct TreeSearch {
  const Graph& g;
  std::vector<std::pair<int, int>> edge_list;
  std::vector<int> last_touch;  // last edge index incident to each vertex
  bool prune_degree2 = false;
  std::uint64_t node_cap = 0;
  std::uint64_t nodes = 0;
  std::uint64_t trees = 0;
  // Return true to stop the search (sink saw enough).
  std::function<bool(const std::vector<int>&)> sink;

  explicit TreeSearch(const Graph& graph) : g(graph), edge_list(graph.edges()) {
    last_touch.assign(g.n, -1);
    for (int i = 0; i < int(edge_list.size()); ++i) {
      last_touch[edge_list[i].first] = i;
      last_touch[edge_list[i].second] = i;
    }
  }

  bool remaining_connected(const std::vector<int>& chosen, int next) const {
    // BFS over chosen edges plus all edges with index >= next.
    std::vector<std::vector<int>> adj(g.n);
    for (int e : chosen) {
      adj[edge_list[e].first].push_back(edge_list[e].second);
      adj[edge_list[e].second].push_back(edge_list[e].first);
    }
    for (int e = next; e < int(edge_list.size()); ++e) {
      adj[edge_list[e].first].push_back(edge_list[e].second);
      adj[edge_list[e].second].push_back(edge_list[e].first);
    }
    std::vector<char> seen(g.n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int cnt = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : adj[u])
        if (!seen[v]) {
          seen[v] = 1;
          ++cnt;
          stack.push_back(v);
        }
    }
    return cnt == g.n;
  }

  bool degree_ok_final(int d) const { return d == 1 || d >= 3; }

  // dsu and deg are copied per level; depth <= m and n is desk scale.
  bool rec(int next, int chosen_count, std::vector<int> chosen, detail::Dsu dsu,
           std::vector<int> deg) {
    if (++nodes > node_cap) throw error(errc::too_large, "oracle node budget exceeded");
    if (chosen_count == g.n - 1) {
      ++trees;
      return sink(chosen);
    }
    if (next == int(edge_list.size())) return false;
    auto [u, v] = edge_list[next];

    // include
    if (dsu.find(u) != dsu.find(v)) {
      auto dsu2 = dsu;
      auto deg2 = deg;
      dsu2.unite(u, v);
      ++deg2[u];
      ++deg2[v];
      bool ok = true;
      if (prune_degree2) {
        if (last_touch[u] == next && !degree_ok_final(deg2[u])) ok = false;
        if (last_touch[v] == next && !degree_ok_final(deg2[v])) ok = false;
      }
      if (ok) {
        auto chosen2 = chosen;
        chosen2.push_back(next);
        if (rec(next + 1, chosen_count + 1, std::move(chosen2), std::move(dsu2), std::move(deg2)))
          return true;
      }
    }

    // exclude
    bool ok = true;
    if (last_touch[u] == next && deg[u] == 0) ok = false;
    if (last_touch[v] == next && deg[v] == 0) ok = false;
    if (ok && prune_degree2) {
      if (last_touch[u] == next && !degree_ok_final(deg[u])) ok = false;
      if (last_touch[v] == next && !degree_ok_final(deg[v])) ok = false;
    }
    if (ok && remaining_connected(chosen, next + 1))
      return rec(next + 1, chosen_count, std::move(chosen), std::move(dsu), std::move(deg));
    return false;
  }

  void run() {
    if (g.n <= 1) {
      ++trees;
      sink({});
      return;
    }
    rec(0, 0, {}, detail::Dsu(g.n), std::vector<int>(g.n, 0));
  }
};

}  // namespace oracle_detail

// Ground-truth HIST decision by spanning tree enumeration. Early exit on the
// first tree with no degree-2 vertex.
inline Verdict oracle_hist(const Graph& g, const OracleOptions& opts = {}) {
  if (!is_connected(g))
    throw error(errc::disconnected, "oracle_hist requires a connected graph");
  if (g.n > opts.max_n)
    throw error(errc::too_large, "n=" + std::to_string(g.n) + " over oracle bound " +
                                     std::to_string(opts.max_n));
  if (g.n == 1) return Verdict::yes("oracle", TreeWitness::from_edges(1, {}));

  oracle_detail::TreeSearch search(g);
  search.prune_degree2 = true;
  search.node_cap = opts.node_cap;
  std::optional<TreeWitness> found;
  search.sink = [&](const std::vector<int>& chosen) {
    std::vector<std::pair<int, int>> edges;
    edges.reserve(chosen.size());
    for (int e : chosen) edges.push_back(search.edge_list[e]);
    auto w = TreeWitness::from_edges(g.n, std::move(edges));
    for (int v = 0; v < g.n; ++v)
      if (w.degrees[v] == 2) return false;  // pruning keeps this unreachable
    found = std::move(w);
    return true;
  };
  search.run();
  if (found) return Verdict::yes("oracle", std::move(*found));
  return Verdict::no("oracle", Certificate{"oracle-exhaustion", {{"n", g.n}, {"m", g.m}}});
}

// Number of spanning trees, by full enumeration (no degree pruning).
inline std::uint64_t count_spanning_trees(const Graph& g, const OracleOptions& opts = {}) {
  if (!is_connected(g)) return 0;
  if (g.n <= 1) return 1;
  oracle_detail::TreeSearch search(g);
  search.node_cap = opts.node_cap;
  search.sink = [](const std::vector<int>&) { return false; };
  search.run();
  return search.trees;
}

// True iff some spanning forest with exactly k components has no cycle and no
// degree-2 vertex.
inline bool oracle_hisf(const Graph& g, int k, const OracleOptions& opts = {}) {
  if (g.n > opts.max_n)
    throw error(errc::too_large, "n=" + std::to_string(g.n) + " over oracle bound");
  if (k < 1 || k > g.n) throw error(errc::precondition, "component count out of range");
  int want_edges = g.n - k;
  auto edge_list = g.edges();
  std::vector<int> last_touch(g.n, -1);
  for (int i = 0; i < int(edge_list.size()); ++i) {
    last_touch[edge_list[i].first] = i;
    last_touch[edge_list[i].second] = i;
  }
  std::uint64_t nodes = 0;
  std::function<bool(int, int, detail::Dsu&, std::vector<int>&)> rec =
      [&](int next, int chosen, detail::Dsu& dsu, std::vector<int>& deg) -> bool {
    if (++nodes > opts.node_cap) throw error(errc::too_large, "oracle node budget exceeded");
    if (chosen == want_edges) {
      for (int v = 0; v < g.n; ++v)
        if (deg[v] == 2) return false;
      return true;
    }
    if (next == int(edge_list.size())) return false;
    if (int(edge_list.size()) - next < want_edges - chosen) return false;
    auto [u, v] = edge_list[next];
    if (dsu.find(u) != dsu.find(v)) {
      auto dsu2 = dsu;
      auto deg2 = deg;
      dsu2.unite(u, v);
      ++deg2[u];
      ++deg2[v];
      bool ok = true;
      if (last_touch[u] == next && deg2[u] == 2) ok = false;
      if (last_touch[v] == next && deg2[v] == 2) ok = false;
      if (ok && rec(next + 1, chosen + 1, dsu2, deg2)) return true;
    }
    bool ok = true;
    if (last_touch[u] == next && deg[u] == 2) ok = false;
    if (last_touch[v] == next && deg[v] == 2) ok = false;
    if (ok) return rec(next + 1, chosen, dsu, deg);
    return false;
  };
  detail::Dsu dsu(g.n);
  std::vector<int> deg(g.n, 0);
  return rec(0, 0, dsu, deg);
}

// s-t Hamiltonian path via bitmask DP over (visited set, endpoint).
inline std::optional<std::vector<int>> hamiltonian_path(const Graph& g, int s, int t,
                                                        int max_n = 20) {
  g.check_vertex(s);
  g.check_vertex(t);
  if (g.n > max_n) throw error(errc::too_large, "n over hamiltonian path bound");
  if (s == t) {
    if (g.n == 1) return std::vector<int>{s};
    return std::nullopt;
  }
  int n = g.n;
  std::vector<std::uint32_t> nbr(n, 0);
  for (int v = 0; v < n; ++v)
    for (int u : g.adj[v]) nbr[v] |= std::uint32_t{1} << u;
  std::vector<std::uint32_t> reach(std::size_t(1) << n, 0);
  reach[std::uint32_t{1} << s] = std::uint32_t{1} << s;
  std::uint32_t full = (n == 32) ? ~std::uint32_t{0} : ((std::uint32_t{1} << n) - 1);
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    std::uint32_t ends = reach[mask];
    if (!ends) continue;
    std::uint32_t e = ends;
    while (e) {
      int v = std::countr_zero(e);
      e &= e - 1;
      std::uint32_t nxt = nbr[v] & ~mask;
      while (nxt) {
        int w = std::countr_zero(nxt);
        nxt &= nxt - 1;
        reach[mask | (std::uint32_t{1} << w)] |= std::uint32_t{1} << w;
      }
    }
  }
  if (!(reach[full] & (std::uint32_t{1} << t))) return std::nullopt;
  // Walk backwards from t.
  std::vector<int> path;
  std::uint32_t mask = full;
  int cur = t;
  path.push_back(t);
  while (mask != (std::uint32_t{1} << s)) {
    std::uint32_t prev_mask = mask & ~(std::uint32_t{1} << cur);
    std::uint32_t cands = reach[prev_mask] & nbr[cur];
    int p = std::countr_zero(cands);
    path.push_back(p);
    mask = prev_mask;
    cur = p;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace hist
