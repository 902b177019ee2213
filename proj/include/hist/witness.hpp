#pragma once

#include <numeric>
#include <utility>
#include <vector>

#include "hist/errors.hpp"
#include "hist/graph.hpp"

namespace hist {

// Edge list asserted to be a spanning tree, together with its degree profile.
struct TreeWitness {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> degrees;

  static TreeWitness from_edges(int n, std::vector<std::pair<int, int>> edges) {
    TreeWitness w;
    w.n = n;
    w.edges = std::move(edges);
    w.degrees.assign(n, 0);
    for (auto [u, v] : w.edges) {
      if (u < 0 || u >= n || v < 0 || v >= n)
        throw error(errc::vertex_out_of_range, "witness edge endpoint out of range");
      ++w.degrees[u];
      ++w.degrees[v];
    }
    return w;
  }
};

namespace detail {
struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    p[a] = b;
    return true;
  }
};
}  // namespace detail

// True iff the witness edges form a spanning tree of g in which no vertex has
// degree exactly two. Edges absent from g are an error, not a false.
inline bool verify_hist(const Graph& g, const TreeWitness& t) {
  if (t.n != g.n) return false;
  for (auto [u, v] : t.edges)
    if (!g.has_edge(u, v))
      throw error(errc::edge_not_in_graph,
                  "{" + std::to_string(u) + "," + std::to_string(v) + "} not in graph");
  if ((long long)t.edges.size() != g.n - 1) return false;
  detail::Dsu dsu(g.n);
  for (auto [u, v] : t.edges)
    if (!dsu.unite(u, v)) return false;  // cycle
  // n-1 edges and acyclic => spanning tree
  for (int v = 0; v < g.n; ++v)
    if (t.degrees[v] == 2) return false;
  return true;
}

// Weaker check used internally: spanning tree, degrees unconstrained.
inline bool is_spanning_tree(const Graph& g, const TreeWitness& t) {
  if (t.n != g.n || (long long)t.edges.size() != g.n - 1) return false;
  detail::Dsu dsu(g.n);
  for (auto [u, v] : t.edges) {
    if (!g.has_edge(u, v)) return false;
    if (!dsu.unite(u, v)) return false;
  }
  return true;
}

}  // namespace hist
