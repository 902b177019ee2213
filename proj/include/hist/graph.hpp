#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hist/errors.hpp"
#include "hist/vertex_set.hpp"

namespace hist {

// Simple undirected graph on dense 0-based vertex ids. Adjacency lists are
// kept sorted; no self-loops, no parallel edges. Immutable once built, so all
// queries are safe to run concurrently.
struct Graph {
  int n = 0;
  long long m = 0;
  std::vector<std::vector<int>> adj;

  Graph() = default;
  explicit Graph(int vertices) : n(vertices), adj(vertices) {
    if (vertices < 0) throw error(errc::malformed_header, "negative vertex count");
  }

  void check_vertex(int v, int line = -1) const {
    if (v < 0 || v >= n)
      throw error(errc::vertex_out_of_range,
                  "vertex " + std::to_string(v) + " not in [0," + std::to_string(n) + ")", line);
  }

  bool has_edge(int u, int v) const {
    if (u < 0 || u >= n || v < 0 || v >= n) return false;
    const auto& a = adj[u].size() <= adj[v].size() ? adj[u] : adj[v];
    int t = (&a == &adj[u]) ? v : u;
    return std::binary_search(a.begin(), a.end(), t);
  }

  void add_edge(int u, int v, int line = -1) {
    check_vertex(u, line);
    check_vertex(v, line);
    if (u == v) throw error(errc::self_loop, "self-loop at vertex " + std::to_string(u), line);
    if (has_edge(u, v))
      throw error(errc::duplicate_edge,
                  "edge {" + std::to_string(u) + "," + std::to_string(v) + "} repeated", line);
    adj[u].insert(std::upper_bound(adj[u].begin(), adj[u].end(), v), v);
    adj[v].insert(std::upper_bound(adj[v].begin(), adj[v].end(), u), u);
    ++m;
  }

  int degree(int v) const { return int(adj[v].size()); }

  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(std::size_t(m));
    for (int u = 0; u < n; ++u)
      for (int v : adj[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  // Neighborhood as a machine word; only valid for n <= 64.
  std::uint64_t neighbor_mask(int v) const {
    std::uint64_t mask = 0;
    for (int u : adj[v]) mask |= std::uint64_t{1} << u;
    return mask;
  }

  VertexSet neighbor_set(int v) const {
    VertexSet s(n);
    for (int u : adj[v]) s.insert(u);
    return s;
  }

  bool adjacent_to_all(int v, const VertexSet& s) const {
    for (int u : s.to_vector())
      if (u != v && !has_edge(u, v)) return false;
    return true;
  }

  bool is_clique(const VertexSet& s) const {
    auto vs = s.to_vector();
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = i + 1; j < vs.size(); ++j)
        if (!has_edge(vs[i], vs[j])) return false;
    return true;
  }

  bool is_independent(const VertexSet& s) const {
    auto vs = s.to_vector();
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = i + 1; j < vs.size(); ++j)
        if (has_edge(vs[i], vs[j])) return false;
    return true;
  }
};

// Edge-list text format: header "n m", then m lines "u v". Blank lines and
// lines starting with '#' are ignored. Errors carry the 1-based line number.
inline Graph parse_edge_list(std::istream& in) {
  std::string line;
  int line_no = 0;
  auto next_tokens = [&](std::vector<long long>& toks) -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      std::size_t first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos) continue;
      if (line[first] == '#') continue;
      std::istringstream ls(line);
      toks.clear();
      long long x;
      while (ls >> x) toks.push_back(x);
      if (!ls.eof()) {
        std::string junk;
        ls.clear();
        ls >> junk;
        throw error(errc::malformed_header, "unexpected token '" + junk + "'", line_no);
      }
      return true;
    }
    return false;
  };

  std::vector<long long> toks;
  if (!next_tokens(toks)) throw error(errc::malformed_header, "empty input", line_no + 1);
  if (toks.size() != 2 || toks[0] < 0 || toks[1] < 0)
    throw error(errc::malformed_header, "expected header 'n m'", line_no);
  long long n = toks[0], m = toks[1];
  if (n > 10000000) throw error(errc::too_large, "vertex count " + std::to_string(n));
  Graph g{int(n)};
  for (long long i = 0; i < m; ++i) {
    if (!next_tokens(toks))
      throw error(errc::malformed_header,
                  "expected " + std::to_string(m) + " edges, got " + std::to_string(i), line_no + 1);
    if (toks.size() != 2) throw error(errc::malformed_header, "expected edge 'u v'", line_no);
    g.add_edge(int(toks[0]), int(toks[1]), line_no);
  }
  if (next_tokens(toks)) throw error(errc::malformed_header, "trailing content after edges", line_no);
  return g;
}

inline Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  return parse_edge_list(in);
}

inline std::string serialize(const Graph& g) {
  std::ostringstream out;
  out << g.n << ' ' << g.m << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

inline std::vector<int> bfs_distances(const Graph& g, int src) {
  std::vector<int> dist(g.n, -1);
  std::deque<int> q;
  dist[src] = 0;
  q.push_back(src);
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (int v : g.adj[u])
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        q.push_back(v);
      }
  }
  return dist;
}

inline bool is_connected(const Graph& g) {
  if (g.n <= 1) return true;
  auto d = bfs_distances(g, 0);
  return std::find(d.begin(), d.end(), -1) == d.end();
}

// nullopt encodes an infinite diameter (disconnected input).
inline std::optional<int> diameter(const Graph& g) {
  if (g.n == 0) return 0;
  int best = 0;
  for (int s = 0; s < g.n; ++s) {
    auto d = bfs_distances(g, s);
    for (int v = 0; v < g.n; ++v) {
      if (d[v] < 0) return std::nullopt;
      best = std::max(best, d[v]);
    }
  }
  return best;
}

inline bool is_tree(const Graph& g) { return g.n >= 1 && g.m == g.n - 1 && is_connected(g); }

inline bool is_complete(const Graph& g) { return g.m == (long long)g.n * (g.n - 1) / 2; }

inline Graph complement(const Graph& g) {
  Graph c(g.n);
  for (int u = 0; u < g.n; ++u)
    for (int v = u + 1; v < g.n; ++v)
      if (!g.has_edge(u, v)) c.add_edge(u, v);
  return c;
}

// Induced subgraph, re-indexed densely. kept[i] is the original id of new
// vertex i.
inline Graph induced_subgraph(const Graph& g, const VertexSet& s, std::vector<int>* kept = nullptr) {
  auto vs = s.to_vector();
  std::vector<int> idx(g.n, -1);
  for (std::size_t i = 0; i < vs.size(); ++i) idx[vs[i]] = int(i);
  Graph sub(int(vs.size()));
  for (int u : vs)
    for (int v : g.adj[u])
      if (idx[v] >= 0 && u < v) sub.add_edge(idx[u], idx[v]);
  if (kept) *kept = vs;
  return sub;
}

}  // namespace hist
