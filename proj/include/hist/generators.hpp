#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "hist/errors.hpp"
#include "hist/graph.hpp"

namespace hist {

// A(p_1,...,p_k): hub x = 0, clique y_1..y_k = 1..k, then the blocks U_i.
// Each block member is adjacent to x and to its y_i; the y's form a clique.
inline Graph gen_a(const std::vector<int>& p) {
  if (p.empty()) throw error(errc::empty_params, "A family needs at least one block");
  for (int pi : p)
    if (pi < 1) throw error(errc::empty_params, "block sizes must be positive");
  int k = int(p.size());
  int total = 0;
  for (int pi : p) total += pi;
  Graph g(1 + k + total);
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) g.add_edge(i, j);
  int next = 1 + k;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < p[i]; ++j) {
      g.add_edge(0, next);
      g.add_edge(1 + i, next);
      ++next;
    }
  return g;
}

// B_n = A(2, n-5) plus the edge between the two members of the first block
// (ids 3 and 4 under gen_a's layout).
inline Graph gen_b(int n) {
  if (n - 5 < 1) throw error(errc::too_small, "B_n needs n >= 6");
  Graph g = gen_a({2, n - 5});
  g.add_edge(3, 4);
  return g;
}

struct HardnessInstance {
  Graph h;        // the final pendant-augmented graph
  Graph g_prime;  // bipartite instance with s' and s'' added
  Graph g_pp;     // g_prime with the U side completed into a clique
  int s = -1, t = -1, s_prime = -1, s_dprime = -1;
  std::vector<int> side;        // 0 = U side, 1 = V side, for original ids
  std::vector<int> pendant_of;  // pendant id -> host (h ids)
  int u_size = 0;
};

// Reduction pipeline from an s-t Hamiltonian path instance on a (chordal)
// bipartite graph with equal sides and pendant s, t. Vertex ids of g are
// preserved; s' and s'' take the next two ids, pendants follow.
inline HardnessInstance gen_hardness(const Graph& g, int s, int t) {
  g.check_vertex(s);
  g.check_vertex(t);
  if (!is_connected(g)) throw error(errc::not_bipartite, "instance must be connected");
  // 2-color
  std::vector<int> side(g.n, -1);
  side[s] = 0;
  std::vector<int> stack{s};
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v : g.adj[u]) {
      if (side[v] < 0) {
        side[v] = 1 - side[u];
        stack.push_back(v);
      } else if (side[v] == side[u]) {
        throw error(errc::not_bipartite, "odd cycle found");
      }
    }
  }
  int u_cnt = int(std::count(side.begin(), side.end(), 0));
  if (2 * u_cnt != g.n) throw error(errc::unequal_parts, "sides differ in size");
  if (side[t] != 1) throw error(errc::unequal_parts, "t must lie opposite s");
  if (g.degree(s) != 1) throw error(errc::not_pendant, "s must be a pendant vertex");
  if (g.degree(t) != 1) throw error(errc::not_pendant, "t must be a pendant vertex");

  HardnessInstance inst;
  inst.s = s;
  inst.t = t;
  inst.side = side;
  inst.u_size = u_cnt;
  int sp = g.n, sdp = g.n + 1;
  inst.s_prime = sp;
  inst.s_dprime = sdp;

  Graph gp(g.n + 2);
  for (auto [a, b] : g.edges()) gp.add_edge(a, b);
  gp.add_edge(s, sdp);
  for (int v = 0; v < g.n; ++v)
    if (side[v] == 1 && v != t) gp.add_edge(sp, v);
  gp.add_edge(sp, sdp);
  inst.g_prime = gp;

  Graph gpp = gp;
  for (int a = 0; a < g.n; ++a) {
    if (side[a] != 0) continue;
    for (int b = a + 1; b < g.n; ++b)
      if (side[b] == 0) gpp.add_edge(a, b);
    gpp.add_edge(a, sp);
  }
  inst.g_pp = gpp;

  // H: one pendant per vertex of U cup V cup {s''} minus {t}, two for s'.
  std::vector<int> hosts;
  for (int v = 0; v < g.n; ++v)
    if (v != t) hosts.push_back(v);
  hosts.push_back(sdp);
  hosts.push_back(sp);
  hosts.push_back(sp);
  Graph h(gpp.n + int(hosts.size()));
  for (auto [a, b] : gpp.edges()) h.add_edge(a, b);
  inst.pendant_of.assign(h.n, -1);
  int next = gpp.n;
  for (int host : hosts) {
    h.add_edge(host, next);
    inst.pendant_of[next] = host;
    ++next;
  }
  inst.h = h;
  return inst;
}

// Seeded random generators. Identical seeds give identical graphs.
enum class RandomClass { any, split, block_split, chordal };

inline Graph gen_random(RandomClass cls, int n, double density, std::uint64_t seed) {
  if (n < 1) throw error(errc::precondition, "n must be positive");
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ull + 12345);
  std::bernoulli_distribution coin(std::clamp(density, 0.0, 1.0));
  Graph g(n);
  switch (cls) {
    case RandomClass::any: {
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
          if (coin(rng)) g.add_edge(u, v);
      break;
    }
    case RandomClass::split: {
      int c = std::clamp(1 + int(density * (n - 1)), 1, n);
      for (int u = 0; u < c; ++u)
        for (int v = u + 1; v < c; ++v) g.add_edge(u, v);
      for (int v = c; v < n; ++v)
        for (int u = 0; u < c; ++u)
          if (coin(rng)) g.add_edge(u, v);
      break;
    }
    case RandomClass::block_split: {
      int c = std::clamp(3 + int(density * (n - 3)), 1, n);
      for (int u = 0; u < c; ++u)
        for (int v = u + 1; v < c; ++v) g.add_edge(u, v);
      std::uniform_int_distribution<int> pick(0, c - 1);
      for (int v = c; v < n; ++v) g.add_edge(pick(rng), v);
      break;
    }
    case RandomClass::chordal: {
      // Each new vertex attaches to a clique inside the existing graph, so
      // the reverse insertion order is a perfect elimination order and the
      // result is connected.
      for (int v = 1; v < n; ++v) {
        std::uniform_int_distribution<int> pick(0, v - 1);
        int anchor = pick(rng);
        std::vector<int> clique{anchor};
        std::vector<int> common;
        for (int u : g.adj[anchor])
          if (u < v) common.push_back(u);
        std::binomial_distribution<int> extra(int(common.size()), density);
        int want = extra(rng);
        std::shuffle(common.begin(), common.end(), rng);
        for (int u : common) {
          if (int(clique.size()) >= 1 + want) break;
          bool ok = true;
          for (int c : clique) ok = ok && g.has_edge(u, c);
          if (ok) clique.push_back(u);
        }
        for (int c : clique) g.add_edge(c, v);
      }
      break;
    }
  }
  return g;
}

}  // namespace hist
