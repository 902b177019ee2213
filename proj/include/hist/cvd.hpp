#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "hist/errors.hpp"
#include "hist/graph.hpp"
#include "hist/verdict.hpp"
#include "hist/vertex_set.hpp"
#include "hist/witness.hpp"

namespace hist {

// Deletion set plus the clique decomposition of the rest: G minus S is a
// disjoint union of cliques, each partitioned into true-twin classes by the
// neighborhoods in S.
struct CvdDecomposition {
  VertexSet S;
  std::vector<VertexSet> cliques;
  std::vector<std::vector<VertexSet>> twin_classes;  // per clique
};

namespace cvd_detail {

// First induced P3 (u-v-w with u,w non-adjacent) avoiding deleted vertices.
inline std::optional<std::array<int, 3>> find_p3(const Graph& g, const std::vector<char>& deleted) {
  for (int v = 0; v < g.n; ++v) {
    if (deleted[v]) continue;
    const auto& nb = g.adj[v];
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (deleted[nb[i]]) continue;
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        if (deleted[nb[j]]) continue;
        if (!g.has_edge(nb[i], nb[j])) return std::array<int, 3>{nb[i], v, nb[j]};
      }
    }
  }
  return std::nullopt;
}

inline bool cvd_branch(const Graph& g, std::vector<char>& deleted, int budget,
                       std::vector<int>& out) {
  auto p3 = find_p3(g, deleted);
  if (!p3) return true;
  if (budget == 0) return false;
  for (int v : *p3) {
    deleted[v] = 1;
    out.push_back(v);
    if (cvd_branch(g, deleted, budget - 1, out)) return true;
    out.pop_back();
    deleted[v] = 0;
  }
  return false;
}

}  // namespace cvd_detail

// Branching on induced P3s: a set S with |S| <= budget whose removal leaves a
// cluster graph, or nullopt.
inline std::optional<VertexSet> cluster_vertex_deletion(const Graph& g, int budget) {
  std::vector<char> deleted(g.n, 0);
  std::vector<int> out;
  if (!cvd_detail::cvd_branch(g, deleted, budget, out)) return std::nullopt;
  return VertexSet::from(g.n, out);
}

inline CvdDecomposition decompose_by_deletion_set(const Graph& g, const VertexSet& s) {
  CvdDecomposition d;
  d.S = s;
  std::vector<char> seen(g.n, 0);
  for (int v : s.to_vector()) seen[v] = 1;
  for (int start = 0; start < g.n; ++start) {
    if (seen[start]) continue;
    VertexSet comp(g.n);
    std::vector<int> stack{start};
    seen[start] = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      comp.insert(u);
      for (int w : g.adj[u])
        if (!seen[w] && !s.contains(w)) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    if (!g.is_clique(comp))
      throw error(errc::invalid_decomposition, "component outside S is not a clique");
    // group by neighborhoods inside S
    std::map<std::vector<int>, VertexSet> classes;
    for (int u : comp.to_vector()) {
      std::vector<int> key;
      for (int w : g.adj[u])
        if (s.contains(w)) key.push_back(w);
      auto it = classes.find(key);
      if (it == classes.end())
        classes.emplace(key, VertexSet::of(g.n, {u}));
      else
        it->second.insert(u);
    }
    std::vector<VertexSet> cls;
    for (auto& [key, set] : classes) cls.push_back(set);
    d.cliques.push_back(std::move(comp));
    d.twin_classes.push_back(std::move(cls));
  }
  return d;
}

// Size reduction: inside each clique with l twin classes, any class of size
// at least l + |S| + 3 shrinks to l + |S| + 1, preserving HIST existence.
// Returns the reduced graph and the old->new id map (-1 for deleted).
inline std::pair<Graph, std::vector<int>> kernelize(const Graph& g, const CvdDecomposition& d) {
  int s_size = d.S.size();
  VertexSet keep = VertexSet::full(g.n);
  for (std::size_t ci = 0; ci < d.cliques.size(); ++ci) {
    int l = int(d.twin_classes[ci].size());
    for (const auto& cls : d.twin_classes[ci]) {
      int target = l + s_size + 1;
      if (cls.size() >= l + s_size + 3) {
        auto members = cls.to_vector();  // keep the lowest ids
        for (std::size_t i = target; i < members.size(); ++i) keep.erase(members[i]);
      }
    }
  }
  std::vector<int> kept_ids;
  Graph reduced = induced_subgraph(g, keep, &kept_ids);
  std::vector<int> old_to_new(g.n, -1);
  for (int i = 0; i < int(kept_ids.size()); ++i) old_to_new[kept_ids[i]] = i;
  return {std::move(reduced), std::move(old_to_new)};
}

// Lifts a kernel HIST back to the full graph: each deleted twin-class group
// (always two or more vertices) attaches to one surviving member of its
// class, which ends with degree >= 3 regardless of its old role.
inline std::optional<TreeWitness> lift_kernel_witness(const Graph& g, const CvdDecomposition& d,
                                                      const std::vector<int>& old_to_new,
                                                      const TreeWitness& kernel_witness) {
  std::vector<int> new_to_old(kernel_witness.n, -1);
  for (int x = 0; x < g.n; ++x)
    if (old_to_new[x] >= 0) new_to_old[old_to_new[x]] = x;
  std::vector<std::pair<int, int>> edges;
  for (auto [a, b] : kernel_witness.edges) edges.emplace_back(new_to_old[a], new_to_old[b]);
  for (std::size_t ci = 0; ci < d.cliques.size(); ++ci) {
    for (const auto& cls : d.twin_classes[ci]) {
      std::vector<int> deleted, survivors;
      for (int v : cls.to_vector())
        (old_to_new[v] < 0 ? deleted : survivors).push_back(v);
      if (deleted.empty()) continue;
      if (deleted.size() < 2 || survivors.empty()) return std::nullopt;
      int host = survivors[0];
      for (int v : deleted) edges.emplace_back(host, v);
    }
  }
  auto w = TreeWitness::from_edges(g.n, std::move(edges));
  if (!verify_hist(g, w)) return std::nullopt;
  return w;
}

}  // namespace hist
