#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <new>
#include <utility>
#include <vector>

#include "hist/errors.hpp"
#include "hist/graph.hpp"
#include "hist/verdict.hpp"
#include "hist/vertex_set.hpp"
#include "hist/witness.hpp"

namespace hist {

struct ExactDpOptions {
  // 4^n-bit table: n=14 is 32 MiB, n=16 is 512 MiB. Allocation failures above
  // the default surface as TooLarge.
  int max_n = 16;
  std::function<void(int)> layer_progress;  // called after each |S| layer
};

// Subset DP over states (S, S1, S2): C[S][S1][S2] is true iff G[S] has a
// spanning tree whose degree-1 vertices are exactly S1 and degree-2 vertices
// exactly S2 (all remaining vertices of S have degree >= 3). Each vertex
// occupies one base-4 digit of the table index: 0 = outside S, 1 = S1,
// 2 = S2, 3 = in S unassigned.
class DpTable {
 public:
  DpTable(const Graph& g, const ExactDpOptions& opts = {}) : n_(g.n) {
    if (n_ > opts.max_n || n_ > 18)
      throw error(errc::too_large,
                  "n=" + std::to_string(n_) + " over DP bound " + std::to_string(opts.max_n));
    pow4_.resize(n_ + 1);
    for (int v = 0; v <= n_; ++v) pow4_[v] = std::uint64_t{1} << (2 * v);
    spread16_.resize(1u << std::min(n_, 16));
    for (std::uint32_t m = 0; m < spread16_.size(); ++m) {
      std::uint64_t s = 0;
      for (std::uint32_t x = m; x; x &= x - 1) s += pow4_[std::countr_zero(x)];
      spread16_[m] = s;
    }
    adj_mask_.resize(n_);
    for (int v = 0; v < n_; ++v) {
      std::uint32_t mask = 0;
      for (int u : g.adj[v]) mask |= std::uint32_t{1} << u;
      adj_mask_[v] = mask;
    }
    std::uint64_t states = std::uint64_t{1} << (2 * n_);
    try {
      bits_.assign((states + 63) / 64, 0);
    } catch (const std::bad_alloc&) {
      throw error(errc::too_large, "DP table allocation failed for n=" + std::to_string(n_));
    }
    build(g, opts);
  }

  int n() const { return n_; }

  bool test_masks(std::uint32_t s, std::uint32_t s1, std::uint32_t s2) const {
    return get(index_of(s, s1, s2));
  }

  // Direct table lookup for the generalized entry point: does G[S] have a
  // spanning tree with degree-1 set exactly M1 and degree-2 set exactly M2?
  bool degree_class_feasible(const VertexSet& s, const VertexSet& m1, const VertexSet& m2) const {
    if (!m1.is_subset_of(s) || !m2.is_subset_of(s) || m1.intersects(m2))
      throw error(errc::precondition, "degree classes must be disjoint subsets of S");
    return test_masks(std::uint32_t(s.to_mask()), std::uint32_t(m1.to_mask()),
                      std::uint32_t(m2.to_mask()));
  }

  // Replays the recurrence backwards from an accepting state and returns the
  // tree edges. The state must be true in the table.
  std::vector<std::pair<int, int>> reconstruct(std::uint32_t s, std::uint32_t s1,
                                               std::uint32_t s2) const {
    std::vector<std::pair<int, int>> out;
    while (std::popcount(s) > 2) {
      int j = std::countr_zero(s1);
      std::uint64_t idx = index_of(s, s1, s2);
      bool advanced = false;
      for (std::uint32_t cand = adj_mask_[j] & s; cand && !advanced; cand &= cand - 1) {
        int k = std::countr_zero(cand);
        std::uint32_t kb = std::uint32_t{1} << k;
        if (s1 & kb) continue;
        if (s2 & kb) {
          if (get(idx - pow4_[j] - pow4_[k])) {
            out.emplace_back(j, k);
            s &= ~(std::uint32_t{1} << j);
            s1 = (s1 & ~(std::uint32_t{1} << j)) | kb;
            s2 &= ~kb;
            advanced = true;
          }
        } else {
          if (get(idx - pow4_[j] - pow4_[k])) {
            out.emplace_back(j, k);
            s &= ~(std::uint32_t{1} << j);
            s1 &= ~(std::uint32_t{1} << j);
            s2 |= kb;
            advanced = true;
          } else if (get(idx - pow4_[j])) {
            out.emplace_back(j, k);
            s &= ~(std::uint32_t{1} << j);
            s1 &= ~(std::uint32_t{1} << j);
            advanced = true;
          }
        }
      }
      if (!advanced) throw error(errc::precondition, "reconstruction from a false state");
    }
    // base state: a single edge with both endpoints in S1
    int u = std::countr_zero(s);
    int v = 31 - std::countl_zero(s);
    if (u == v || s1 != s || s2 != 0 || !(adj_mask_[u] & (std::uint32_t{1} << v)))
      throw error(errc::precondition, "reconstruction reached an invalid base state");
    out.emplace_back(u, v);
    return out;
  }

 private:
  std::uint64_t spread(std::uint32_t mask) const {
    if (n_ <= 16) return spread16_[mask];
    return spread16_[mask & 0xFFFF] + (std::uint64_t(spread16_[mask >> 16]) << 32);
  }

  std::uint64_t index_of(std::uint32_t s, std::uint32_t s1, std::uint32_t s2) const {
    return 3 * spread(s) - 2 * spread(s1) - spread(s2);
  }

  bool get(std::uint64_t idx) const { return (bits_[idx >> 6] >> (idx & 63)) & 1u; }
  void set(std::uint64_t idx) { bits_[idx >> 6] |= std::uint64_t{1} << (idx & 63); }

  void build(const Graph& g, const ExactDpOptions& opts) {
    for (auto [u, v] : g.edges()) set(pow4_[u] + pow4_[v]);
    if (opts.layer_progress) opts.layer_progress(2);
    std::uint32_t all = (n_ >= 32) ? ~std::uint32_t{0} : ((std::uint32_t{1} << n_) - 1);
    for (int size = 3; size <= n_; ++size) {
      // Gosper's hack: subsets of [0,n) with popcount `size`, ascending.
      std::uint32_t s = (std::uint32_t{1} << size) - 1;
      while (s <= all) {
        std::uint64_t base3 = 3 * spread(s);
        // S1 runs over nonempty submasks of S; the tree's leaf set is never
        // empty for |S| >= 2, and any leaf works as the removal point, so the
        // recurrence fixes j = min(S1).
        for (std::uint32_t s1 = s; s1; s1 = (s1 - 1) & s) {
          int j = std::countr_zero(s1);
          // For |S| >= 3 a leaf's tree-neighbor is internal or degree-2,
          // never another leaf, so only k outside S1 can receive j.
          std::uint32_t nbrs = adj_mask_[j] & s & ~s1;
          if (!nbrs) continue;
          std::uint64_t part = base3 - 2 * spread(s1);
          std::uint32_t rest = s & ~s1;
          std::uint32_t s2 = rest;
          while (true) {
            std::uint64_t idx = part - spread(s2);
            for (std::uint32_t cand = nbrs; cand; cand &= cand - 1) {
              int k = std::countr_zero(cand);
              std::uint32_t kb = std::uint32_t{1} << k;
              std::uint64_t pred = idx - pow4_[j] - pow4_[k];
              if (s2 & kb) {
                if (get(pred)) {
                  set(idx);
                  break;
                }
              } else {
                if (get(pred) || get(idx - pow4_[j])) {
                  set(idx);
                  break;
                }
              }
            }
            if (!s2) break;
            s2 = (s2 - 1) & rest;
          }
        }
        // next subset of equal popcount
        std::uint32_t c = s & -s, r = s + c;
        if (r > all || r < s) break;
        s = r | (((s ^ r) >> 2) / c);
      }
      if (opts.layer_progress) opts.layer_progress(size);
    }
  }

  int n_;
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint64_t> pow4_;
  std::vector<std::uint64_t> spread16_;
  std::vector<std::uint32_t> adj_mask_;
};

inline DpTable build_dp(const Graph& g, const ExactDpOptions& opts = {}) {
  return DpTable(g, opts);
}

// Algorithm: YES iff some leaf set S1 has C[V][S1][empty] set; the witness is
// replayed from that state.
inline Verdict decide_exact(const Graph& g, const ExactDpOptions& opts = {}) {
  if (!is_connected(g)) throw error(errc::disconnected, "decide_exact requires a connected graph");
  if (g.n == 1) return Verdict::yes("exact", TreeWitness::from_edges(1, {}));
  DpTable table(g, opts);
  std::uint32_t full = (std::uint32_t{1} << g.n) - 1;
  for (std::uint32_t s1 = 1; s1 <= full; ++s1) {
    if (table.test_masks(full, s1, 0)) {
      auto edges = table.reconstruct(full, s1, 0);
      return Verdict::yes("exact", TreeWitness::from_edges(g.n, std::move(edges)));
    }
  }
  return Verdict::no("exact", Certificate{"exact-dp-exhaustion", {{"n", g.n}, {"m", g.m}}});
}

}  // namespace hist
