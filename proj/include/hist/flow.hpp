#pragma once

#include <limits>
#include <optional>
#include <queue>
#include <vector>

#include "hist/errors.hpp"

namespace hist {

// Dinic max-flow with per-edge lower bounds, used as a feasibility solver.
// Integral capacities give integral flows.
class FlowNetwork {
 public:
  explicit FlowNetwork(int nodes) : head_(nodes, -1) {}

  static constexpr long long kInf = std::numeric_limits<long long>::max() / 4;

  int add_node() {
    head_.push_back(-1);
    return int(head_.size()) - 1;
  }
  int node_count() const { return int(head_.size()); }

  // Returns an id used to read back the flow on the edge.
  int add_edge(int from, int to, long long lower, long long upper) {
    if (lower < 0 || upper < lower) throw error(errc::precondition, "bad edge bounds");
    lowers_.push_back(lower);
    froms_.push_back(from);
    tos_.push_back(to);
    raw_add(from, to, upper - lower);
    return int(lowers_.size()) - 1;
  }

  // Feasible flow respecting all lower bounds, with `source`->`sink`
  // circulation closure. Returns per-add_edge flows or nullopt.
  std::optional<std::vector<long long>> feasible(int source, int sink) {
    raw_add(sink, source, kInf);
    std::vector<long long> excess(node_count(), 0);
    for (std::size_t i = 0; i < lowers_.size(); ++i) {
      excess[tos_[i]] += lowers_[i];
      excess[froms_[i]] -= lowers_[i];
    }
    int ss = add_node(), tt = add_node();
    long long need = 0;
    for (int v = 0; v + 2 < node_count(); ++v) {
      if (excess[v] > 0) {
        raw_add(ss, v, excess[v]);
        need += excess[v];
      } else if (excess[v] < 0) {
        raw_add(v, tt, -excess[v]);
      }
    }
    if (max_flow(ss, tt) != need) return std::nullopt;
    std::vector<long long> out(lowers_.size());
    for (std::size_t i = 0; i < lowers_.size(); ++i)
      out[i] = lowers_[i] + flow_on(int(2 * i));
    return out;
  }

 private:
  void raw_add(int from, int to, long long cap) {
    to_.push_back(to);
    cap_.push_back(cap);
    next_.push_back(head_[from]);
    head_[from] = int(to_.size()) - 1;
    to_.push_back(from);
    cap_.push_back(0);
    next_.push_back(head_[to]);
    head_[to] = int(to_.size()) - 1;
  }

  long long flow_on(int raw_edge) const { return cap_[raw_edge ^ 1]; }

  bool bfs(int s, int t) {
    level_.assign(node_count(), -1);
    std::queue<int> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int e = head_[u]; e != -1; e = next_[e])
        if (cap_[e] > 0 && level_[to_[e]] < 0) {
          level_[to_[e]] = level_[u] + 1;
          q.push(to_[e]);
        }
    }
    return level_[t] >= 0;
  }

  long long dfs(int u, int t, long long pushed) {
    if (u == t) return pushed;
    for (int& e = iter_[u]; e != -1; e = next_[e]) {
      int v = to_[e];
      if (cap_[e] > 0 && level_[v] == level_[u] + 1) {
        long long got = dfs(v, t, std::min(pushed, cap_[e]));
        if (got > 0) {
          cap_[e] -= got;
          cap_[e ^ 1] += got;
          return got;
        }
      }
    }
    return 0;
  }

  long long max_flow(int s, int t) {
    long long total = 0;
    while (bfs(s, t)) {
      iter_ = head_;
      while (long long got = dfs(s, t, kInf)) total += got;
    }
    return total;
  }

  std::vector<int> head_, next_, to_, iter_, level_, froms_, tos_;
  std::vector<long long> cap_, lowers_;
};

}  // namespace hist
