#include <catch2/catch_amalgamated.hpp>

#include <functional>

#include "hist/exact_dp.hpp"
#include "hist/modular.hpp"
#include "hist/oracle.hpp"
#include "support.hpp"

using namespace hist;

TEST_CASE("top-level modular partition of the named graphs", "[modular]") {
  auto c4 = top_level_modular_partition(support::cycle(4));
  std::vector<std::vector<int>> mods;
  for (auto& m : c4.modules) mods.push_back(m.to_vector());
  std::sort(mods.begin(), mods.end());
  CHECK(mods == std::vector<std::vector<int>>{{0}, {1, 3}, {2}});
  CHECK(c4.modules[0].to_vector() == std::vector<int>{0});

  auto k4 = top_level_modular_partition(support::complete(4));
  CHECK(k4.modules.size() == 4);
  for (auto& m : k4.modules) CHECK(m.size() == 1);
  CHECK(is_complete(k4.quotient));

  auto p4 = top_level_modular_partition(support::path(4));
  CHECK(p4.modules.size() == 4);  // paths on four vertices are prime

  auto net = top_level_modular_partition(support::net_graph());
  CHECK(net.modules.size() == 6);
  CHECK(net.quotient.m == support::net_graph().m);
}

TEST_CASE("partition parts are always modules", "[modular]") {
  std::mt19937_64 rng(127);
  for (int it = 0; it < 300; ++it) {
    int n = 2 + int(rng() % 9);
    Graph g = support::random_connected(n, 0.2 + 0.1 * (it % 7), rng());
    auto mp = top_level_modular_partition(g);
    int covered = 0;
    for (auto& m : mp.modules) {
      CHECK(is_module(g, m));
      covered += m.size();
    }
    CHECK(covered == g.n);
    CHECK(mp.modules[0].size() == 1);
    for (int v = 0; v < n; ++v) {
      auto mpv = partition_with_designated(g, v);
      CHECK(mpv.modules[0].to_vector() == std::vector<int>{v});
      for (auto& m : mpv.modules) CHECK(is_module(g, m));
    }
  }
}

TEST_CASE("assignment feasibility worked instances", "[modular]") {
  // one module of size three demanded by both degree-1 representatives
  Graph q2(2);
  q2.add_edge(0, 1);
  AssignmentInstance inst;
  inst.quotient = &q2;
  inst.size = {1, 3};
  inst.independent = {1, 0};
  inst.in_mprime = {1, 1};
  inst.in_m1 = {1, 1};
  inst.in_m2 = {0, 0};
  CHECK_FALSE(assignment_feasible(inst).has_value());

  // all demands zero, all supplies zero
  inst.size = {1, 1};
  inst.in_m1 = {0, 0};
  auto sol = assignment_feasible(inst);
  REQUIRE(sol.has_value());
  CHECK(sol->x.empty());

  // one degree-2 module fed by an adjacent non-representative singleton
  inst.size = {1, 1};
  inst.in_mprime = {0, 1};
  inst.in_m1 = {0, 0};
  inst.in_m2 = {0, 1};
  sol = assignment_feasible(inst);
  REQUIRE(sol.has_value());
  REQUIRE(sol->x.count({0, 1}));
  CHECK(sol->x.at({0, 1}) == 1);
}

namespace {
// Brute-force check of the assignment constraints by enumerating all integer
// vectors with entries bounded by the total supply.
bool assignment_brute(const AssignmentInstance& inst) {
  const Graph& q = *inst.quotient;
  int k1 = q.n;
  std::vector<std::pair<int, int>> arcs;
  for (int i = 0; i < k1; ++i) {
    for (int j : q.adj[i])
      if (inst.in_mprime[j]) arcs.emplace_back(i, j);
    if (inst.in_mprime[i] && !inst.independent[i] && inst.size[i] >= 2) arcs.emplace_back(i, i);
  }
  int bound = 0;
  for (int i = 0; i < k1; ++i) bound = std::max(bound, inst.size[i]);
  std::vector<int> x(arcs.size(), 0);
  std::function<bool(std::size_t)> rec = [&](std::size_t at) -> bool {
    if (at == arcs.size()) {
      std::vector<long long> sent(k1, 0), recv(k1, 0);
      for (std::size_t a = 0; a < arcs.size(); ++a) {
        if (arcs[a].first == arcs[a].second && x[a] > 1) return false;
        sent[arcs[a].first] += x[a];
        recv[arcs[a].second] += x[a];
      }
      for (int i = 0; i < k1; ++i) {
        long long supply = inst.in_mprime[i] ? inst.size[i] - 1 : inst.size[i];
        if (sent[i] != supply) return false;
        long long demand = inst.in_m1[i] ? 2 : (inst.in_m2[i] ? 1 : 0);
        if (inst.in_mprime[i] && recv[i] < demand) return false;
      }
      return true;
    }
    for (int v = 0; v <= bound; ++v) {
      x[at] = v;
      if (rec(at + 1)) return true;
    }
    x[at] = 0;
    return false;
  };
  return rec(0);
}
}  // namespace

TEST_CASE("assignment flow agrees with integer enumeration", "[modular]") {
  std::mt19937_64 rng(131);
  for (int it = 0; it < 300; ++it) {
    int k1 = 2 + int(rng() % 4);  // up to 5 modules
    Graph q(k1);
    for (int i = 0; i < k1; ++i)
      for (int j = i + 1; j < k1; ++j)
        if (rng() % 2) q.add_edge(i, j);
    AssignmentInstance inst;
    inst.quotient = &q;
    inst.size.resize(k1);
    inst.independent.resize(k1);
    inst.in_mprime.resize(k1);
    inst.in_m1.assign(k1, 0);
    inst.in_m2.assign(k1, 0);
    for (int i = 0; i < k1; ++i) {
      inst.size[i] = 1 + int(rng() % 4);
      inst.independent[i] = rng() % 2;
      inst.in_mprime[i] = rng() % 2;
      if (inst.in_mprime[i]) {
        int cls = int(rng() % 3);
        inst.in_m1[i] = (cls == 0);
        inst.in_m2[i] = (cls == 1);
      }
    }
    bool any_rep = false;
    for (int i = 0; i < k1; ++i) any_rep |= bool(inst.in_mprime[i]);
    if (!any_rep) inst.in_mprime[0] = 1;
    CHECK(assignment_feasible(inst).has_value() == assignment_brute(inst));
  }
}

TEST_CASE("decide_modular on the named examples", "[modular]") {
  auto k4 = support::complete(4);
  CHECK(decide_modular(k4, top_level_modular_partition(k4)).answer == Answer::yes);

  auto c4 = support::cycle(4);
  auto vc4 = decide_modular(c4, top_level_modular_partition(c4));
  CHECK(vc4.answer == Answer::no);
  CHECK(decide_exact(c4).answer == Answer::no);

  auto net = support::net_graph();
  CHECK(decide_modular(net, top_level_modular_partition(net)).answer == Answer::no);
  CHECK(decide_modular_complete(net).answer == Answer::no);
}

TEST_CASE("a non-singleton module exercises the self pendant", "[modular]") {
  // r-a, r-b, a-b, a-c, b-c, r-d, r-e, c-f, c-g: the only HIST shape routes
  // one member of the module {a,b} to its twin as an in-module pendant.
  Graph g = support::from_edges(
      8, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}, {0, 4}, {0, 5}, {3, 6}, {3, 7}});
  REQUIRE(decide_exact(g).answer == Answer::yes);
  auto mp = top_level_modular_partition(g);
  std::vector<std::vector<int>> mods;
  for (auto& m : mp.modules) mods.push_back(m.to_vector());
  std::sort(mods.begin(), mods.end());
  CHECK(mods == std::vector<std::vector<int>>{{0}, {1, 2}, {3}, {4, 5}, {6, 7}});
  ModularDiagnostics diag;
  auto v = decide_modular(g, mp, {}, &diag);
  REQUIRE(v.answer == Answer::yes);
  CHECK(verify_hist(g, *v.witness));
  CHECK(diag.used_self_pendant);
  CHECK(decide_modular_complete(g).answer == Answer::yes);
}

TEST_CASE("modular agreement with exact DP, exhaustive n <= 6", "[modular]") {
  for (int n = 1; n <= 6; ++n) {
    support::for_each_connected_graph(n, [&](const Graph& g) {
      auto expect = decide_exact(g).answer;
      auto v = decide_modular_complete(g);
      CHECK(v.answer == expect);
      if (v.answer == Answer::yes) CHECK(verify_hist(g, *v.witness));
    });
  }
}

TEST_CASE("modular agreement with exact DP, random 7..9", "[modular]") {
  std::mt19937_64 rng(137);
  int pinned_misses = 0;
  for (int it = 0; it < 250; ++it) {
    int n = 7 + int(rng() % 3);
    Graph g = support::random_connected(n, 0.25 + 0.1 * (it % 6), rng());
    auto expect = decide_exact(g).answer;
    auto v = decide_modular_complete(g);
    CHECK(v.answer == expect);
    if (v.answer == Answer::yes) CHECK(verify_hist(g, *v.witness));
    // a single fixed designation may miss HISTs whose internal vertices
    // all avoid it; count how often
    auto pinned = decide_modular(g, top_level_modular_partition(g));
    if (pinned.answer == Answer::yes) CHECK(expect == Answer::yes);
    if (pinned.answer != expect) ++pinned_misses;
  }
  WARN("instances where the default M0 designation alone was incomplete: "
       << pinned_misses << " of 250");
}

// ---------------------------------------------------------------------------
// Normalization rewrites: every oracle HIST can be rewritten into the
// module-normal form (at most one internal vertex per module, with the
// in-module degree conditions).
// ---------------------------------------------------------------------------

namespace {

struct Rooted {
  int n, root;
  std::vector<int> parent;
  std::vector<std::vector<int>> kids;
  explicit Rooted(const TreeWitness& w, int r) : n(w.n), root(r), parent(w.n, -1), kids(w.n) {
    std::vector<std::vector<int>> adj(w.n);
    for (auto [a, b] : w.edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    std::vector<int> stack{r};
    std::vector<char> seen(w.n, 0);
    seen[r] = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : adj[u])
        if (!seen[v]) {
          seen[v] = 1;
          parent[v] = u;
          kids[u].push_back(v);
          stack.push_back(v);
        }
    }
  }
  int deg(int v) const { return int(kids[v].size()) + (parent[v] >= 0 ? 1 : 0); }
  int depth(int v) const {
    int d = 0;
    for (int x = v; parent[x] >= 0; x = parent[x]) ++d;
    return d;
  }
  void move_child(int w, int to) {
    auto& k = kids[parent[w]];
    k.erase(std::find(k.begin(), k.end(), w));
    parent[w] = to;
    kids[to].push_back(w);
  }
  TreeWitness to_witness() const {
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v < n; ++v)
      if (parent[v] >= 0) edges.emplace_back(parent[v], v);
    return TreeWitness::from_edges(n, edges);
  }
};

bool module_normalized(const Rooted& t, const VertexSet& mod) {
  std::vector<int> internal;
  for (int v : mod.to_vector())
    if (t.deg(v) >= 3) internal.push_back(v);
  if (internal.empty()) {
    for (int v : mod.to_vector())
      if (t.deg(v) != 1) return false;
    return true;
  }
  if (internal.size() > 1) return false;
  int u = internal[0];
  int in_deg = 0;
  for (int v : t.kids[u])
    if (mod.contains(v)) ++in_deg;
  if (t.parent[u] >= 0 && mod.contains(t.parent[u])) ++in_deg;
  if (in_deg == 0) return t.deg(u) >= 3;
  return in_deg == 1 && t.deg(u) == 3;
}

// The proof's rewrite operations, applied until every non-designated module
// is in normal form.
bool normalize(const Graph& g, const ModularPartition& mp, Rooted& t) {
  for (int round = 0; round < 10 * g.n * g.n; ++round) {
    bool dirty = false;
    for (int i = 1; i < int(mp.modules.size()) && !dirty; ++i) {
      const auto& mod = mp.modules[i];
      if (module_normalized(t, mod)) continue;
      dirty = true;
      std::vector<int> internal;
      for (int v : mod.to_vector())
        if (t.deg(v) >= 3) internal.push_back(v);
      if (internal.size() >= 2) {
        // case (ii): collapse the farthest internal vertex into the shallowest
        int u = internal[0];
        for (int v : internal)
          if (t.depth(v) < t.depth(u)) u = v;
        int up = t.parent[u];
        int v = -1;
        for (int cand : internal)
          if (cand != u) v = cand;
        auto kids_copy = t.kids[v];
        for (int w : kids_copy) t.move_child(w, mod.contains(w) ? up : u);
      } else {
        // case (i): adjust the unique internal vertex's in-module children
        int u = internal[0];
        int up = t.parent[u];
        std::vector<int> in_kids;
        for (int w : t.kids[u])
          if (mod.contains(w)) in_kids.push_back(w);
        int e = t.deg(u) - int(in_kids.size());
        if (e >= 3) {
          for (int w : in_kids) t.move_child(w, up);
        } else if (e == 1) {
          for (int w : in_kids) t.move_child(w, up);
        } else {  // e == 2: keep exactly one in-module child
          for (std::size_t j = 1; j < in_kids.size(); ++j) t.move_child(in_kids[j], up);
        }
      }
    }
    if (!dirty) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("normalization rewrites terminate and reach the normal form", "[modular]") {
  std::mt19937_64 rng(139);
  int done = 0;
  for (int it = 0; done < 200 && it < 2000; ++it) {
    int n = 4 + int(rng() % 5);  // up to 8
    Graph g = support::random_connected(n, 0.3 + 0.1 * (it % 6), rng());
    auto found = support::naive_find_hist(g);
    if (!found) continue;
    int root = -1;
    for (int v = 0; v < n; ++v)
      if (found->degrees[v] >= 3) root = v;
    if (root < 0) continue;  // single-edge HISTs have no internal vertex
    ++done;
    auto mp = partition_with_designated(g, root);
    Rooted t(*found, root);
    REQUIRE(normalize(g, mp, t));
    auto w = t.to_witness();
    CHECK(verify_hist(g, w));
    Rooted tt(w, root);
    for (int i = 1; i < int(mp.modules.size()); ++i) CHECK(module_normalized(tt, mp.modules[i]));
  }
  CHECK(done == 200);
}
