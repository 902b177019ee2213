#include <catch2/catch_amalgamated.hpp>

#include "hist/graph.hpp"
#include "hist/witness.hpp"
#include "support.hpp"

using namespace hist;

TEST_CASE("parse_edge_list basic graphs", "[graph]") {
  Graph p3 = parse_edge_list("3 2\n0 1\n1 2\n");
  CHECK(p3.n == 3);
  CHECK(p3.m == 2);
  CHECK(p3.has_edge(0, 1));
  CHECK(p3.has_edge(1, 2));
  CHECK_FALSE(p3.has_edge(0, 2));

  Graph k4 = parse_edge_list("4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
  CHECK(k4.m == 6);
  CHECK(is_complete(k4));
}

TEST_CASE("parse_edge_list errors carry line numbers", "[graph]") {
  try {
    parse_edge_list("3 2\n0 1\n0 3\n");
    FAIL("expected VertexOutOfRange");
  } catch (const error& e) {
    CHECK(e.code == errc::vertex_out_of_range);
    CHECK(e.line == 3);
  }
  try {
    parse_edge_list("3 2\n0 1\n1 1\n");
    FAIL("expected SelfLoop");
  } catch (const error& e) {
    CHECK(e.code == errc::self_loop);
    CHECK(e.line == 3);
  }
  try {
    parse_edge_list("3 2\n0 1\n1 0\n");
    FAIL("expected DuplicateEdge");
  } catch (const error& e) {
    CHECK(e.code == errc::duplicate_edge);
    CHECK(e.line == 3);
  }
  CHECK_THROWS_AS(parse_edge_list("nonsense\n"), error);
  CHECK_THROWS_AS(parse_edge_list("3 5\n0 1\n"), error);
}

TEST_CASE("comments and blank lines are ignored", "[graph]") {
  Graph g = parse_edge_list("# a path\n\n3 2\n\n# edge one\n0 1\n1 2\n\n# trailing comment\n");
  CHECK(g.n == 3);
  CHECK(g.m == 2);
}

TEST_CASE("serialize round-trips with ids preserved", "[graph]") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 50; ++it) {
    Graph g = gen_random(RandomClass::any, 1 + int(rng() % 12), 0.4, rng());
    Graph h = parse_edge_list(serialize(g));
    CHECK(h.n == g.n);
    REQUIRE(h.adj == g.adj);
  }
}

TEST_CASE("diameter examples", "[graph]") {
  CHECK(diameter(support::complete(4)) == 1);
  CHECK(diameter(support::path(3)) == 2);
  Graph two_edges = support::from_edges(4, {{0, 1}, {2, 3}});
  CHECK_FALSE(diameter(two_edges).has_value());
  CHECK_FALSE(is_connected(two_edges));
  CHECK(is_connected(support::complete(4)));
  CHECK(is_connected(support::path(3)));
}

TEST_CASE("diameter one iff complete on n >= 2", "[graph]") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 200; ++it) {
    int n = 2 + int(rng() % 7);
    Graph g = gen_random(RandomClass::any, n, 0.3 + 0.1 * (it % 7), rng());
    auto d = diameter(g);
    CHECK((d && *d == 1) == (is_complete(g) && g.n >= 2));
  }
}

TEST_CASE("verify_hist examples", "[graph]") {
  Graph k4 = support::complete(4);
  auto star = TreeWitness::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
  CHECK(verify_hist(k4, star));
  auto pathw = TreeWitness::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
  CHECK_FALSE(verify_hist(k4, pathw));
  Graph c4 = support::cycle(4);
  auto all = TreeWitness::from_edges(4, c4.edges());
  CHECK_FALSE(verify_hist(c4, all));  // |edges| != n-1
  auto stray = TreeWitness::from_edges(4, {{0, 1}, {0, 2}, {1, 3}});
  CHECK_THROWS_AS(verify_hist(c4, stray), error);  // 0-2 not an edge of C4
}

TEST_CASE("verify_hist monotone under supergraphs", "[graph]") {
  std::mt19937_64 rng(23);
  for (int it = 0; it < 100; ++it) {
    int n = 4 + int(rng() % 5);
    Graph sub = support::random_connected(n, 0.4, rng());
    Graph super = sub;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (!super.has_edge(u, v) && rng() % 3 == 0) super.add_edge(u, v);
    auto v = support::naive_find_hist(sub);
    if (v) {
      CHECK(verify_hist(sub, *v));
      CHECK(verify_hist(super, *v));
    }
  }
}

TEST_CASE("trivial orders", "[graph]") {
  CHECK(verify_hist(Graph{1}, TreeWitness::from_edges(1, {})));
  Graph k2 = support::complete(2);
  CHECK(verify_hist(k2, TreeWitness::from_edges(2, {{0, 1}})));
}
