#pragma once

#include <istream>
#include <optional>
#include <sstream>
#include <string>

#include "json.hpp"

#include "hist/classes.hpp"
#include "hist/errors.hpp"
#include "hist/graph.hpp"
#include "hist/modular.hpp"
#include "hist/verdict.hpp"
#include "hist/witness.hpp"

namespace hist {

// Schema: {answer, method, witness?: [[u,v]...], certificate?: {kind, params}}
// plus "reason" for UNDECIDED verdicts.
inline nlohmann::json verdict_to_json(const Verdict& v) {
  nlohmann::json j;
  j["answer"] = answer_name(v.answer);
  j["method"] = v.method;
  if (v.witness) {
    nlohmann::json edges = nlohmann::json::array();
    for (auto [a, b] : v.witness->edges) edges.push_back({a, b});
    j["witness"] = edges;
  }
  if (v.certificate) j["certificate"] = {{"kind", v.certificate->kind},
                                         {"params", v.certificate->params}};
  if (v.answer == Answer::undecided && !v.reason.empty()) j["reason"] = v.reason;
  return j;
}

// Witness text format: header "tree <edge-count>", then one "u v" per line.
inline std::string witness_to_text(const TreeWitness& w) {
  std::ostringstream out;
  out << "tree " << w.edges.size() << '\n';
  for (auto [u, v] : w.edges) out << u << ' ' << v << '\n';
  return out.str();
}

inline TreeWitness parse_witness(std::istream& in, int n) {
  std::string tag;
  long long count = -1;
  if (!(in >> tag >> count) || tag != "tree" || count < 0)
    throw error(errc::malformed_witness, "expected header 'tree <edge-count>'");
  std::vector<std::pair<int, int>> edges;
  for (long long i = 0; i < count; ++i) {
    int u, v;
    if (!(in >> u >> v)) throw error(errc::malformed_witness, "missing witness edge");
    edges.emplace_back(u, v);
  }
  return TreeWitness::from_edges(n, std::move(edges));
}

// Class report for the `recognize` subcommand.
inline nlohmann::json class_report(const Graph& g) {
  nlohmann::json j;
  auto d = diameter(g);
  if (d)
    j["diameter"] = *d;
  else
    j["diameter"] = "infinite";
  bool chordal = is_chordal(g);
  j["chordal"] = chordal;
  auto p = split_partition(g);
  j["split"] = p.has_value();
  bool block = p && is_block_split(g, *p);
  j["block_split"] = block;
  if (block) j["good_count"] = count_good(g, *p);
  if (chordal && d && is_connected(g)) {
    if (auto c = find_dominating_clique(g)) j["dominating_clique"] = c->to_vector();
  }
  return j;
}

inline nlohmann::json modules_report(const Graph& g) {
  auto mp = top_level_modular_partition(g);
  nlohmann::json j;
  nlohmann::json mods = nlohmann::json::array();
  for (auto& m : mp.modules) mods.push_back(m.to_vector());
  j["modules"] = mods;
  j["designated"] = mp.modules[0].to_vector();
  nlohmann::json indep = nlohmann::json::array();
  for (char b : mp.is_independent) indep.push_back(bool(b));
  j["independent"] = indep;
  nlohmann::json qedges = nlohmann::json::array();
  for (auto [a, b] : mp.quotient.edges()) qedges.push_back({a, b});
  j["quotient"] = {{"n", mp.quotient.n}, {"edges", qedges}};
  return j;
}

}  // namespace hist
