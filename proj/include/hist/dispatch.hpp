#pragma once

#include <optional>
#include <string>
#include <utility>

#include "hist/classes.hpp"
#include "hist/cvd.hpp"
#include "hist/errors.hpp"
#include "hist/exact_dp.hpp"
#include "hist/generators.hpp"
#include "hist/graph.hpp"
#include "hist/modular.hpp"
#include "hist/oracle.hpp"
#include "hist/poly_deciders.hpp"
#include "hist/verdict.hpp"

namespace hist {

struct DecideOptions {
  ExactDpOptions dp;
  OracleOptions oracle;
  int cvd_budget = 12;
  bool enable_moddp = true;
  bool enable_cvd = true;
};

inline Verdict dispatch_auto(const Graph& g, const DecideOptions& opts = {});

namespace dispatch_detail {

// Kernelization stage shared by the standalone method and the dispatcher.
// When require_shrink is set, an unshrunk kernel bails out instead of
// re-entering the decider on the same graph.
inline std::optional<Verdict> kernel_stage(const Graph& g, int budget, const DecideOptions& opts,
                                           bool require_shrink) {
  std::optional<VertexSet> s;
  for (int b = 0; b <= budget && !s; ++b) s = cluster_vertex_deletion(g, b);
  if (!s) {
    if (require_shrink) return std::nullopt;
    throw error(errc::budget_exceeded,
                "no cluster deletion set within budget " + std::to_string(budget));
  }
  auto d = decompose_by_deletion_set(g, *s);
  auto [kernel, old_to_new] = kernelize(g, d);
  if (kernel.n == g.n && require_shrink) return std::nullopt;
  DecideOptions sub = opts;
  if (kernel.n == g.n) sub.enable_cvd = false;  // avoid re-entering this stage
  Verdict inner = dispatch_auto(kernel, sub);
  if (inner.answer == Answer::yes) {
    auto lifted = lift_kernel_witness(g, d, old_to_new, *inner.witness);
    if (!lifted && g.n <= opts.dp.max_n) {
      auto v = decide_exact(g, opts.dp);
      v.method = "cvd";
      return v;
    }
    if (!lifted) {
      if (require_shrink) return std::nullopt;
      throw error(errc::kernel_undecided, "kernel witness could not be lifted");
    }
    return Verdict::yes("cvd", std::move(*lifted));
  }
  if (inner.answer == Answer::no) {
    return Verdict::no("cvd", Certificate{"cvd-kernel",
                                          {{"deletion_set", s->to_vector()},
                                           {"kernel_n", kernel.n},
                                           {"inner", inner.certificate
                                                         ? nlohmann::json{{"kind", inner.certificate->kind},
                                                                          {"params", inner.certificate->params}}
                                                         : nlohmann::json()}}});
  }
  if (require_shrink) return std::nullopt;
  throw error(errc::kernel_undecided, "kernel dispatch returned UNDECIDED");
}

}  // namespace dispatch_detail

// Compute a deletion set within budget, kernelize, decide the kernel with the
// dispatcher, and lift the result back.
inline Verdict decide_via_kernel(const Graph& g, int budget, const DecideOptions& opts = {}) {
  if (!is_connected(g)) throw error(errc::disconnected, "decide_via_kernel needs connectivity");
  auto v = dispatch_detail::kernel_stage(g, budget, opts, false);
  return *v;
}

// Dispatch order: trivial rules, diameter <= 2, block-split, split, chordal
// diameter 3, modular width, cluster-deletion kernel, exact DP, UNDECIDED.
inline Verdict dispatch_auto(const Graph& g, const DecideOptions& opts) {
  if (auto v = decide_trivial(g)) return *v;

  auto diam = diameter(g);  // connected beyond this point
  if (*diam <= 2) return decide_diameter2(g, opts.dp);

  if (auto p = split_partition(g)) {
    if (is_block_split(g, *p)) return decide_block_split(g, *p);
    return decide_split(g, *p);
  }

  bool chordal = is_chordal(g);
  if (chordal && *diam == 3) return decide_chordal_d3(g);

  if (opts.enable_moddp) {
    try {
      auto base = top_level_modular_partition(g);
      if (int(base.modules.size()) < g.n) {
        ModularOptions mo;
        mo.dp = opts.dp;
        return decide_modular_complete(g, mo);
      }
    } catch (const error& e) {
      // a too-large quotient just means this stage does not apply
      if (e.code != errc::quotient_too_large && e.code != errc::too_large) throw;
    }
  }

  if (opts.enable_cvd) {
    if (auto v = dispatch_detail::kernel_stage(g, opts.cvd_budget, opts, true)) return *v;
  }

  if (g.n <= opts.dp.max_n) return decide_exact(g, opts.dp);

  return Verdict::undecided(
      "auto", *diam == 3 ? "general diameter-3 graphs are an open class and the graph exceeds "
                           "the exponential-method gates"
                         : "no polynomial method applies and the graph exceeds the "
                           "exponential-method gates");
}

// CLI-facing method selection. Disconnected input is an immediate NO for
// every method: no spanning tree exists.
inline Verdict decide_with_method(const Graph& g, const std::string& method,
                                  const DecideOptions& opts = {}) {
  if (!is_connected(g) && g.n > 0) return *decide_trivial(g);
  if (method == "auto") return dispatch_auto(g, opts);
  if (method == "exact") return decide_exact(g, opts.dp);
  if (method == "oracle") return oracle_hist(g, opts.oracle);
  if (method == "diam2") return decide_diameter2(g, opts.dp);
  if (method == "blocksplit") {
    auto p = split_partition(g);
    if (!p) throw error(errc::not_split, "input is not a split graph");
    return decide_block_split(g, *p);
  }
  if (method == "split") {
    auto p = split_partition(g);
    if (!p) throw error(errc::not_split, "input is not a split graph");
    return decide_split(g, *p);
  }
  if (method == "chordal3") return decide_chordal_d3(g);
  if (method == "moddp") {
    ModularOptions mo;
    mo.dp = opts.dp;
    return decide_modular_complete(g, mo);
  }
  if (method == "cvd") return decide_via_kernel(g, opts.cvd_budget, opts);
  throw error(errc::precondition, "unknown method '" + method + "'");
}

}  // namespace hist
