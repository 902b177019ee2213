// Command-line front end: decide / construct / verify / recognize / generate
// / oracle / kernelize / bench over edge-list graphs.
//
// Exit codes for decision commands: 0 = YES, 1 = NO, 2 = UNDECIDED,
// 3 and up = error.

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hist/dispatch.hpp"
#include "hist/json_io.hpp"

namespace {

hist::Graph read_graph(const std::string& path) {
  if (path.empty() || path == "-") return hist::parse_edge_list(std::cin);
  std::ifstream in(path);
  if (!in) throw hist::error(hist::errc::malformed_header, "cannot open '" + path + "'");
  return hist::parse_edge_list(in);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  out << text;
}

int verdict_exit_code(const hist::Verdict& v) {
  switch (v.answer) {
    case hist::Answer::yes: return 0;
    case hist::Answer::no: return 1;
    case hist::Answer::undecided: return 2;
  }
  return 3;
}

void print_verdict(const hist::Verdict& v, bool as_json) {
  if (as_json) {
    std::cout << hist::verdict_to_json(v).dump(2) << "\n";
    return;
  }
  std::cout << hist::answer_name(v.answer) << " (method: " << v.method << ")\n";
  if (v.certificate) std::cout << "certificate: " << v.certificate->kind << "\n";
  if (!v.reason.empty()) std::cout << "reason: " << v.reason << "\n";
}

struct BenchRow {
  std::string file;
  int n = 0;
  long long m = 0;
  std::string method;
  std::string answer;
  double ms = 0;
  std::string error;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"homeomorphically irreducible spanning tree toolkit"};
  app.require_subcommand(1);

  hist::DecideOptions opts;
  std::string input = "-";
  std::string method = "auto";
  std::string witness_out;
  bool as_json = false;
  int max_n = 16;
  int budget = 12;
  unsigned long long seed = 0;
  bool progress = false;

  auto add_common = [&](CLI::App* cmd, bool with_method) {
    cmd->add_option("input", input, "edge-list file, '-' for stdin");
    cmd->add_flag("--json", as_json, "JSON output");
    cmd->add_option("--max-n", max_n, "exact-DP size gate");
    cmd->add_option("--budget", budget, "cluster-deletion budget");
    cmd->add_option("--seed", seed, "random seed");
    cmd->add_flag("--progress", progress, "report DP layers on stderr");
    if (with_method)
      cmd->add_option("--method", method,
                      "auto, diam2, blocksplit, split, chordal3, moddp, cvd, exact, oracle");
  };

  auto* cmd_decide = app.add_subcommand("decide", "decide HIST existence");
  add_common(cmd_decide, true);
  cmd_decide->add_option("--witness-out", witness_out, "write the witness tree here");

  auto* cmd_construct = app.add_subcommand("construct", "decide and print the witness tree");
  add_common(cmd_construct, true);
  cmd_construct->add_option("--witness-out", witness_out, "write the witness tree here");

  auto* cmd_verify = app.add_subcommand("verify", "check a witness tree against a graph");
  std::string tree_path;
  cmd_verify->add_option("input", input, "edge-list file");
  cmd_verify->add_option("--tree", tree_path, "witness file (default stdin)");
  cmd_verify->add_flag("--json", as_json, "JSON output");

  auto* cmd_recognize = app.add_subcommand("recognize", "emit a graph-class report");
  bool with_modules = false;
  cmd_recognize->add_option("input", input, "edge-list file");
  cmd_recognize->add_flag("--modules", with_modules, "include the modular partition");

  auto* cmd_generate = app.add_subcommand("generate", "construct the named graph families and random graphs");
  std::string family, params_csv, cls = "any", gen_out;
  int gen_n = 0, sv = -1, tv = -1;
  double density = 0.5;
  cmd_generate->add_option("--family", family, "A, B, hardness, random")->required();
  cmd_generate->add_option("--params", params_csv, "comma-separated block sizes for A");
  cmd_generate->add_option("--n", gen_n, "order for B / random");
  cmd_generate->add_option("--input", input, "base instance for hardness");
  cmd_generate->add_option("--s", sv, "pendant start vertex for hardness");
  cmd_generate->add_option("--t", tv, "pendant end vertex for hardness");
  cmd_generate->add_option("--class", cls, "random class: any, split, block_split, chordal");
  cmd_generate->add_option("--density", density, "random density in [0,1]");
  cmd_generate->add_option("--seed", seed, "random seed");
  cmd_generate->add_option("--out", gen_out, "output file (default stdout)");
  cmd_generate->add_flag("--json", as_json, "emit hardness metadata as JSON on stderr");

  auto* cmd_oracle = app.add_subcommand("oracle", "brute-force ground truth");
  bool o_hist = false, o_count = false;
  int o_hisf = -1;
  std::vector<int> o_hampath;
  int oracle_max_n = 10;
  cmd_oracle->add_option("input", input, "edge-list file");
  cmd_oracle->add_flag("--hist", o_hist, "HIST existence by enumeration");
  cmd_oracle->add_option("--hisf", o_hisf, "HISF existence with K components");
  cmd_oracle->add_option("--hampath", o_hampath, "s t endpoints")->expected(2);
  cmd_oracle->add_flag("--count", o_count, "count spanning trees");
  cmd_oracle->add_option("--max-n", oracle_max_n, "oracle size gate");
  cmd_oracle->add_flag("--json", as_json, "JSON output");

  auto* cmd_kernelize = app.add_subcommand("kernelize", "cluster-deletion size reduction");
  std::string map_out;
  cmd_kernelize->add_option("input", input, "edge-list file");
  cmd_kernelize->add_option("--budget", budget, "cluster-deletion budget");
  cmd_kernelize->add_option("--out", gen_out, "reduced edge list (default stdout)");
  cmd_kernelize->add_option("--map-out", map_out, "id-map JSON sidecar");

  auto* cmd_bench = app.add_subcommand("bench", "run methods over a corpus directory");
  std::string corpus, methods_csv = "auto";
  int jobs = 1;
  cmd_bench->add_option("--corpus", corpus, "directory of edge-list files")->required();
  cmd_bench->add_option("--methods", methods_csv, "comma-separated method list");
  cmd_bench->add_option("--jobs", jobs, "parallel workers");
  cmd_bench->add_option("--max-n", max_n, "exact-DP size gate");
  cmd_bench->add_option("--budget", budget, "cluster-deletion budget");
  cmd_bench->add_flag("--json", as_json, "JSON instead of CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }

  try {
    opts.dp.max_n = max_n;
    opts.cvd_budget = budget;
    if (progress)
      opts.dp.layer_progress = [](int layer) { std::cerr << "dp layer " << layer << " done\n"; };

    if (cmd_decide->parsed() || cmd_construct->parsed()) {
      hist::Graph g = read_graph(input);
      hist::Verdict v = hist::decide_with_method(g, method, opts);
      print_verdict(v, as_json);
      if (v.witness) {
        if (!witness_out.empty()) write_text(witness_out, hist::witness_to_text(*v.witness));
        if (cmd_construct->parsed() && witness_out.empty())
          std::cout << hist::witness_to_text(*v.witness);
      }
      return verdict_exit_code(v);
    }

    if (cmd_verify->parsed()) {
      hist::Graph g = read_graph(input);
      hist::TreeWitness w = [&] {
        if (tree_path.empty() || tree_path == "-") return hist::parse_witness(std::cin, g.n);
        std::ifstream in(tree_path);
        if (!in) throw hist::error(hist::errc::malformed_witness, "cannot open witness file");
        return hist::parse_witness(in, g.n);
      }();
      bool ok = hist::verify_hist(g, w);
      if (as_json)
        std::cout << nlohmann::json{{"valid_hist", ok}}.dump() << "\n";
      else
        std::cout << (ok ? "valid HIST" : "not a HIST") << "\n";
      return ok ? 0 : 1;
    }

    if (cmd_recognize->parsed()) {
      hist::Graph g = read_graph(input);
      nlohmann::json j = hist::class_report(g);
      if (with_modules && hist::is_connected(g) && g.n >= 1)
        j["modular"] = hist::modules_report(g);
      std::cout << j.dump(2) << "\n";
      return 0;
    }

    if (cmd_generate->parsed()) {
      hist::Graph g;
      nlohmann::json meta;
      if (family == "A") {
        std::vector<int> p;
        std::stringstream ss(params_csv);
        std::string tok;
        while (std::getline(ss, tok, ',')) p.push_back(std::stoi(tok));
        g = hist::gen_a(p);
      } else if (family == "B") {
        g = hist::gen_b(gen_n);
      } else if (family == "hardness") {
        auto inst = hist::gen_hardness(read_graph(input), sv, tv);
        g = inst.h;
        meta = {{"s_prime", inst.s_prime},
                {"s_dprime", inst.s_dprime},
                {"u_size", inst.u_size},
                {"h_order", inst.h.n},
                {"g_prime", hist::serialize(inst.g_prime)}};
      } else if (family == "random") {
        hist::RandomClass rc = hist::RandomClass::any;
        if (cls == "split") rc = hist::RandomClass::split;
        else if (cls == "block_split") rc = hist::RandomClass::block_split;
        else if (cls == "chordal") rc = hist::RandomClass::chordal;
        else if (cls != "any") throw hist::error(hist::errc::precondition, "unknown class");
        g = hist::gen_random(rc, gen_n, density, seed);
      } else {
        throw hist::error(hist::errc::precondition, "unknown family '" + family + "'");
      }
      write_text(gen_out, hist::serialize(g));
      if (as_json && !meta.empty()) std::cerr << meta.dump(2) << "\n";
      return 0;
    }

    if (cmd_oracle->parsed()) {
      hist::Graph g = read_graph(input);
      hist::OracleOptions oopts;
      oopts.max_n = oracle_max_n;
      if (o_count) {
        auto c = hist::count_spanning_trees(g, oopts);
        std::cout << (as_json ? nlohmann::json{{"spanning_trees", c}}.dump()
                              : std::to_string(c))
                  << "\n";
        return 0;
      }
      if (o_hisf >= 0) {
        bool ok = hist::oracle_hisf(g, o_hisf, oopts);
        std::cout << (as_json ? nlohmann::json{{"hisf", ok}, {"k", o_hisf}}.dump()
                              : std::string(ok ? "HISF exists" : "no HISF"))
                  << "\n";
        return ok ? 0 : 1;
      }
      if (o_hampath.size() == 2) {
        auto path = hist::hamiltonian_path(g, o_hampath[0], o_hampath[1]);
        if (as_json) {
          nlohmann::json j;
          j["found"] = path.has_value();
          if (path) j["path"] = *path;
          std::cout << j.dump() << "\n";
        } else if (path) {
          for (std::size_t i = 0; i < path->size(); ++i)
            std::cout << (*path)[i] << (i + 1 < path->size() ? ' ' : '\n');
        } else {
          std::cout << "no path\n";
        }
        return path ? 0 : 1;
      }
      // default: --hist
      hist::Verdict v = hist::oracle_hist(g, oopts);
      print_verdict(v, as_json);
      return verdict_exit_code(v);
    }

    if (cmd_kernelize->parsed()) {
      hist::Graph g = read_graph(input);
      std::optional<hist::VertexSet> s;
      for (int b = 0; b <= budget && !s; ++b) s = hist::cluster_vertex_deletion(g, b);
      if (!s) throw hist::error(hist::errc::budget_exceeded, "no deletion set within budget");
      auto d = hist::decompose_by_deletion_set(g, *s);
      auto [kernel, old_to_new] = hist::kernelize(g, d);
      write_text(gen_out, hist::serialize(kernel));
      nlohmann::json mapj = {{"deletion_set", s->to_vector()},
                             {"old_to_new", old_to_new},
                             {"kernel_n", kernel.n}};
      if (!map_out.empty())
        write_text(map_out, mapj.dump(2) + "\n");
      else if (!gen_out.empty() && gen_out != "-")
        write_text(gen_out + ".json", mapj.dump(2) + "\n");
      else
        std::cerr << mapj.dump(2) << "\n";
      return 0;
    }

    if (cmd_bench->parsed()) {
      std::vector<std::string> methods;
      std::stringstream ss(methods_csv);
      std::string tok;
      while (std::getline(ss, tok, ',')) methods.push_back(tok);
      std::vector<std::string> files;
      if (std::filesystem::exists(corpus))
        for (auto& e : std::filesystem::directory_iterator(corpus))
          if (e.is_regular_file()) files.push_back(e.path().string());
      std::sort(files.begin(), files.end());
      std::vector<BenchRow> rows(files.size() * methods.size());
      std::atomic<std::size_t> cursor{0};
      auto worker = [&] {
        while (true) {
          std::size_t i = cursor.fetch_add(1);
          if (i >= rows.size()) break;
          const auto& file = files[i / methods.size()];
          const auto& m = methods[i % methods.size()];
          BenchRow& row = rows[i];
          row.file = file;
          row.method = m;
          try {
            std::ifstream in(file);
            hist::Graph g = hist::parse_edge_list(in);
            row.n = g.n;
            row.m = g.m;
            auto t0 = std::chrono::steady_clock::now();
            hist::Verdict v = hist::decide_with_method(g, m, opts);
            auto t1 = std::chrono::steady_clock::now();
            row.answer = hist::answer_name(v.answer);
            row.ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
          } catch (const std::exception& e) {
            row.answer = "error";
            row.error = e.what();
          }
        }
      };
      std::vector<std::thread> pool;
      for (int i = 0; i < std::max(1, jobs); ++i) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
      if (as_json) {
        nlohmann::json arr = nlohmann::json::array();
        for (auto& r : rows)
          arr.push_back({{"file", r.file}, {"n", r.n}, {"m", r.m}, {"method", r.method},
                         {"answer", r.answer}, {"wall_ms", r.ms}, {"error", r.error}});
        std::cout << arr.dump(2) << "\n";
      } else {
        std::cout << "file,n,m,method,answer,wall_ms,error\n";
        for (auto& r : rows)
          std::cout << r.file << ',' << r.n << ',' << r.m << ',' << r.method << ','
                    << r.answer << ',' << r.ms << ',' << r.error << "\n";
      }
      return 0;
    }
  } catch (const hist::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 3;
}
