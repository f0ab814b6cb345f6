#include "chromacut/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "chromacut/cuts.hpp"
#include "chromacut/distinguish.hpp"
#include "chromacut/errors.hpp"
#include "chromacut/graph_format.hpp"
#include "chromacut/oracle.hpp"
#include "chromacut/reconstruct.hpp"
#include "chromacut/treegen.hpp"

namespace chromacut {

namespace {

constexpr int kOk = 0;
constexpr int kFinding = 1;
constexpr int kUsage = 2;

struct Range {
  int lo = 0;
  int hi = 0;
};

Range parse_range(const std::string& text) {
  auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      int v = std::stoi(text);
      return {v, v};
    }
    Range r{std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
    if (r.lo > r.hi) throw RangeError("empty range " + text);
    return r;
  } catch (const std::logic_error&) {
    throw ParseError("bad range '" + text + "'");
  }
}

std::size_t guard_from_env(std::size_t fallback) {
  if (const char* v = std::getenv("CHROMACUT_GUARD_N")) {
    try {
      return static_cast<std::size_t>(std::stoul(v));
    } catch (const std::logic_error&) {
      throw ParseError("CHROMACUT_GUARD_N is not a number");
    }
  }
  return fallback;
}

std::string read_input(const std::string& path) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    buf << in.rdbuf();
  }
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << text;
}

void check_guard(int n, std::size_t guard, bool unsafe) {
  if (!unsafe && static_cast<std::size_t>(n) > guard) {
    throw SizeLimitError("n=" + std::to_string(n) + " exceeds the guard " + std::to_string(guard) +
                         " (set CHROMACUT_GUARD_N or pass --unsafe-large)");
  }
}

std::string format_tree(const Tree& t, const std::string& format) {
  if (format == "sparse6") return encode_sparse6(t) + "\n";
  if (format == "graph6") return encode_graph6(t) + "\n";
  return to_edgelist(t) + "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"chromacut: cut invariants of trees", "chromacut"};
  app.require_subcommand(1);

  unsigned shards = 0;
  bool unsafe = false;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--shards", shards, "worker count (0 = all cores)");
    sub->add_flag("--unsafe-large", unsafe, "lift the size guard");
  };

  int gen_n = 0;
  std::string gen_format = "edgelist";
  auto* gen = app.add_subcommand("gen", "list every free tree on n vertices");
  gen->add_option("--n", gen_n)->required();
  gen->add_option("--format", gen_format)->check(CLI::IsMember({"edgelist", "sparse6", "graph6"}));
  add_common(gen);

  std::string verify_n;
  int verify_k = 5;
  std::string csv_path, json_path, run_dir;
  auto* verify = app.add_subcommand("verify", "check that max-k cuts separate all trees");
  verify->add_option("--n", verify_n, "n or lo..hi")->required();
  verify->add_option("--max-k", verify_k);
  verify->add_option("--csv", csv_path, "also write the CSV report here");
  verify->add_option("--json", json_path, "write the JSON report here");
  verify->add_option("--run-dir", run_dir, "resumable shard directory");
  add_common(verify);

  std::string tables_n = "7..14", tables_k = "1..3";
  auto* tables = app.add_subcommand("tables", "collision tables per n and k");
  tables->add_option("--n", tables_n, "n or lo..hi");
  tables->add_option("--k", tables_k, "k or lo..hi");
  tables->add_option("--json", json_path, "write the JSON report here");
  add_common(tables);

  std::string tree_path;
  int cuts_k = 1;
  bool labeled = false, as_json = false;
  auto* cuts = app.add_subcommand("cuts", "k-cut multiset or labeled table of one tree");
  cuts->add_option("tree", tree_path, "tree file (edge list, graph6 or sparse6; - for stdin)")->required();
  cuts->add_option("--k", cuts_k);
  cuts->add_flag("--labeled", labeled);
  cuts->add_flag("--json", as_json, "labeled table as JSON");

  std::string table_path;
  auto* recon = app.add_subcommand("reconstruct", "rebuild a two-centroid tree from labeled cuts");
  recon->add_option("table", table_path, "JSON table (k >= 3) or ordered 2-cut input")->required();

  int oracle_n = 0, oracle_seeds = 10;
  auto* oracle = app.add_subcommand("oracle-check", "deletion/contraction against subset enumeration");
  oracle->add_option("--n", oracle_n)->required();
  oracle->add_option("--seeds", oracle_seeds, "random edge orders per tree");

  int pair_k = 1, pair_max_n = 20;
  auto* pair = app.add_subcommand("minimal-pair", "smallest trees sharing all j-cuts, j <= k");
  pair->add_option("--k", pair_k)->required();
  pair->add_option("--max-n", pair_max_n);
  add_common(pair);

  int split_n = 0, split_k = 2;
  auto* split = app.add_subcommand("split-check", "split the central edge of each family");
  split->add_option("--n", split_n)->required();
  split->add_option("--k", split_k);
  add_common(split);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const std::size_t guard = guard_from_env(20);

    if (gen->parsed()) {
      check_guard(gen_n, std::max<std::size_t>(guard, 24), unsafe);
      auto stream = enumerate_free_trees(static_cast<std::size_t>(gen_n));
      std::uint64_t count = 0;
      while (auto t = stream.next()) {
        out << format_tree(*t, gen_format);
        ++count;
      }
      err << "count " << count << "\n";
      return kOk;
    }

    if (verify->parsed() || tables->parsed()) {
      const auto ns = parse_range(verify->parsed() ? verify_n : tables_n);
      Range ks{verify_k, verify_k};
      if (tables->parsed()) ks = parse_range(tables_k);
      std::vector<FiltrationResult> results;
      bool all = true;
      for (int n = ns.lo; n <= ns.hi; ++n) {
        check_guard(n, guard, unsafe);
        FiltrationOptions options;
        options.max_k = ks.hi;
        options.threads = shards;
        options.guard_n = unsafe ? 64 : guard;
        if (!run_dir.empty()) options.run_dir = run_dir;
        auto r = filtration(n, options);
        std::erase_if(r.rows, [&](const TableRow& row) { return row.k < ks.lo; });
        all = all && r.distinguished;
        err << "n=" << n << " trees=" << r.total << " survivors=" << r.families.size() << "\n";
        results.push_back(std::move(r));
      }
      std::ostringstream config;
      config << (verify->parsed() ? "verify" : "tables") << " n=" << ns.lo << ".." << ns.hi << " k=" << ks.lo
             << ".." << ks.hi;
      const auto csv = csv_report(results, config.str());
      out << csv;
      if (!csv_path.empty()) write_file(csv_path, csv);
      if (!json_path.empty()) write_file(json_path, json_report(results, config.str()));
      if (tables->parsed()) return kOk;
      return all ? kOk : kFinding;
    }

    if (cuts->parsed()) {
      const Tree t = decode_tree_text(read_input(tree_path));
      if (cuts_k < 0 || cuts_k > static_cast<int>(t.edge_count())) throw RangeError("k out of range");
      if (labeled || as_json) {
        const auto lc = labeled_k_cuts(t, static_cast<std::size_t>(cuts_k));
        if (as_json) {
          out << labeled_cuts_to_json(lc);
        } else {
          for (const auto& [s, p] : lc.entries()) {
            const auto idx = s.indices();
            for (std::size_t i = 0; i < idx.size(); ++i) out << (i ? "," : "") << idx[i];
            out << ' ' << p.to_string() << "\n";
          }
        }
      } else {
        out << k_cuts(t, static_cast<std::size_t>(cuts_k)).serialize();
      }
      return kOk;
    }

    if (recon->parsed()) {
      const auto text = read_input(table_path);
      Tree t = text.find("two_cuts") != std::string::npos
                   ? reconstruct_double_centroid(reconstruction_input_from_json(text))
                   : [&] {
                       const auto lc = labeled_cuts_from_json(text);
                       return reconstruct_from_labeled_cuts(lc, lc.n());
                     }();
      out << encode_sparse6(t) << "\n";
      out << "verified: all input cuts reproduced\n";
      return kOk;
    }

    if (oracle->parsed()) {
      if (oracle_n < 1 || oracle_n > 16) throw SizeLimitError("oracle-check supports 1 <= n <= 16");
      std::uint64_t trees = 0, bad = 0, unstable = 0;
      std::mt19937_64 seeds(static_cast<std::uint64_t>(oracle_n));
      for (const auto& t : all_free_trees(static_cast<std::size_t>(oracle_n))) {
        ++trees;
        const auto base = wcp_multiset(WeightedForest::unit(t));
        if (!(base == subset_multiset(t)) || !(signed_image(base, oracle_n) == psum_expansion(t))) ++bad;
        for (int s = 0; s < oracle_seeds; ++s) {
          WcpOptions options;
          options.memoize = false;
          options.edge_seed = seeds();
          if (!(wcp_multiset(WeightedForest::unit(t), options) == base)) {
            ++unstable;
            break;
          }
        }
      }
      out << "n=" << oracle_n << " trees=" << trees << " mismatches=" << bad << " order_dependent=" << unstable
          << "\n";
      return bad || unstable ? kFinding : kOk;
    }

    if (pair->parsed()) {
      check_guard(pair_max_n, guard, unsafe);
      const auto p = minimal_pair(pair_k, pair_max_n, shards);
      out << "n=" << p.n << " k=" << pair_k << "\n" << encode_sparse6(p.first) << "\n"
          << encode_sparse6(p.second) << "\n";
      return kOk;
    }

    if (split->parsed()) {
      check_guard(split_n + 1, guard, unsafe);
      const auto report = split_conjecture_check(split_n, split_k, shards);
      for (const auto& rec : report.records) {
        out << status_name(rec.status) << " n=" << split_n << " k=" << split_k
            << " members=" << rec.family.members.size();
        for (const auto& t : rec.family.members) out << ' ' << encode_sparse6(t);
        if (!rec.note.empty()) out << " (" << rec.note << ")";
        out << "\n";
      }
      out << (report.passed() ? "no counterexample" : "counterexample found") << " among "
          << report.records.size() << " families\n";
      return report.passed() ? kOk : kFinding;
    }
  } catch (const NotFoundWithinBound& e) {
    err << e.what() << "\n";
    return kFinding;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace chromacut
