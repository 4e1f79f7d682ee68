//
// muxreloc -- command line driver
//
// Subcommands: optimize, check, gen, stats, bench.
// Exit codes: 0 success, 1 user error, 2 verification failure, 3 internal error.
//

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "muxreloc/bench_gen.hpp"
#include "muxreloc/equiv.hpp"
#include "muxreloc/gnl.hpp"
#include "muxreloc/relocate.hpp"

using namespace muxreloc;

namespace {

struct CommonFlags {
  bool approx = true;
  int lookahead = 3;
  std::string safety = "strict";
  std::string area_table_path;
  int exhaustive_limit = 16;
  uint64_t vectors = 100000;
  uint64_t seed = 1;

  MatchOptions match_options() const {
    MatchOptions o;
    o.approximate = approx;
    o.lookahead_depth = lookahead;
    o.safety = safety == "duplicate" ? MatchOptions::Safety::Duplicate
                                     : MatchOptions::Safety::Strict;
    return o;
  }
  AreaTable area_table() const {
    return area_table_path.empty() ? AreaTable::defaults() : AreaTable::from_file(area_table_path);
  }
  EquivOptions equiv_options() const { return {exhaustive_limit, vectors, seed}; }
};

void add_match_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_flag("--approx,!--no-approx", f.approx,
                "approximate matching: traverse inverters, repair with XOR2 (default on)");
  cmd->add_option("--lookahead", f.lookahead, "lookahead depth for ambiguous pairings")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--safety", f.safety, "side-fanout handling on the s=1 cone")
      ->check(CLI::IsMember({"strict", "duplicate"}));
  cmd->add_option("--area-table", f.area_table_path, "area override file (CELLNAME <area> lines)");
}

void add_verify_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--exhaustive-limit", f.exhaustive_limit,
                  "max PI count for exhaustive equivalence");
  cmd->add_option("--vectors", f.vectors, "random vectors when beyond the exhaustive limit");
  cmd->add_option("--seed", f.seed, "seed for random vectors");
}

int cmd_optimize(const std::string& in_path, const std::string& out_path,
                 const std::string& report_path, bool no_verify, const CommonFlags& flags) {
  Netlist input = read_gnl_file(in_path);
  AreaTable table = flags.area_table();
  auto [result, report] = optimize(input, flags.match_options(), table);
  if (!no_verify) {
    EquivVerdict v = equivalent(input, result, flags.equiv_options());
    if (!v.equal()) {
      std::cerr << "verification FAILED: " << v.describe() << "\n";
      std::error_code ec;
      std::filesystem::remove(out_path, ec);
      return 2;
    }
    std::cout << "verified: " << v.describe() << "\n";
  }
  write_gnl_file(result, out_path);
  if (!report_path.empty()) {
    std::ofstream rf(report_path);
    if (!rf) throw std::runtime_error("cannot open " + report_path + " for writing");
    rf << report.to_json().dump(2) << "\n";
  }
  std::cout << "area " << format_area(report.area_before) << " -> "
            << format_area(report.area_after) << "  (" << report.accepted
            << " relocations accepted, " << report.passes << " passes)\n";
  return 0;
}

int cmd_check(const std::string& a_path, const std::string& b_path, const CommonFlags& flags) {
  Netlist a = read_gnl_file(a_path);
  Netlist b = read_gnl_file(b_path);
  EquivVerdict v;
  try {
    v = equivalent(a, b, flags.equiv_options());
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cout << v.describe() << "\n";
  return v.equal() ? 0 : 2;
}

int cmd_gen(const std::string& kind_name, int bits, const std::string& out_path) {
  BenchKind kind;
  if (!bench_kind_from_name(kind_name, kind)) {
    std::cerr << "error: unknown benchmark kind " << kind_name << "\n";
    return 1;
  }
  BenchSpec spec{kind, bits};
  try {
    validate_spec(spec);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  write_gnl_file(generate(spec), out_path);
  return 0;
}

int cmd_stats(const std::string& in_path, const CommonFlags& flags) {
  Netlist nl = read_gnl_file(in_path);
  std::cout << stats(nl, flags.area_table()).to_string();
  return 0;
}

int cmd_bench(const std::string& kind_name, const std::vector<int>& bits_list,
              const std::string& csv_path, const CommonFlags& flags) {
  BenchKind kind;
  if (!bench_kind_from_name(kind_name, kind)) {
    std::cerr << "error: unknown benchmark kind " << kind_name << "\n";
    return 1;
  }
  std::ofstream csv;
  if (!csv_path.empty()) {
    csv.open(csv_path);
    if (!csv) throw std::runtime_error("cannot open " + csv_path + " for writing");
    csv << "bits,gates,seconds,area_before,area_after\n";
  }
  AreaTable table = flags.area_table();
  for (int bits : bits_list) {
    BenchSpec spec{kind, bits};
    validate_spec(spec);
    Netlist nl = generate(spec);
    int gates = nl.live_gate_count();
    auto t0 = std::chrono::steady_clock::now();
    auto [result, report] = optimize(nl, flags.match_options(), table);
    auto t1 = std::chrono::steady_clock::now();
    double seconds = std::chrono::duration<double>(t1 - t0).count();
    char line[256];
    snprintf(line, sizeof line, "%d,%d,%.6f,%s,%s", bits, gates, seconds,
             format_area(report.area_before).c_str(), format_area(report.area_after).c_str());
    std::cout << line << "\n";
    if (csv.is_open()) csv << line << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"muxreloc: datapath area resynthesis by backward multiplexer relocation"};
  app.require_subcommand(1);
  CommonFlags flags;

  auto* opt = app.add_subcommand("optimize", "relocate multiplexers and write the result");
  std::string in_path, out_path, report_path;
  bool no_verify = false;
  opt->add_option("input", in_path, "input GNL netlist")->required();
  opt->add_option("-o,--output", out_path, "output GNL netlist")->required();
  opt->add_option("--report", report_path, "write a JSON optimization report");
  opt->add_flag("--no-verify", no_verify, "skip the equivalence check");
  add_match_flags(opt, flags);
  add_verify_flags(opt, flags);

  auto* chk = app.add_subcommand("check", "simulation equivalence check of two netlists");
  std::string a_path, b_path;
  chk->add_option("a", a_path, "first GNL netlist")->required();
  chk->add_option("b", b_path, "second GNL netlist")->required();
  add_verify_flags(chk, flags);

  auto* gen = app.add_subcommand("gen", "generate a benchmark netlist");
  std::string kind_name = "add-add";
  int bits = 8;
  std::string gen_out;
  gen->add_option("kind", kind_name,
                  "add-add | add-sub | lt-lt | lt-le | mul-mul | muladd-swap | dec-dec")
      ->required();
  gen->add_option("--bits", bits, "operand width")->required();
  gen->add_option("-o,--output", gen_out, "output GNL netlist")->required();

  auto* st = app.add_subcommand("stats", "print netlist statistics");
  std::string stats_path;
  st->add_option("input", stats_path, "GNL netlist")->required();
  st->add_option("--area-table", flags.area_table_path, "area override file");

  auto* bn = app.add_subcommand("bench", "time optimize() across benchmark sizes");
  std::string bench_kind = "mul-mul";
  std::vector<int> bits_list;
  std::string csv_path;
  bn->add_option("--kind", bench_kind, "benchmark kind")->required();
  bn->add_option("--bits", bits_list, "comma-separated sizes")->required()->delimiter(',');
  bn->add_option("--csv", csv_path, "CSV output path");
  add_match_flags(bn, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(opt)) return cmd_optimize(in_path, out_path, report_path, no_verify, flags);
    if (app.got_subcommand(chk)) return cmd_check(a_path, b_path, flags);
    if (app.got_subcommand(gen)) return cmd_gen(kind_name, bits, gen_out);
    if (app.got_subcommand(st)) return cmd_stats(stats_path, flags);
    if (app.got_subcommand(bn)) return cmd_bench(bench_kind, bits_list, csv_path, flags);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::runtime_error& e) {
    std::string msg = e.what();
    std::cerr << "error: " << msg << "\n";
    bool user = msg.rfind("cannot open", 0) == 0 || msg.rfind("area table", 0) == 0;
    return user ? 1 : 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}
