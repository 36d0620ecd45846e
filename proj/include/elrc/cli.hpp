#pragma once

// Command-line front end. `run` is stream-parameterised so it can be driven
// in-process as well as from tools/elrc.cpp.
//
// Exit codes: 0 success, 1 operational failure (I/O, parse, stuck plan, failed
// verification), 2 usage error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "elrc/analysis.hpp"
#include "elrc/code.hpp"
#include "elrc/repair.hpp"
#include "elrc/text_format.hpp"

namespace elrc::cli {

enum ExitCode : int { kSuccess = 0, kFailure = 1, kUsage = 2 };

struct CliConfig {
  std::string command;
  unsigned r = 0;
  unsigned m = 0;
  std::optional<std::uint64_t> t;
  std::optional<std::uint64_t> k;
  std::string in_path;
  std::string out_path;
  std::string pattern_path;
  std::string plan_path;
  std::string target;
  std::optional<std::size_t> max_size;
  std::string mode = "exhaustive";
  std::uint64_t samples = kDefaultSamples;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::uint64_t budget = kDefaultEnumerationBudget;
  std::string format = "text";
  std::string table = "all";
  bool certify = false;
  std::size_t max_k = kMaxBruteForceDimension;
};

namespace detail {

class UsageError : public Error {
 public:
  using Error::Error;
};

inline std::string read_all(const std::string& path, std::istream& fallback) {
  if (path.empty() || path == "-") {
    return {std::istreambuf_iterator<char>(fallback), std::istreambuf_iterator<char>()};
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    throw Error("cannot open '" + path + "' for reading");
  }
  return {std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
}

inline void write_all(const std::string& path, std::ostream& fallback, const std::string& content) {
  if (path.empty() || path == "-") {
    fallback << content;
    fallback.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file || !(file << content)) {
    throw Error("cannot write '" + path + "'");
  }
}

inline text::TableStyle table_style(const CliConfig& c) {
  return c.format == "csv" ? text::TableStyle::csv : text::TableStyle::text;
}

inline int execute(const CliConfig& c, std::istream& in, std::ostream& out, std::ostream& err) {
  const auto& cmd = c.command;

  if (cmd == "bounds") {
    std::uint64_t t = 0;
    std::uint64_t k = 0;
    if (c.t && c.k) {
      t = *c.t;
      k = *c.k;
    } else {
      if (c.m == 0) {
        throw UsageError("bounds needs -m, or both -t and -k");
      }
      const CodeParams p(c.r, c.m);
      t = c.t.value_or(p.t());
      k = c.k.value_or(p.k());
    }
    write_all(c.out_path, out, text::format_bounds({bounds_row(c.r, t, k)}, table_style(c)));
    return kSuccess;
  }

  if (cmd == "tables") {
    if (c.r != 2) {
      err << "note: the reference tables are defined for r=2; computing for r=" << c.r << "\n";
    }
    std::string body;
    if (c.table == "1" || c.table == "all") {
      body += text::format_table1(table1(c.r), table_style(c));
    }
    if (c.table == "2" || c.table == "all") {
      Table2Options options;
      options.certify = c.certify;
      options.samples = c.samples;
      options.seed = c.seed;
      options.jobs = c.jobs;
      options.budget = c.budget;
      const auto rows = table2(c.r, {2, 3, 4, 5}, options);
      if (!body.empty()) {
        body += '\n';
      }
      body += text::format_table2(rows, table_style(c));
      if (c.certify) {
        for (const auto& row : rows) {
          err << "m=" << row.m << ": sequential " << to_string(row.sequential_certified_by) << ", parallel "
              << to_string(row.parallel_certified_by) << "\n";
        }
      }
    }
    write_all(c.out_path, out, body);
    return kSuccess;
  }

  const CodeParams p(c.r, c.m);

  if (cmd == "params") {
    write_all(c.out_path, out, std::to_string(p.n()) + " " + std::to_string(p.k()) + " " + std::to_string(p.t()) + "\n");
    return kSuccess;
  }
  if (cmd == "matrix") {
    write_all(c.out_path, out, text::format_matrix(p, build_parity_check(p)));
    return kSuccess;
  }
  if (cmd == "encode") {
    const auto info = text::parse_info(p, read_all(c.in_path, in));
    write_all(c.out_path, out, text::format_word(encode(p, info)));
    return kSuccess;
  }
  if (cmd == "check") {
    const auto word = text::parse_word(p, read_all(c.in_path, in));
    const bool ok = is_codeword(p, word);
    write_all(c.out_path, out, ok ? "codeword\n" : "not a codeword\n");
    return ok ? kSuccess : kFailure;
  }
  if (cmd == "erase") {
    auto word = text::parse_masked_word(p, read_all(c.in_path, in));
    const auto pattern = text::parse_pattern(p, read_all(c.pattern_path, in));
    std::vector<std::size_t> all(word.erased.ranks().begin(), word.erased.ranks().end());
    all.insert(all.end(), pattern.ranks().begin(), pattern.ranks().end());
    write_all(c.out_path, out,
              text::format_masked_word(mask_word(p, word.bits, ErasurePattern::from_ranks(p, std::move(all)))));
    return kSuccess;
  }
  if (cmd == "plan") {
    const auto pattern = text::parse_pattern(p, read_all(c.pattern_path.empty() ? c.in_path : c.pattern_path, in));
    const auto result = plan_sequential(p, pattern);
    write_all(c.out_path, out, text::format_plan(result.plan));
    if (!result.complete()) {
      err << "stuck: no remaining erasure has a free line; unrepaired: " << text::format_pattern(p, result.remaining)
          << "\n";
      return kFailure;
    }
    return kSuccess;
  }
  if (cmd == "repair") {
    const auto word = text::parse_masked_word(p, read_all(c.in_path, in));
    if (!c.pattern_path.empty()) {
      const auto pattern = text::parse_pattern(p, read_all(c.pattern_path, in));
      if (!(pattern == word.erased)) {
        throw Error("pattern file does not match the '?' positions of the word");
      }
    }
    RepairPlan plan;
    if (!c.plan_path.empty()) {
      plan = text::parse_plan(p, read_all(c.plan_path, in));
    } else {
      plan = plan_sequential(p, word.erased).plan;
    }
    const auto repaired = execute_plan(p, word, plan);
    write_all(c.out_path, out, text::format_masked_word(repaired));
    if (!repaired.erased.empty()) {
      err << "stuck: unrepaired " << text::format_pattern(p, repaired.erased) << "\n";
      return kFailure;
    }
    return kSuccess;
  }
  if (cmd == "verify") {
    VerifyOptions options;
    options.mode = c.mode == "random" ? VerifyMode::randomized : VerifyMode::exhaustive;
    options.max_size = c.max_size.value_or(p.t());
    options.samples = c.samples;
    options.seed = c.seed;
    options.jobs = c.jobs;
    options.budget = c.budget;
    const auto report = verify_elrc(p, options);
    write_all(c.out_path, out, text::format_report(report));
    return report.ok() ? kSuccess : kFailure;
  }
  if (cmd == "parallel-check") {
    const auto pattern = text::parse_pattern(p, read_all(c.pattern_path.empty() ? c.in_path : c.pattern_path, in));
    const auto check = parallel_repairable(p, pattern);
    std::string body;
    const auto coords = pattern.coords(p);
    for (std::size_t i = 0; i < coords.size(); ++i) {
      body += text::format_coord(coords[i]);
      body += check.witness_axes[i] ? " axis " + std::to_string(*check.witness_axes[i] + 1) : std::string(" blocked");
      body += '\n';
    }
    body += check.repairable ? "parallel-repairable\n" : "not parallel-repairable\n";
    write_all(c.out_path, out, body);
    return check.repairable ? kSuccess : kFailure;
  }
  if (cmd == "oracle") {
    const auto target = text::parse_coord(p, c.target);
    ErasurePattern erased;
    if (!c.pattern_path.empty()) {
      erased = text::parse_pattern(p, read_all(c.pattern_path, in));
    }
    const std::size_t target_rank = coord_rank(p, target);
    std::vector<Coord> live;
    for (std::size_t rank = 0; rank < p.n(); ++rank) {
      if (rank != target_rank && !erased.contains(rank)) {
        live.push_back(coord_at(p, rank));
      }
    }
    const auto found = general_repair_set_oracle(p, target, live);
    if (!found) {
      write_all(c.out_path, out, "none\n");
      return kFailure;
    }
    std::string body = "repair-set";
    for (const auto& s : *found) {
      body += ' ' + text::format_coord(s);
    }
    write_all(c.out_path, out, body + "\n");
    return kSuccess;
  }
  if (cmd == "mindist") {
    write_all(c.out_path, out, std::to_string(min_distance_bruteforce(p, c.max_k)) + "\n");
    return kSuccess;
  }
  throw UsageError("unknown command '" + cmd + "'");
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Binary product-code locally repairable code toolkit", "elrc"};
  app.require_subcommand(1);
  CliConfig c;

  const auto r_range = CLI::Range(2U, 1U << 20);
  auto add_code = [&](CLI::App* sub, bool need_m = true) {
    sub->add_option("-r", c.r, "Locality r (>= 2)")->required()->check(r_range);
    auto* opt = sub->add_option("-m", c.m, "Number of product factors m (>= 1)")->check(CLI::Range(1U, 64U));
    if (need_m) {
      opt->required();
    }
  };
  auto add_in = [&](CLI::App* sub) { sub->add_option("--in", c.in_path, "Input file (default stdin)"); };
  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", c.out_path, "Output file (default stdout)"); };
  auto add_pattern = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--pattern", c.pattern_path, "Erasure pattern file (whitespace-separated coords)");
    if (required) {
      opt->required();
    }
  };
  auto add_search = [&](CLI::App* sub) {
    sub->add_option("--samples", c.samples, "Random samples per pattern size");
    sub->add_option("--seed", c.seed, "Seed for randomized verification");
    sub->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::Range(1U, 1024U));
    sub->add_option("--budget", c.budget, "Exhaustive enumeration budget (patterns)");
  };

  auto* params = app.add_subcommand("params", "Print n k t");
  add_code(params);
  add_out(params);

  auto* matrix = app.add_subcommand("matrix", "Write the parity-check matrix");
  add_code(matrix);
  add_out(matrix);

  auto* enc = app.add_subcommand("encode", "Encode k information bits");
  add_code(enc);
  add_in(enc);
  add_out(enc);

  auto* check = app.add_subcommand("check", "Exit 0 iff the word is a codeword");
  add_code(check);
  add_in(check);
  add_out(check);

  auto* erase = app.add_subcommand("erase", "Mask a pattern with '?'");
  add_code(erase);
  add_in(erase);
  add_out(erase);
  add_pattern(erase, true);

  auto* plan = app.add_subcommand("plan", "Plan sequential repair of a pattern");
  add_code(plan);
  add_in(plan);
  add_out(plan);
  add_pattern(plan, false);

  auto* repair = app.add_subcommand("repair", "Repair a masked word");
  add_code(repair);
  add_in(repair);
  add_out(repair);
  add_pattern(repair, false);
  repair->add_option("--plan", c.plan_path, "Plan file to apply (default: plan from the '?' positions)");

  auto* verify = app.add_subcommand("verify", "Check sequential repairability of all/sampled patterns");
  add_code(verify);
  add_out(verify);
  add_search(verify);
  verify->add_option("--max-size", c.max_size, "Largest pattern size (default 2^m-1)");
  verify->add_option("--mode", c.mode, "exhaustive or random")->check(CLI::IsMember({"exhaustive", "random"}));

  auto* par = app.add_subcommand("parallel-check", "Report per-symbol parallel repair axes");
  add_code(par);
  add_in(par);
  add_out(par);
  add_pattern(par, false);

  auto* oracle = app.add_subcommand("oracle", "Smallest general repair set from live symbols");
  add_code(oracle);
  add_out(oracle);
  add_pattern(oracle, false);
  oracle->add_option("--target", c.target, "Symbol to repair")->required();

  auto* bounds = app.add_subcommand("bounds", "Rate and length bounds");
  add_code(bounds, false);
  add_out(bounds);
  bounds->add_option("-t", c.t, "Erasure tolerance (default 2^m-1)");
  bounds->add_option("-k", c.k, "Dimension (default r^m)");
  bounds->add_option("--format", c.format)->check(CLI::IsMember({"text", "csv"}));

  auto* tables = app.add_subcommand("tables", "Code-length and tolerance comparison tables");
  c.r = 2;
  tables->add_option("-r", c.r, "Locality r")->check(r_range);
  add_out(tables);
  add_search(tables);
  tables->add_option("--format", c.format)->check(CLI::IsMember({"text", "csv"}));
  tables->add_option("--table", c.table)->check(CLI::IsMember({"1", "2", "all"}));
  tables->add_flag("--certify", c.certify, "Confirm tolerance columns by search");

  auto* mindist = app.add_subcommand("mindist", "Brute-force minimum distance");
  add_code(mindist);
  add_out(mindist);
  mindist->add_option("--budget", c.max_k, "Largest dimension k to enumerate");

  std::vector<std::string> argv_storage{"elrc"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_storage) {
    argv.push_back(s.data());
  }
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return e.get_exit_code() == 0 ? kSuccess : kUsage;
  }
  c.command = app.get_subcommands().front()->get_name();

  try {
    return detail::execute(c, in, out, err);
  } catch (const detail::UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidParameters& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace elrc::cli
