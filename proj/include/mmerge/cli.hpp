#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "mmerge/errors.hpp"
#include "mmerge/formula.hpp"
#include "mmerge/merge.hpp"
#include "mmerge/parser.hpp"
#include "mmerge/problem_file.hpp"
#include "mmerge/profile.hpp"
#include "mmerge/scenario.hpp"
#include "mmerge/similarity.hpp"
#include "mmerge/substitution.hpp"

// Command implementations behind the `mmerge` tool. Each returns the process
// exit status: 0 success, 1 input error, 2 no admissible mistake hypothesis.
namespace mmerge::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitNoHypothesis = 2;

inline std::string format_score(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline ProblemFile load_problem(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return parse_problem(text);
  } catch (const ParseError& e) {
    throw Error(path + ":" + e.what());
  }
}

struct MergeOptions {
  std::string file;
  Operator op = Operator::kRmel;
  MergeConfig config;
  bool explain = false;
};

inline int cmd_merge(const MergeOptions& opts, std::ostream& out, std::ostream& err) {
  MergeOutcome outcome;
  try {
    const ProblemFile problem = load_problem(opts.file);
    outcome = run_operator(opts.op, problem.bases, problem.upper, problem.lower, opts.config);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  out << to_string(outcome.result) << "\n";
  if (opts.explain) {
    for (std::size_t i = 0; i < outcome.disjuncts.size(); ++i) {
      const auto& d = outcome.disjuncts[i];
      out << "[" << i + 1 << "] " << to_string(d.formula) << "  size=" << d.size
          << " score=" << format_score(d.score) << "\n";
      for (const auto& t : d.provenance) out << "    <- " << to_string(t) << "\n";
    }
  }
  if (!outcome.admissible()) {
    err << "no admissible mistake hypothesis\n";
    return kExitNoHypothesis;
  }
  return kExitOk;
}

inline int cmd_check(const std::string& file, std::size_t max_universe, std::ostream& out, std::ostream& err) {
  try {
    const ProblemFile problem = load_problem(file);
    const auto violations = profile_violations(problem.bases, problem.upper, problem.lower, max_universe);
    if (violations.empty()) {
      out << "ok: " << problem.bases.size() << " knowledge base" << (problem.bases.size() == 1 ? "" : "s") << "\n";
      return kExitOk;
    }
    for (const auto& v : violations) out << v << "\n";
    return kExitInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

struct RankOptions {
  std::string file;
  // Each entry is "Y|Z" with Y and Z written as "a->b, c->c'".
  std::vector<std::string> pairs;
  DeltaMode mode = DeltaMode::kLinear;
  std::size_t max_universe = Universe::kDefaultMaxVars;
};

inline int cmd_rank(const RankOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const ProblemFile pf = load_problem(opts.file);
    if (pf.bases.size() != 2) throw Error("rank needs exactly 2 knowledge bases");
    const MergeProblem problem(pf.bases, pf.upper, pf.lower, 1, opts.max_universe);
    const auto primes = problem.designated_primes();
    for (const auto& text : opts.pairs) {
      const auto bar = text.find('|');
      if (bar == std::string::npos) throw Error("expected 'Y|Z' substitution pair, got '" + text + "'");
      const Substitution y = Substitution::parse(text.substr(0, bar));
      const Substitution z = Substitution::parse(text.substr(bar + 1));
      if (!y.permitted(problem.alphabet(), primes) || !z.permitted(problem.alphabet(), primes)) {
        throw Error("'" + text + "' is not a permitted substitution pair");
      }
      const Formula k1 = y.apply(pf.bases[0]);
      const Formula k2 = z.apply(pf.bases[1]);
      const TruthTable merged = tabulate(Formula::And(k1, k2), problem.working());
      const bool admissible = merged.subset_of(problem.upper_table()) && merged.intersects(problem.lower_table());
      const double sim = similarity_value(k1, k2, problem.working(), opts.mode);
      out << "Y={" << to_string(y) << "} Z={" << to_string(z) << "} size=" << y.size() + z.size()
          << " similarity=" << format_score(sim)
          << " score=" << format_score(rank_renaming_pair(y, z, pf.bases[0], pf.bases[1], problem.working(), opts.mode))
          << " admissible=" << admissible << "\n";
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

inline int cmd_parse(const std::string& text, std::ostream& out, std::ostream& err) {
  try {
    out << to_string(parse_formula(text)) << "\n";
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

struct SimulateOptions {
  std::uint64_t seed = 1;
  std::size_t vars = 4;
  std::size_t sources = 2;
  std::size_t budget = 1;
  MistakeKinds kinds = MistakeKinds::renaming_only();
  std::size_t runs = 10;
  std::optional<Operator> op;  // rmel for two sources, general otherwise
  MergeConfig config;
};

// Seed of the i-th run (splitmix64 of seed + i).
inline std::uint64_t run_seed(std::uint64_t seed, std::uint64_t i) {
  std::uint64_t z = seed + i * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline int cmd_simulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err) {
  const Operator op = opts.op.value_or(opts.sources == 2 ? Operator::kRmel : Operator::kGeneral);
  std::size_t admissible = 0, sound = 0, complete = 0;
  try {
    if (op != Operator::kGeneral && opts.sources != 2) throw Error("operator " + to_string(op) + " needs 2 sources");
    for (std::size_t i = 0; i < opts.runs; ++i) {
      const std::uint64_t seed = run_seed(opts.seed, i);
      const Scenario sc = generate(seed, opts.vars, opts.sources, opts.budget, opts.kinds);
      const RecoveryReport r = evaluate(sc, op, opts.config);
      admissible += r.admissible;
      sound += r.sound_wrt_S;
      complete += r.complete_wrt_S;
      out << "run=" << i << " seed=" << seed << " " << to_record(r) << "\n";
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  auto rate = [&](std::size_t n) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", opts.runs ? static_cast<double>(n) / static_cast<double>(opts.runs) : 0.0);
    return std::string(buf);
  };
  out << "\n";
  out << std::left << std::setw(12) << "operator" << to_string(op) << "\n";
  out << std::left << std::setw(12) << "kinds" << to_string(opts.kinds) << "\n";
  out << std::left << std::setw(12) << "runs" << opts.runs << "\n";
  out << std::left << std::setw(12) << "admissible" << rate(admissible) << "\n";
  out << std::left << std::setw(12) << "sound" << rate(sound) << "\n";
  out << std::left << std::setw(12) << "complete" << rate(complete) << "\n";
  return kExitOk;
}

}  // namespace mmerge::cli
