#pragma once

// Command-line front end. run() takes the arguments after the program name
// and returns the exit status: 0 success or SAT, 1 UNSAT or failed suite,
// 2 input error, 3 budget exceeded, 4 tableau and oracle disagree.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "subalc/classify.hpp"
#include "subalc/error.hpp"
#include "subalc/qbf.hpp"
#include "subalc/reductions.hpp"
#include "subalc/semantics.hpp"
#include "subalc/syntax.hpp"
#include "subalc/tableau.hpp"
#include "subalc/verify.hpp"

namespace subalc::cli {

enum Exit : int { kOk = 0, kNegative = 1, kInputError = 2, kBudget = 3, kDisagreement = 4 };

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw PreconditionError("cannot write '" + path + "'");
  f << text;
}

inline ProblemKind kind_arg(const std::string& s) {
  auto k = problem_kind_from_string(s);
  if (!k) throw PreconditionError("unknown problem '" + s + "' (expected csat, tsat, tcsat, osat or ocsat)");
  return *k;
}

struct Args {
  std::string problem;
  std::string input;
  std::string output;
  std::string output_flag;
  std::string witness;
  std::string to;
  std::string atom = "A";
  std::string kind;
  std::string suite;
  std::size_t oracle = 0;
  std::uint64_t budget = kDefaultTableauBudget;
  int vars = 2;
  int clauses = 2;
  std::size_t count = 0;
  std::uint64_t seed = SuiteOptions{}.seed;
};

inline int cmd_classify(const Args& a, std::ostream& out) {
  const auto ops = parse_operator_set(read_file(a.input));
  const auto c = classify(ops, kind_arg(a.problem));
  out << c.line() << "\n";
  for (const auto& n : c.notes) out << "note: " << n << "\n";
  return kOk;
}

inline int cmd_solve(const Args& a, std::ostream& out) {
  const auto inst = parse_instance(read_file(a.input));
  const auto v = decide(inst, a.budget);
  out << (v.satisfiable ? "SAT" : "UNSAT") << "\n";
  out << "elements " << v.stats.elements << ", steps " << v.stats.steps << ", cached cores " << v.stats.cached_cores
      << "\n";
  int code = v.satisfiable ? kOk : kNegative;
  if (a.oracle > 0) {
    const auto model = bounded_model_search(inst, a.oracle, std::uint64_t{1} << 36);
    const bool agree = v.satisfiable ? (model || v.witness->domain_size > a.oracle) : !model;
    if (model) {
      out << "oracle: model of size " << model->domain_size << "\n";
    } else {
      out << "oracle: no model up to size " << a.oracle << "\n";
    }
    out << "oracle " << (agree ? "agrees" : "DISAGREES") << "\n";
    if (!agree) code = kDisagreement;
  }
  if (v.satisfiable && !a.witness.empty()) write_output(a.witness, print_interpretation(*v.witness), out);
  return code;
}

inline int cmd_reduce(const Args& a, std::ostream& out, std::ostream& err) {
  const std::string dest = !a.output_flag.empty() ? a.output_flag : a.output;
  const std::string text = read_file(a.input);
  Reduction r;
  if (a.kind == "qbf2tbox") {
    r = qbf_to_tbox(parse_qdimacs(text));
  } else if (a.kind == "taut2tcsat") {
    const auto phi = parse_qdimacs(text);
    r = taut_to_tcsat(phi.clauses, phi.vars());
  } else {
    const auto inst = parse_instance(text);
    if (a.kind == "embed") {
      if (a.problem.empty()) throw PreconditionError("embed needs --problem TARGET");
      r = embed_chain(inst, kind_arg(a.problem));
    } else if (a.kind == "rebase") {
      if (a.to.empty()) throw PreconditionError("rebase needs --to OPSFILE");
      r = change_base(inst, parse_operator_set(read_file(a.to)));
    } else if (a.kind == "dropconsts") {
      r = eliminate_constants_via_neg(inst);
    } else if (a.kind == "topgadget") {
      r = tcsat_to_tsat_top(inst);
    } else if (a.kind == "neggadget") {
      r = add_negation_gadget(inst, a.atom);
    } else {
      throw PreconditionError("unknown reduction '" + a.kind + "'");
    }
  }
  // The report goes to stdout unless the instance itself does.
  std::ostream& report = (dest.empty() || dest == "-") ? err : out;
  report << "reduced " << r.report.source_kind << " -> " << r.report.target_kind << ": " << r.report.axiom_count
         << " axioms\n";
  report << "fresh:";
  for (const auto& s : r.report.fresh_symbols) report << " " << s;
  report << "\n";
  write_output(dest, print_instance(r.instance), out);
  return kOk;
}

inline int cmd_verify(const Args& a, std::ostream& out) {
  SuiteOptions o;
  o.vars = a.vars;
  o.clauses = a.clauses;
  o.count = a.count;
  o.budget = a.budget;
  o.seed = a.seed;
  if (a.oracle > 0) o.oracle_size = a.oracle;
  const auto r = run_suite(a.suite, o);
  out << r.summary() << "\n";
  for (const auto& d : r.details) out << "  " << d << "\n";
  if (r.counterexample) out << "first counterexample:\n" << *r.counterexample << "\n";
  return r.passed() ? kOk : kNegative;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Satisfiability for ALC fragments over arbitrary Boolean operator sets"};
  app.require_subcommand(1);
  detail::Args a;

  auto* classify_cmd = app.add_subcommand("classify", "Complexity verdict for an operator set");
  classify_cmd->add_option("--problem", a.problem, "csat, tsat, tcsat, osat or ocsat")->required();
  classify_cmd->add_option("ops", a.input, "Operator declarations file")->required();

  auto* solve_cmd = app.add_subcommand("solve", "Decide an instance with the tableau");
  solve_cmd->add_option("instance", a.input, "Instance file")->required();
  solve_cmd->add_option("--witness", a.witness, "Write the model here ('-' for stdout)");
  solve_cmd->add_option("--oracle", a.oracle, "Cross-check with model search up to this size");
  solve_cmd->add_option("--budget", a.budget, "Tableau step budget");

  auto* reduce_cmd = app.add_subcommand("reduce", "Apply a reduction");
  reduce_cmd->add_option("kind", a.kind, "qbf2tbox, taut2tcsat, embed, rebase, dropconsts, topgadget, neggadget")
      ->required();
  reduce_cmd->add_option("input", a.input, "Input file (QDIMACS for qbf2tbox and taut2tcsat)")->required();
  reduce_cmd->add_option("output", a.output, "Output file ('-' or absent for stdout)");
  reduce_cmd->add_option("-o", a.output_flag, "Output file");
  reduce_cmd->add_option("--problem", a.problem, "Target problem for embed");
  reduce_cmd->add_option("--to", a.to, "Target operator file for rebase");
  reduce_cmd->add_option("--atom", a.atom, "Atom to complement for neggadget");

  auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
  verify_cmd->add_option("suite", a.suite, "qbf, taut, interreductions, trivial-models, rebase, clone-table, tiny")
      ->required();
  verify_cmd->add_option("--vars", a.vars, "Variables for qbf and taut");
  verify_cmd->add_option("--clauses", a.clauses, "Clauses for qbf and taut");
  verify_cmd->add_option("--count", a.count, "Instances per reduction or family cap");
  verify_cmd->add_option("--budget", a.budget, "Tableau step budget");
  verify_cmd->add_option("--seed", a.seed, "Random seed");
  verify_cmd->add_option("--oracle", a.oracle, "Model search size for the tiny suite");

  std::vector<const char*> argv{"subalc"};
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (*classify_cmd) return detail::cmd_classify(a, out);
    if (*solve_cmd) return detail::cmd_solve(a, out);
    if (*reduce_cmd) return detail::cmd_reduce(a, out, err);
    if (*verify_cmd) return detail::cmd_verify(a, out);
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kInputError;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace subalc::cli
