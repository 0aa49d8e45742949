#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <utility>

#include "montrans/error.hpp"
#include "montrans/learner.hpp"
#include "montrans/minimize.hpp"
#include "montrans/oracle.hpp"
#include "montrans/serialize.hpp"
#include "montrans/symbols.hpp"

namespace montrans::cli {
namespace {

struct RunConfig {
  std::string machine;
  std::string word;
  std::string left;
  std::string right;
  std::string output;
  std::string stats;
  std::string dot;
  bool emit_stages = false;
  std::size_t max_len = 8;
  std::size_t max_q = 1000;
  std::size_t max_iterations = 10000;
  std::size_t demo_cap = 25;
};

using Outputs = std::vector<std::pair<std::string, std::string>>;

void write_outputs(const Outputs& files) {
  for (const auto& [path, text] : files) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + path + "'");
    out << text;
    if (!out.flush()) throw Error("cannot write '" + path + "'");
  }
}

Transducer load(const std::string& path, std::ostream& err) {
  std::vector<std::string> warnings;
  Transducer t = load_transducer(path, &warnings);
  for (const auto& w : warnings) err << "warning: " << path << ": " << w << "\n";
  return t;
}

std::string stem_of(const std::string& path) {
  const std::filesystem::path p(path);
  if (p.extension() == ".json") return (p.parent_path() / p.stem()).string();
  return path;
}

Document stats_document(const LearnStats& s) {
  Document doc;
  doc["format_version"] = kFormatVersion;
  doc["membership_queries"] = s.membership_queries;
  doc["equivalence_queries"] = s.equivalence_queries;
  doc["q_updates"] = s.q_updates;
  doc["t_updates"] = s.t_updates;
  doc["loop_iterations"] = s.loop_iterations;
  return doc;
}

// α·α·α·β -> α^3·β, for the demo report.
std::string compact(const Monoid& m, const PartialValue& x) {
  if (!x || (m.kind() != MonoidKind::free_monoid && m.kind() != MonoidKind::trace)) return m.render(x);
  const auto& seq = x->sequence();
  if (seq.empty()) return std::string(kUnitText);
  std::string out;
  for (std::size_t i = 0; i < seq.size();) {
    std::size_t j = i;
    while (j < seq.size() && seq[j] == seq[i]) ++j;
    if (!out.empty()) out += kSymbolSeparator;
    out += m.spec().generators[seq[i]];
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

std::string describe(const Transducer& t, const std::string& indent) {
  const Monoid& m = t.monoid();
  std::ostringstream out;
  out << indent << "states:";
  for (const auto& s : t.states()) out << ' ' << s;
  out << "\n";
  if (t.initial())
    out << indent << "initial: " << m.render(t.initial()->value) << " -> " << t.states()[t.initial()->state] << "\n";
  else
    out << indent << "initial: " << kBottomText << "\n";
  for (StateId s = 0; s < t.state_count(); ++s)
    for (Letter a = 0; a < t.letter_count(); ++a)
      if (const auto& step = t.transition(s, a))
        out << indent << t.states()[s] << " --" << t.alphabet()[a] << " / " << m.render(step->output) << "--> "
            << t.states()[step->target] << "\n";
  for (StateId s = 0; s < t.state_count(); ++s)
    if (t.termination(s)) out << indent << "t(" << t.states()[s] << ") = " << m.render(t.termination(s)) << "\n";
  return out.str();
}

int cmd_eval(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Transducer t = load(cfg.machine, err);
  const PartialValue value = eval(t, t.parse_word(cfg.word));
  out << t.monoid().render(value) << "\n";
  return value ? kOk : kBottom;
}

int cmd_minimize(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.emit_stages && cfg.output.empty()) throw Error("--emit-stages needs -o");
  const Transducer t = load(cfg.machine, err);
  const StagedMinimization staged = minimize(t);

  Outputs files;
  const std::string minimal = dump(to_json(staged.minimal));
  if (cfg.output.empty())
    out << minimal;
  else
    files.emplace_back(cfg.output, minimal);
  if (cfg.emit_stages) {
    const std::string stem = stem_of(cfg.output);
    files.emplace_back(stem + ".reach.json", dump(to_json(staged.reach)));
    files.emplace_back(stem + ".total.json", dump(to_json(staged.total)));
    files.emplace_back(stem + ".prefix.json", dump(to_json(staged.prefix)));
    Document report;
    report["format_version"] = kFormatVersion;
    Document list = Document::array();
    for (const auto& w : staged.witnesses) {
      Document entry;
      entry["state"] = w.state;
      entry["representative"] = w.representative;
      entry["chi"] = element_to_json(t.monoid(), w.chi);
      list.push_back(std::move(entry));
    }
    report["witnesses"] = std::move(list);
    files.emplace_back(stem + ".witnesses.json", dump(report));
  }
  if (!cfg.dot.empty()) files.emplace_back(cfg.dot, to_dot(staged.minimal));
  write_outputs(files);
  return kOk;
}

int cmd_learn(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.max_q == 0 || cfg.max_iterations == 0) throw Error("caps must be positive");
  const Transducer target = load(cfg.machine, err);
  Learner learner(target.monoid(), target.alphabet(), membership_oracle(target),
                  LearnLimits{cfg.max_q, cfg.max_iterations});
  std::optional<Transducer> learned;
  try {
    learned = learner.run(equivalence_oracle(target));
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    const std::string stats = dump(stats_document(e.stats()));
    if (cfg.stats.empty())
      err << stats;
    else
      write_outputs({{cfg.stats, stats}});
    return kBudget;
  }

  Outputs files;
  const std::string machine = dump(to_json(*learned));
  if (cfg.output.empty())
    out << machine;
  else
    files.emplace_back(cfg.output, machine);
  if (!cfg.stats.empty()) files.emplace_back(cfg.stats, dump(stats_document(learner.stats())));
  write_outputs(files);
  return kOk;
}

int cmd_equiv(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Transducer left = load(cfg.left, err);
  const Transducer right = load(cfg.right, err);
  const EquivalenceVerdict verdict = check_equivalence(left, right, cfg.max_len);
  if (verdict.equivalent) {
    out << "equivalent\n";
    return kOk;
  }
  out << left.render_word(verdict.word) << "\n";
  out << "left: " << left.monoid().render(verdict.reference_value) << "\n";
  out << "right: " << left.monoid().render(verdict.hypothesis_value) << "\n";
  return kDifferent;
}

// Prints the learner's steps while it runs against the adversarial oracle.
class DemoObserver : public LearnObserver {
 public:
  explicit DemoObserver(std::ostream& out) : out_(out) {}

  void on_defect(const Defect& d, const ObservationTable& table) override {
    if (table.suffixes().size() == 2) print_configuration(out_, table);
    out_ << "    defect " << to_string(d.kind) << "(" << render_word(table.alphabet(), d.word) << ")\n";
  }
  void on_hypothesis(const Transducer& h, const ObservationTable&) override {
    out_ << "    hypothesis with " << h.state_count() << " state(s)\n";
  }
  void on_verdict(const EquivalenceVerdict& v, const ObservationTable& table) override {
    if (v.equivalent)
      out_ << "    equivalence query: accepted\n";
    else
      out_ << "    equivalence query: counterexample " << render_word(table.alphabet(), v.word) << "\n";
  }

  static void print_configuration(std::ostream& out, const ObservationTable& table) {
    const Monoid& m = table.monoid();
    const std::size_t n = table.prefixes().size() - 1;
    out << "  C_" << n << ": |Q| = " << n + 1 << ", T = {";
    for (std::size_t t = 0; t < table.suffixes().size(); ++t)
      out << (t ? ", " : "") << render_word(table.alphabet(), table.suffixes()[t]);
    out << "}, Λ(a^" << n << ") = " << compact(m, table.lambda(n, 0)) << ", R(a^" << n
        << ", e) = " << compact(m, table.residual(n, 0).at(0)) << "\n";
  }

 private:
  std::ostream& out_;
};

int cmd_demo_nontermination(const RunConfig& cfg, std::ostream& out) {
  if (cfg.demo_cap < 2) throw Error("--cap must be at least 2");
  const std::vector<std::string> alphabet{"a"};

  const Monoid free_monoid(adversarial_monoid_spec(false));
  out << "free monoid over α, β, γ; membership answers a^n -> α^n·β^n·γ; cap |Q| <= " << cfg.demo_cap << "\n";
  Learner stuck(free_monoid, alphabet, adversarial_oracle(free_monoid), LearnLimits{cfg.demo_cap, 10000});
  DemoObserver observer(out);
  const EquivalenceOracle never = [](const Transducer&) -> EquivalenceVerdict {
    throw InternalInconsistency("the adversarial run reached an equivalence query");
  };
  try {
    stuck.run(never, &observer);
    throw InternalInconsistency("the adversarial run terminated");
  } catch (const BudgetExceeded& e) {
    const ObservationTable& table = stuck.table();
    DemoObserver::print_configuration(out, table);
    bool powers = true;
    for (std::size_t k = 0; k < table.prefixes().size(); ++k)
      powers = powers && table.lambda(k, 0) == free_monoid.word(Element::Sequence(k, 0));
    out << "  stopped: |Q| = " << table.prefixes().size() << " > " << cfg.demo_cap
        << ", equivalence queries = " << e.stats().equivalence_queries
        << ", loop iterations = " << e.stats().loop_iterations << "\n";
    out << "  Λ(a^k) = α^k for every k <= " << table.prefixes().size() - 1 << ": " << (powers ? "yes" : "no")
        << "\n";
  }

  const Monoid trace_monoid(adversarial_monoid_spec(true));
  out << "trace monoid over α, β, γ with α·β = β·α\n";
  Transducer reference(trace_monoid, alphabet, {"s"});
  reference.set_initial(trace_monoid.unit(), 0);
  reference.set_transition(0, 0, trace_monoid.parse("α·β"), 0);
  reference.set_termination(0, trace_monoid.parse("γ"));
  Learner learner(trace_monoid, alphabet, adversarial_oracle(trace_monoid));
  DemoObserver trace_observer(out);
  const Transducer learned = learner.run(equivalence_oracle(reference), &trace_observer);
  const LearnStats stats = learner.stats();
  out << "  learned " << learned.state_count() << " state(s) with " << stats.equivalence_queries
      << " equivalence quer" << (stats.equivalence_queries == 1 ? "y" : "ies") << ":\n";
  out << describe(learned, "    ");
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Subsequential transducers with outputs in monoids", "montrans"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a machine on a word");
  eval_cmd->add_option("--machine", cfg.machine, "Machine file")->required();
  eval_cmd->add_option("word", cfg.word, "Input word (\"e\" or empty for the empty word)");

  auto* minimize_cmd = app.add_subcommand("minimize", "Minimize a machine");
  minimize_cmd->add_option("--machine", cfg.machine, "Machine file")->required();
  minimize_cmd->add_option("-o,--output", cfg.output, "Output file (default: standard output)");
  minimize_cmd->add_flag("--emit-stages", cfg.emit_stages, "Also write the reach, total and prefix stages and the merge witnesses");
  minimize_cmd->add_option("--dot", cfg.dot, "Write the minimal machine as a DOT graph");

  auto* learn_cmd = app.add_subcommand("learn", "Learn the minimal machine of a target");
  learn_cmd->add_option("--target", cfg.machine, "Target machine file")->required();
  learn_cmd->add_option("-o,--output", cfg.output, "Output file (default: standard output)");
  learn_cmd->add_option("--stats", cfg.stats, "Write query statistics");
  learn_cmd->add_option("--cap", cfg.max_q, "Maximum size of the prefix set")->check(CLI::PositiveNumber);
  learn_cmd->add_option("--max-iterations", cfg.max_iterations, "Maximum loop iterations")->check(CLI::PositiveNumber);

  auto* equiv_cmd = app.add_subcommand("equiv", "Decide equivalence of two machines");
  equiv_cmd->add_option("--left", cfg.left, "Left machine file")->required();
  equiv_cmd->add_option("--right", cfg.right, "Right machine file")->required();
  equiv_cmd->add_option("--max-len", cfg.max_len, "Minimum length explored by the counterexample search");

  auto* demo_cmd = app.add_subcommand("demo", "Scripted demonstrations");
  demo_cmd->require_subcommand(1);
  auto* nonterm_cmd = demo_cmd->add_subcommand("nontermination", "Learner against an adversarial oracle");
  nonterm_cmd->add_option("--cap", cfg.demo_cap, "Maximum size of the prefix set");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }

  try {
    if (eval_cmd->parsed()) return cmd_eval(cfg, out, err);
    if (minimize_cmd->parsed()) return cmd_minimize(cfg, out, err);
    if (learn_cmd->parsed()) return cmd_learn(cfg, out, err);
    if (equiv_cmd->parsed()) return cmd_equiv(cfg, out, err);
    if (nonterm_cmd->parsed()) return cmd_demo_nontermination(cfg, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}

}  // namespace montrans::cli
