#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "prisyn/abstraction.hpp"
#include "prisyn/ag.hpp"
#include "prisyn/game.hpp"
#include "prisyn/generators.hpp"
#include "prisyn/report.hpp"

using namespace prisyn;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitError = 2;

struct Flags {
  std::string model;
  std::string engine = "auto";
  std::string mode = "both";
  std::string ordering = "force";
  std::size_t repush_depth = 0;
  std::vector<std::string> keep;
  bool stats = false;
  bool json = false;
  std::string emit_cnf;
  std::size_t budget = kDefaultStateBudget;
  std::size_t verify_budget = 200'000;
  // agsynth
  std::vector<std::string> split;
  std::string spec;
  std::size_t max_conjectures = 50;
  // generate
  std::string family;
  std::size_t size = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

System load_model(const std::string& arg) {
  if (std::filesystem::is_regular_file(arg)) return parse_system(read_file(arg));
  if (auto text = builtin_text(arg)) return parse_system(*text);
  throw ModelError("no model file or builtin named '" + arg + "'");
}

std::set<std::size_t> component_indices(const System& s, const std::vector<std::string>& names) {
  std::set<std::size_t> out;
  for (const auto& n : names) {
    auto i = s.find_component(n);
    if (!i) throw ModelError("unknown component " + n);
    out.insert(*i);
  }
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void emit(const RunReport& r, const Flags& f) { std::cout << (f.json ? r.to_json() : r.to_text()); }

std::vector<std::string> explicit_trace(const ExplicitEngine& e, const std::vector<InteractionId>& word,
                                        const std::vector<Configuration>& after) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < word.size(); ++i)
    out.push_back(e.system().alphabet()[word[i]] + "  ->  " + e.describe(after[i]));
  return out;
}

// Explicit re-check of a synthesized system. Empty when it does not fit.
std::optional<bool> post_verify(const System& s, SafetyMode mode, std::size_t budget, RunReport& r) {
  try {
    ExplicitEngine e(s, EngineOptions{budget, std::nullopt});
    bool safe = e.verdict(mode).safe();
    r.stat("post-verification", std::string(safe ? "safe" : "VIOLATED"));
    return safe;
  } catch (const BudgetExceeded&) {
    r.stat("post-verification", std::string("skipped (over ") + std::to_string(budget) + " configurations)");
    return std::nullopt;
  }
}

int cmd_check(const Flags& f) {
  auto t0 = std::chrono::steady_clock::now();
  System s = load_model(f.model);
  const SafetyMode mode = parse_mode(f.mode);
  RunReport r;
  r.command = "check";
  ExplicitEngine engine(s, EngineOptions{f.budget, std::nullopt});
  bool safe = true;
  if (f.engine == "symbolic") {
    EncodedSystem es(s, EncodeOptions{parse_ordering(f.ordering)});
    auto v = symbolic_verdict(es, mode);
    safe = v.safe;
    r.outcome = safe ? "safe" : (v.risk ? "unsafe (risk)" : "unsafe (deadlock)");
    r.stat("engine", std::string("symbolic"));
    r.stat("variables", es.vars().size());
    r.stat("reach iterations", v.reach_iterations);
    if (!safe) {
      r.trace = explicit_trace(engine, v.word, replay(es, v.word));
    }
    if (f.stats) r.notes.push_back("encoding:\n" + es.stats());
  } else {
    auto v = engine.verdict(mode);
    safe = v.safe();
    r.outcome = safe ? "safe" : (v.kind == Verdict::Kind::Risk ? "unsafe (risk)" : "unsafe (deadlock)");
    r.stat("engine", std::string("explicit"));
    r.stat("states", engine.reach().states.size());
    for (const auto& step : v.trace)
      r.trace.push_back(s.alphabet()[step.label] + "  ->  " + engine.describe(step.after));
  }
  r.stat("mode", to_string(mode));
  r.stat("wall time (s)", seconds_since(t0));
  emit(r, f);
  return safe ? kExitOk : kExitNegative;
}

int synth_abstract(const Flags& f, const System& s, RunReport& r, std::chrono::steady_clock::time_point t0) {
  auto a = abstract(s, component_indices(s, f.keep));
  const Ordering ordering = parse_ordering(f.ordering);
  auto res = sharp_deadlock_free_synthesize(a, f.repush_depth, ordering);
  r.stat("kept components", f.keep.size());
  r.stat("abstracted interactions", a.abstracted.size());
  std::string elim;
  for (const auto& c : a.eliminated) elim += (elim.empty() ? "" : ",") + c;
  r.stat("eliminated components", elim.empty() ? std::string("none") : elim);
  r.stat("variables", res.stats.variables);
  r.stat("attractor iterations", res.stats.attractor_iterations);
  r.stat("cubes", res.stats.cubes);
  r.stat("sat variables", res.stats.sat_vars);
  r.stat("sat clauses", res.stats.sat_clauses);
  if (!a.dropped.empty()) r.notes.push_back(std::to_string(a.dropped.size()) + " existing priorities have no abstract image and were dropped");
  if (f.stats) r.notes.push_back("encoding:\n" + EncodedSystem(a.system, sharp_encode_options(ordering)).stats());
  if (!f.emit_cnf.empty() && res.cnf) std::ofstream(f.emit_cnf) << to_dimacs(*res.cnf);
  if (!res.success()) {
    r.outcome = "failure";
    r.notes.push_back(res.reason);
    r.stat("wall time (s)", seconds_since(t0));
    emit(r, f);
    return kExitNegative;
  }
  for (const auto& p : res.added) r.priorities.push_back(display(p) + "  [abstract]");
  auto concrete = concretize_priorities(res.added, a.abstracted, s.priorities());
  PrioritySet all = s.priorities();
  all.insert(concrete.begin(), concrete.end());
  System out = s.with_priorities(all);
  r.stat("concrete priorities", concrete.size());
  r.stat("wall time (s)", seconds_since(t0));
  auto ok = post_verify(out, SafetyMode::Deadlock, std::min(f.budget, f.verify_budget), r);
  r.outcome = ok && !*ok ? "failure" : "success";
  r.model = print_system(out);
  emit(r, f);
  return ok && !*ok ? kExitNegative : kExitOk;
}

int cmd_synth(const Flags& f, bool mode_given) {
  auto t0 = std::chrono::steady_clock::now();
  System s = load_model(f.model);
  RunReport r;
  r.command = "synth";
  if (!f.keep.empty()) {
    if (mode_given && parse_mode(f.mode) != SafetyMode::Deadlock)
      throw ModelError("--keep synthesizes against deadlock only; use --mode deadlock or omit --mode");
    r.stat("mode", std::string("deadlock (abstract)"));
    return synth_abstract(f, s, r, t0);
  }
  SynthOptions o;
  o.mode = parse_mode(f.mode);
  o.repush_depth = f.repush_depth;
  o.encode.ordering = parse_ordering(f.ordering);
  auto res = synthesize(s, o);
  r.stat("mode", to_string(o.mode));
  r.stat("variables", res.stats.variables);
  r.stat("reach iterations", res.stats.reach_iterations);
  r.stat("attractor iterations", res.stats.attractor_iterations);
  r.stat("cubes", res.stats.cubes);
  r.stat("sat variables", res.stats.sat_vars);
  r.stat("sat clauses", res.stats.sat_clauses);
  r.stat("rounds", res.stats.rounds);
  if (f.stats) r.notes.push_back("encoding:\n" + EncodedSystem(s, o.encode).stats());
  if (!f.emit_cnf.empty() && res.cnf) std::ofstream(f.emit_cnf) << to_dimacs(*res.cnf);
  if (!res.success()) {
    r.outcome = "failure";
    r.notes.push_back(res.reason);
    r.stat("wall time (s)", seconds_since(t0));
    emit(r, f);
    return kExitNegative;
  }
  std::set<Priority> repushed(res.repushed.begin(), res.repushed.end());
  for (const auto& p : res.added) r.priorities.push_back(display(p) + (repushed.count(p) ? "  [repushed]" : ""));
  PrioritySet all = s.priorities();
  all.insert(res.added.begin(), res.added.end());
  System out = s.with_priorities(all);
  r.stat("wall time (s)", seconds_since(t0));
  std::optional<bool> ok;
  if (f.engine == "symbolic") {
    bool safe = symbolic_verdict(EncodedSystem(out, o.encode), o.mode).safe;
    r.stat("post-verification", std::string(safe ? "safe (symbolic)" : "VIOLATED (symbolic)"));
    ok = safe;
  } else {
    ok = post_verify(out, o.mode, std::min(f.budget, f.verify_budget), r);
  }
  r.outcome = ok && !*ok ? "failure" : "success";
  r.model = print_system(out);
  emit(r, f);
  return ok && !*ok ? kExitNegative : kExitOk;
}

EngineChoice engine_choice(const std::string& e) {
  if (e == "explicit") return EngineChoice::Explicit;
  if (e == "symbolic") return EngineChoice::Symbolic;
  return EngineChoice::Auto;
}

int cmd_agsynth(const Flags& f) {
  auto t0 = std::chrono::steady_clock::now();
  if (parse_mode(f.mode) == SafetyMode::Deadlock)
    throw ModelError("the assume-guarantee rule is unsound for deadlock-freedom; agsynth supports risk specifications only");
  System s = load_model(f.model);
  Dfa risk = parse_dfa(read_file(f.spec));
  auto problem = make_ag_problem(s, component_indices(s, f.split), risk);
  AgOptions o;
  o.max_conjectures = f.max_conjectures;
  o.engine = engine_choice(f.engine);
  o.ordering = parse_ordering(f.ordering);
  auto res = ag_synthesize(problem, o);
  RunReport r;
  r.command = "agsynth";
  r.outcome = to_string(res.outcome);
  for (const auto& p : res.p1) r.priorities.push_back(display(p) + "  [P1]");
  for (const auto& p : res.p2) r.priorities.push_back(display(p) + "  [P2]");
  std::string sizes;
  for (auto k : res.conjecture_sizes) sizes += (sizes.empty() ? "" : ",") + std::to_string(k);
  r.stat("conjecture sizes", sizes);
  r.stat("membership queries", res.membership_queries);
  r.stat("shared interactions", problem.split.shared.size());
  r.stat("wall time (s)", seconds_since(t0));
  if (!res.reason.empty()) r.notes.push_back(res.reason);
  if (!s.risks().empty()) r.notes.push_back("risk configurations in the model are ignored; the automaton is the specification");
  if (res.outcome == AgResult::Outcome::Success) {
    PrioritySet all = s.priorities();
    all.insert(res.p1.begin(), res.p1.end());
    all.insert(res.p2.begin(), res.p2.end());
    r.model = print_system(s.with_priorities(all));
  }
  emit(r, f);
  return res.ok() ? kExitOk : kExitNegative;
}

int cmd_generate(const Flags& f) {
  std::string name = f.family;
  if (name == "philosophers") {
    if (f.size < 2) throw ModelError("philosophers needs a size of at least 2");
    name = "phil-" + std::to_string(f.size);
  } else if (name == "dpu-like") {
    name = "dpu";
  }
  auto text = builtin_text(name);
  if (!text) {
    std::string known;
    for (const auto& n : builtin_names()) known += " " + n;
    throw ModelError("unknown family '" + f.family + "'; known:" + known + " philosophers");
  }
  std::cout << *text;
  return kExitOk;
}

void add_shared(CLI::App* c, Flags& f) {
  c->add_option("--engine", f.engine, "explicit|symbolic")->check(CLI::IsMember({"auto", "explicit", "symbolic"}));
  c->add_option("--mode", f.mode, "deadlock|risk|both")->check(CLI::IsMember({"deadlock", "risk", "both"}));
  c->add_option("--ordering", f.ordering, "decl|force")->check(CLI::IsMember({"decl", "force"}));
  c->add_option("--repush-depth", f.repush_depth, "priority repushing rounds");
  c->add_option("--keep", f.keep, "kept components for alphabet abstraction")->delimiter(',');
  c->add_flag("--stats", f.stats, "variable order and node counts");
  c->add_flag("--json", f.json, "machine-readable report");
  c->add_option("--emit-cnf", f.emit_cnf, "write the last CNF in DIMACS form");
  c->add_option("--budget", f.budget, "explicit state budget");
  c->add_option("--verify-budget", f.verify_budget, "state budget of the explicit post-verification");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"priority synthesis for component systems"};
  app.require_subcommand(1);
  Flags f;

  auto* check = app.add_subcommand("check", "verify deadlock or risk freedom");
  check->add_option("model", f.model, "model file or builtin name")->required();
  add_shared(check, f);

  auto* synth = app.add_subcommand("synth", "synthesize priorities");
  synth->add_option("model", f.model, "model file or builtin name")->required();
  add_shared(synth, f);

  auto* ag = app.add_subcommand("agsynth", "assume-guarantee synthesis against a risk automaton");
  ag->add_option("model", f.model, "model file or builtin name")->required();
  add_shared(ag, f);
  ag->add_option("--split", f.split, "components of the first side")->delimiter(',')->required();
  ag->add_option("--spec", f.spec, "risk automaton file")->required();
  ag->add_option("--max-conjectures", f.max_conjectures, "L* conjecture cap");

  auto* gen = app.add_subcommand("generate", "print a builtin model");
  gen->add_option("family", f.family, "philosophers, phil-N, dpu, dpu-like, fig2, fig3, fig4, fig4-sub, fig6")->required();
  gen->add_option("size", f.size, "size for philosophers");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (*check) return cmd_check(f);
    if (*synth) return cmd_synth(f, synth->get_option("--mode")->count() > 0);
    if (*ag) return cmd_agsynth(f);
    return cmd_generate(f);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return kExitError;
}
