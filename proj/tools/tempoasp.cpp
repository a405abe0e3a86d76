#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "tasp/asp.hpp"
#include "tasp/automata.hpp"
#include "tasp/bc.hpp"
#include "tasp/kamp.hpp"
#include "tasp/normalform.hpp"
#include "tasp/qltl.hpp"
#include "tasp/semantics.hpp"
#include "tasp/star.hpp"

namespace fs = std::filesystem;
using namespace tasp;

namespace {

constexpr int kOk = 0;
constexpr int kNo = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string extension(const std::string& s) { return fs::path(s).extension().string(); }

bool is_file(const std::string& s) {
  std::error_code ec;
  return !s.empty() && s.size() < 4096 && fs::is_regular_file(s, ec);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string text_of(const std::string& arg) { return is_file(arg) ? slurp(arg) : arg; }

/// A formula theory or a temporal program, read from a file or inline text.
struct Input {
  std::vector<Formula> theory;
  std::optional<TemporalProgram> program;

  Formula formula() const { return conj(theory); }
};

Input read_input(const std::string& arg) {
  Input in;
  std::string ext = is_file(arg) ? extension(arg) : "";
  if (ext == ".tlp") {
    in.program = parse_program(slurp(arg));
    in.theory = to_theory(*in.program);
  } else if (ext == ".tf") {
    in.theory = parse_theory(slurp(arg));
  } else if (ext.empty() || ext == ".txt") {
    in.theory = parse_theory(text_of(arg));
  } else {
    throw UsageError("unsupported input extension " + ext);
  }
  if (in.theory.empty()) throw UsageError("empty input");
  return in;
}

Alphabet alphabet_arg(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) continue;
    if (!valid_atom_name(item)) throw UsageError("invalid atom name '" + item + "'");
    out.push_back(item);
  }
  return Alphabet(out);
}

Trace trace_arg(const std::string& arg) {
  std::string t = text_of(arg);
  std::size_t p = t.find_first_not_of(" \t\r\n");
  if (p != std::string::npos && t[p] == '{' && t.find('"') != std::string::npos) return trace_from_json(t);
  return parse_trace_shorthand(t);
}

/// Rule program for a theory: the given program, or sigma with fulfillment rules as final rules.
TemporalProgram program_of(const Input& in, std::optional<std::size_t> lambda, bool reduce) {
  if (in.program) return *in.program;
  if (reduce) {
    TemporalProgram p;
    for (const auto& f : in.theory) {
      auto part = past_future_reduce(f);
      p.rules.insert(p.rules.end(), part.rules.begin(), part.rules.end());
    }
    return p;
  }
  return fulfillment_to_final(sigma(in.theory, lambda));
}

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw UsageError("cannot write " + p.string());
  out << content;
}

std::string manifest(const AspModule& m) {
  nlohmann::ordered_json j;
  j["input"] = nlohmann::ordered_json::array();
  for (const auto& a : m.input) j["input"].push_back(a.str());
  j["output"] = nlohmann::ordered_json::array();
  for (const auto& a : m.output) j["output"].push_back(a.str());
  return j.dump(2) + "\n";
}

std::string atom_list(const std::set<GroundAtom>& xs) {
  std::string s;
  for (const auto& a : xs) s += (s.empty() ? "" : " ") + a.str();
  return s;
}

struct Common {
  std::string budget;
  std::string alphabet;
};

Budget budget_of(const Common& c) { return c.budget.empty() ? Budget::from_env() : Budget::parse(c.budget); }

int cmd_eval(const Common& c, const std::string& input, const std::string& trace, const std::string& here,
             const std::string& there, const std::string& httrace, std::size_t k, bool table) {
  Formula f = read_input(input).formula();
  HTTrace m;
  bool total = false;
  if (!httrace.empty()) {
    m = ht_trace_from_json(text_of(httrace));
  } else if (!here.empty() || !there.empty()) {
    if (here.empty() || there.empty()) throw UsageError("--here and --there go together");
    m.h = trace_arg(here);
    m.t = trace_arg(there);
  } else if (!trace.empty()) {
    m.t = trace_arg(trace);
    m.h = m.t;
    total = true;
  } else {
    throw UsageError("eval needs --trace, --here/--there or --httrace");
  }
  if (m.h.length() != m.t.length() || !m.valid()) throw UsageError("here trace must be pointwise included in there");
  if (m.length() == 0) throw UsageError("traces need at least one state");
  if (k >= m.length()) throw UsageError("time point outside the trace");
  (void)c;
  bool sat = total ? ltl_satisfies(m.t, k, f) : tht_satisfies(m, k, f);
  std::cout << (total ? "LTL" : "THT") << " k=" << k << ": " << (sat ? "true" : "false") << "\n";
  if (table) {
    ThreeValued tv(m, f);
    for (const auto& g : subformulas(f)) {
      std::cout << print(g);
      for (std::size_t i = 0; i < m.length(); ++i) std::cout << " " << tv.value(i, g);
      std::cout << "\n";
    }
  }
  return sat ? kOk : kNo;
}

std::vector<Trace> models_at(const Input& in, const Alphabet& a, std::size_t lambda, const std::string& method,
                             const Budget& b) {
  if (method == "oracle") return ts_models({in.theory, a, lambda}, b);
  if (method == "sm") return ts_models_via_sm(in.formula(), a, lambda, b);
  if (method == "kamp") return mht_equilibrium_models(in.formula(), a, lambda, b);
  if (method == "asp") {
    std::set<Trace> s;
    for (const auto& t : ts_models_asp(program_of(in, lambda, false), a, lambda, b)) s.insert(t);
    return {s.begin(), s.end()};
  }
  if (method == "automaton") {
    Nfa n = build_telf_automaton(in.formula(), a, b);
    std::vector<Trace> out;
    for (const auto& t : nfa_language(n, lambda))
      if (t.length() == lambda) out.push_back(t);
    return out;
  }
  throw UsageError("unknown method " + method);
}

int cmd_models(const Common& c, const std::string& input, std::size_t lambda, std::size_t lmax,
               const std::string& method) {
  Input in = read_input(input);
  Budget b = budget_of(c);
  Alphabet a = Alphabet(atoms_of(in.theory)).merged(alphabet_arg(c.alphabet));
  if ((lambda == 0) == (lmax == 0)) throw UsageError("give exactly one of --lambda and --lmax");
  std::size_t lo = lambda ? lambda : 1, hi = lambda ? lambda : lmax;
  std::size_t count = 0;
  for (std::size_t l = lo; l <= hi; ++l)
    for (const auto& t : models_at(in, a, l, method, b)) {
      std::cout << trace_to_shorthand(t) << "\n";
      ++count;
    }
  if (count == 0) std::cout << "no models\n";
  return count ? kOk : kNo;
}

int cmd_equiv(const Common& c, const std::string& f1, const std::string& f2, bool strong, bool initial,
              std::size_t lmax, const std::string& counter_file) {
  if (strong && initial) throw UsageError("--strong and --initial exclude each other");
  Formula f = read_input(f1).formula(), g = read_input(f2).formula();
  Budget b = budget_of(c);
  Alphabet a = alphabet_arg(c.alphabet);
  EquivResult r = strong ? check_se_bounded(f, g, a, lmax, b)
                         : tht_equiv_bounded(f, g, a, lmax, initial ? EquivMode::Initial : EquivMode::Global, b);
  if (r.equivalent) {
    std::cout << (strong ? "strongly equivalent" : "equivalent") << " up to length " << lmax << "\n";
    return kOk;
  }
  std::cout << "not equivalent\n";
  if (r.counter) {
    std::cout << "countermodel k=" << r.counter->k << " " << ht_trace_to_shorthand(r.counter->m) << "\n";
    if (!counter_file.empty()) write_file(counter_file, ht_trace_to_json(r.counter->m) + "\n");
  }
  return kNo;
}

int cmd_translate(const Common& c, const std::string& input, const std::string& to, std::size_t lambda,
                  const std::string& format, const std::string& out_dir, bool reduce) {
  Input in = read_input(input);
  Budget b = budget_of(c);
  Alphabet a = Alphabet(atoms_of(in.theory)).merged(alphabet_arg(c.alphabet));
  std::optional<std::size_t> lam = lambda ? std::optional<std::size_t>(lambda) : std::nullopt;
  if (format != "json" && format != "dot") throw UsageError("--format is json or dot");
  if (to == "ltl-star") {
    for (const auto& f : in.theory) std::cout << print(star(f)) << "\n";
  } else if (to == "sm") {
    std::cout << print(build_sm(in.formula(), a)) << "\n";
  } else if (to == "kamp") {
    for (const auto& f : in.theory) std::cout << print(kamp_translate(f, 0)) << "\n";
  } else if (to == "normal") {
    if (in.program) throw UsageError("input is already a temporal program");
    std::cout << print(reduce ? program_of(in, lam, true) : sigma(in.theory, lam));
  } else if (to == "asp") {
    if (!lambda) throw UsageError("translate --to asp needs --lambda");
    std::cout << emit_ground_text(tau_bounded(program_of(in, lam, reduce), lambda));
  } else if (to == "modules") {
    if (!lambda) throw UsageError("translate --to modules needs --lambda");
    TemporalProgram p = program_of(in, lam, reduce);
    if (!out_dir.empty()) fs::create_directories(out_dir);
    for (std::size_t k = 0; k < lambda; ++k) {
      AspModule m = build_module(p, static_cast<int>(k));
      std::string text = emit_ground_text(m.program);
      std::cout << "% step " << k << "\n% input: " << atom_list(m.input) << "\n% output: " << atom_list(m.output)
                << "\n"
                << text;
      if (!out_dir.empty()) {
        write_file(fs::path(out_dir) / ("step_" + std::to_string(k) + ".lp"), text);
        write_file(fs::path(out_dir) / ("step_" + std::to_string(k) + ".json"), manifest(m));
      }
    }
  } else if (to == "afw") {
    Afw x = build_afw(in.formula(), a);
    std::cout << (format == "dot" ? afw_to_dot(x) : afw_to_json(x));
  } else if (to == "nfa" || to == "telf-nfa") {
    Nfa n = to == "nfa" ? ltl_to_nfa(in.formula(), a, b) : build_telf_automaton(in.formula(), a, b);
    std::cout << (format == "dot" ? nfa_to_dot(n) : nfa_to_json(n));
  } else {
    throw UsageError("unknown translation target " + to);
  }
  return kOk;
}

int cmd_bc(const Common& c, const std::string& file, const std::string& emit, int l, std::size_t lambda) {
  ActionDescription d = parse_bc(text_of(file));
  Budget b = budget_of(c);
  if (emit == "program") {
    std::cout << print(translate_bc(d));
  } else if (emit == "ground") {
    std::cout << emit_ground_text(ground_nl(d, l));
  } else if (emit == "transitions") {
    std::cout << print(transitions(d, b));
  } else if (emit == "paths" || emit == "models") {
    if (!lambda) throw UsageError("bc --emit " + emit + " needs --lambda");
    std::size_t count = 0;
    if (emit == "paths") {
      for (const auto& p : paths(transitions(d, b), lambda)) {
        std::cout << trace_to_shorthand(Trace{p}) << "\n";
        ++count;
      }
    } else {
      for (const auto& t : ts_models({to_theory(translate_bc(d)), bc_alphabet(d), lambda}, b)) {
        std::cout << trace_to_shorthand(t) << "\n";
        ++count;
      }
    }
    if (count == 0) std::cout << "no " << emit << "\n";
    return count ? kOk : kNo;
  } else {
    throw UsageError("unknown bc output " + emit);
  }
  return kOk;
}

int cmd_solve(const Common& c, const std::string& file) {
  GroundProgram g = parse_ground_text(text_of(file));
  auto models = stable_models(g, budget_of(c));
  for (const auto& m : models) std::cout << atom_list(m) << "\n";
  if (models.empty()) std::cout << "no stable models\n";
  return models.empty() ? kNo : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Temporal equilibrium logic toolkit over finite traces"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--budget", common.budget, "Enumeration budget, overrides TEMPOASP_BUDGET");
  app.add_option("--alphabet", common.alphabet, "Comma-separated atoms added to the alphabet");

  std::string input, input2, trace, here, there, httrace, method = "oracle", to, format = "json", out_dir,
                                                           counter_file, emit = "transitions";
  std::size_t k = 0, lambda = 0, lmax = 0;
  int level = 1;
  bool table = false, strong = false, initial = false, reduce = false;

  auto* eval = app.add_subcommand("eval", "Satisfaction on a trace or HT-trace, with the three-valued table");
  eval->add_option("input", input, "Formula or .tf file")->required();
  eval->add_option("--trace", trace, "Total trace as shorthand or .trace file");
  eval->add_option("--here", here, "Here trace as shorthand");
  eval->add_option("--there", there, "There trace as shorthand");
  eval->add_option("--httrace", httrace, "HT-trace as .httrace file or JSON");
  eval->add_option("-k,--time", k, "Time point")->capture_default_str();
  eval->add_flag("--table", table, "Print three-valued values of all subformulas");

  auto* models = app.add_subcommand("models", "Temporal stable models of a theory or program");
  std::string formula_opt;
  models->add_option("input", input, "Formula, .tf or .tlp file");
  models->add_option("--formula", formula_opt, "Inline formula");
  models->add_option("--lambda", lambda, "Trace length");
  models->add_option("--lmax", lmax, "All lengths 1..lmax");
  models->add_option("--method", method, "oracle, sm, kamp, asp or automaton")->capture_default_str();

  auto* equiv = app.add_subcommand("equiv", "Bounded equivalence check");
  equiv->add_option("first", input, "Formula or .tf file")->required();
  equiv->add_option("second", input2, "Formula or .tf file")->required();
  equiv->add_flag("--strong", strong, "Strong equivalence through the star translation");
  equiv->add_flag("--initial", initial, "Compare at the initial state only");
  std::size_t equiv_lmax = 3;
  equiv->add_option("--lmax", equiv_lmax, "Largest trace length")->capture_default_str();
  equiv->add_option("--countermodel", counter_file, "Write the countermodel as an .httrace file");

  auto* translate = app.add_subcommand("translate", "Translations between representations");
  translate->add_option("input", input, "Formula, .tf or .tlp file")->required();
  translate->add_option("--to", to, "ltl-star, sm, kamp, normal, asp, modules, afw, nfa or telf-nfa")->required();
  translate->add_option("--lambda", lambda, "Trace length");
  translate->add_option("--format", format, "json or dot for automata")->capture_default_str();
  translate->add_option("--out-dir", out_dir, "Directory for step_k.lp module files");
  translate->add_flag("--reduce", reduce, "Use the past-future reduction instead of labelling");

  auto* bc = app.add_subcommand("bc", "Action descriptions");
  bc->add_option("input", input, ".bc file")->required();
  bc->add_option("--emit", emit, "program, ground, transitions, paths or models")->capture_default_str();
  bc->add_option("--level", level, "Horizon l of N_l")->capture_default_str();
  bc->add_option("--lambda", lambda, "Path or trace length");

  auto* solve = app.add_subcommand("solve", "Stable models of a ground program");
  solve->add_option("input", input, ".lp file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*eval) return cmd_eval(common, input, trace, here, there, httrace, k, table);
    if (*models) {
      if (!formula_opt.empty() == !input.empty()) throw UsageError("give exactly one of input and --formula");
      return cmd_models(common, formula_opt.empty() ? input : formula_opt, lambda, lmax, method);
    }
    if (*equiv) return cmd_equiv(common, input, input2, strong, initial, equiv_lmax, counter_file);
    if (*translate) return cmd_translate(common, input, to, lambda, format, out_dir, reduce);
    if (*bc) return cmd_bc(common, input, emit, level, lambda);
    if (*solve) return cmd_solve(common, input);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
