// One PASS/FAIL line per acceptance criterion. Exit status is non-zero when any criterion fails.

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "cli_runner.hpp"
#include "oracle.hpp"
#include "properties.hpp"
#include "tasp/asp.hpp"
#include "tasp/automata.hpp"
#include "tasp/normalform.hpp"
#include "tasp/semantics.hpp"
#include "tasp/star.hpp"

using namespace tasp;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

Trace tr(const std::string& s) { return parse_trace_shorthand(s); }

Trace repeat(const std::string& state, std::size_t n) {
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s += (i ? "." : "") + state;
  return tr(s);
}

Trace concat(const Trace& a, const Trace& b) {
  Trace t = a;
  t.states.insert(t.states.end(), b.states.begin(), b.states.end());
  return t;
}

std::vector<Trace> models(const std::string& theory, const Alphabet& a, std::size_t lambda) {
  return ts_models(ModelQuery{parse_theory(theory), a, lambda});
}

void suites(Outcome& o, const std::vector<props::NamedSuite>& ss, std::uint64_t seed, std::size_t min_cases,
            std::ostringstream& log) {
  for (const auto& s : ss) {
    auto r = s.run(seed, std::max(s.default_cases, min_cases));
    log << "  " << props::format(r) << "\n";
    o.require(r.ok() && r.cases >= min_cases, s.name + ": " + r.first_violation);
  }
}

Outcome criterion1(std::ostringstream&) {
  Outcome o;
  HTTrace m{tr("{a}.{}.{b}"), tr("{a,b}.{a}.{b}")};
  ThreeValued v = three_valued(m, parse("(>? b) & (>* b) & (>* (a | b))"));
  const Formula a = atom("a"), b = atom("b");
  const std::vector<std::tuple<std::size_t, Formula, int>> want{
      {0, a, 2}, {0, b, 1}, {1, a, 1}, {1, b, 0}, {2, a, 0}, {2, b, 2},
      {0, parse(">? b"), 2}, {0, parse(">* b"), 0}, {0, parse(">* (a | b)"), 1}};
  for (const auto& [k, f, x] : want)
    o.require(v.value(k, f) == x, "m^" + std::to_string(k) + "(" + print(f) + ") = " + std::to_string(v.value(k, f)));
  return o;
}

Outcome criterion2(std::ostringstream&) {
  Outcome o;
  const std::string inertia = "(>* (< loaded & ~unloaded -> loaded)). loaded.";
  const Alphabet lu{"loaded", "unloaded"};
  for (std::size_t l = 1; l <= 5; ++l)
    o.require(models(inertia, lu, l) == std::vector<Trace>{repeat("{loaded}", l)}, "inertia at " + std::to_string(l));
  for (std::size_t l = 1; l <= 5; ++l) {
    std::vector<Trace> want;
    if (l >= 3) want.push_back(concat(tr("{loaded}.{loaded}.{unloaded}"), repeat("{}", l - 3)));
    o.require(models(inertia + " > > unloaded.", lu, l) == want, "inertia with a later unload at " + std::to_string(l));
  }
  const Alphabet a{"a"};
  for (std::size_t l = 1; l <= 6; ++l) {
    std::vector<Trace> want;
    if (l % 2 == 0) want.push_back(repeat("{}.{a}", l / 2));
    o.require(models(">* (~a -> > a)", a, l) == want, "alternation at " + std::to_string(l));
  }
  for (std::size_t l = 1; l <= 5; ++l) {
    o.require(models(">* (~ > a -> a) & >* (> a -> a)", a, l) == std::vector<Trace>{repeat("{a}", l)},
              "a everywhere at " + std::to_string(l));
    o.require(models(">* >? a", a, l) == std::vector<Trace>{concat(repeat("{}", l - 1), tr("{a}"))},
              "a at the end at " + std::to_string(l));
  }
  for (std::size_t l = 1; l <= 4; ++l)
    o.require(models("w >! f", Alphabet{"f", "w"}, l) == std::vector<Trace>{concat(tr("{w}"), repeat("{}", l - 1))},
              "while at " + std::to_string(l));
  return o;
}

Outcome criterion3(std::uint64_t seed, std::ostringstream& log) {
  Outcome o;
  suites(o, props::semantic_suites(), seed, 1000, log);
  return o;
}

Outcome criterion4(std::uint64_t seed, std::ostringstream& log) {
  Outcome o;
  suites(o, {{"bounded translation", props::bounded_translation, 300},
             {"pointwise translation", props::pointwise_translation, 300}},
         seed, 200, log);
  TemporalProgram p = parse_program("initial: #true -> a.\ndynamic: 'a -> b.\nfinal: not b -> #false.\n");
  o.require(stable_models(tau_bounded(p, 2)) == std::vector<AnswerSet>{AnswerSet{ga("a", 0), ga("b", 1)}},
            "example program at length 2");
  for (std::size_t l : {1, 3, 4})
    o.require(stable_models(tau_bounded(p, l)).empty(), "example program at length " + std::to_string(l));
  return o;
}

Outcome criterion5(std::ostringstream&) {
  Outcome o;
  Afw afw = build_afw(parse(">* (a | > a)"));
  o.require(afw_accepts(afw, {{}, {"a"}, {"a", "last"}}), "AFW rejects the accepted word");
  o.require(!afw_accepts(afw, {{}, {"a"}, {"last"}}), "AFW accepts the rejected word");
  Formula f = parse(">* (~a -> > a)");
  std::set<Trace> ltl, tel;
  for (std::size_t n = 1; n <= 6; ++n) {
    for (const auto& t : oracle::traces({"a"}, n))
      if (n <= 5 && oracle::ltl(t, 0, f)) ltl.insert(t);
    for (const auto& t : oracle::ts_models({f}, {"a"}, n)) tel.insert(t);
  }
  o.require(nfa_language(ltl_to_nfa(f), 5) == ltl, "NFA language differs from the LTL_f models");
  o.require(tel == std::set<Trace>{tr("{}.{a}"), tr("{}.{a}.{}.{a}"), tr("{}.{a}.{}.{a}.{}.{a}")},
            "reference TS-models differ from the expected set");
  o.require(nfa_language(build_telf_automaton(f), 6) == tel, "TEL_f automaton language differs from the TS-models");
  return o;
}

Outcome criterion6(std::uint64_t seed, std::ostringstream& log) {
  Outcome o;
  suites(o, {{"strong equivalence agreement", props::se_agreement, 300}}, seed, 200, log);
  auto r = check_se_bounded(parse("w >! f"), parse("~f >* w"), Alphabet{"f", "w"}, 2);
  o.require(!r.equivalent && r.counter, "while/release pair reported equivalent");
  if (r.counter) {
    const auto& c = *r.counter;
    log << "  countermodel k=" << c.k << " " << ht_trace_to_shorthand(c.m) << "\n";
    o.require(c.m.length() <= 2 && c.m.valid(), "countermodel too long or not an HT-trace");
    o.require(oracle::tht(c.m, c.k, parse("w >! f")) != oracle::tht(c.m, c.k, parse("~f >* w")),
              "countermodel does not separate the pair");
  }
  return o;
}

Outcome criterion7(std::ostringstream& log) {
  Outcome o;
  auto ds = props::bc_descriptions();
  o.require(ds.size() >= 5, "fewer than five descriptions");
  for (const auto& d : ds) {
    auto r = props::bc_bijection(d);
    log << "  " << props::format(r) << "\n";
    o.require(r.ok() && r.cases == 3, r.first_violation);
  }
  return o;
}

Outcome criterion8(std::ostringstream& log) {
  Outcome o;
  auto cmds = cli::command_matrix(TASP_DATA_DIR);
  for (const auto& c : cmds) {
    auto a = cli::run(TEMPOASP_BIN, c);
    auto b = cli::run(TEMPOASP_BIN, c);
    o.require(a.status >= 0 && a.status <= 1, "command failed: " + c + "\n" + a.output);
    o.require(a.status == b.status && a.output == b.output, "output differs between runs: " + c);
  }
  log << "  " << cmds.size() << " commands run twice\n";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::uint64_t seed = 0;
  bool verbose = false;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc)
      seed = std::strtoull(argv[++i], nullptr, 10);
    else if (std::strcmp(argv[i], "-v") == 0)
      verbose = true;
  }
  struct Criterion {
    int id;
    std::string name;
    double limit;
    std::function<Outcome(std::ostringstream&)> run;
  };
  const std::vector<Criterion> cs{
      {1, "three-valued worked example", 1, criterion1},
      {2, "stable-model catalogue", 30, criterion2},
      {3, "randomized property suites", 300, [&](std::ostringstream& l) { return criterion3(seed, l); }},
      {4, "translation theorems", 180, [&](std::ostringstream& l) { return criterion4(seed, l); }},
      {5, "automata fixtures", 60, criterion5},
      {6, "strong equivalence", 120, [&](std::ostringstream& l) { return criterion6(seed, l); }},
      {7, "action description bijection", 120, criterion7},
      {8, "CLI determinism", 0, criterion8},
  };
  int failed = 0;
  for (const auto& c : cs) {
    std::ostringstream log;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o = c.run(log);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = c.limit <= 0 || secs < c.limit;
    bool pass = o.ok && in_time;
    failed += !pass;
    std::cout << "criterion " << c.id << ": " << (pass ? "PASS" : "FAIL") << "  " << c.name << " (" << std::fixed
              << std::setprecision(2) << secs << " s";
    if (c.limit > 0) std::cout << ", limit " << std::setprecision(0) << c.limit << " s";
    std::cout << ")\n";
    if (!o.ok) std::cout << "  " << o.detail << "\n";
    if (!in_time) std::cout << "  over the time limit\n";
    if (verbose || !pass) std::cout << log.str();
    std::cout.flush();
  }
  return failed ? 1 : 0;
}
