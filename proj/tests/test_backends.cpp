#include <doctest.h>

#include <algorithm>

#include "oracle.hpp"
#include "properties.hpp"
#include "tasp/asp.hpp"
#include "tasp/automata.hpp"
#include "tasp/bc.hpp"
#include "tasp/normalform.hpp"
#include "tasp/semantics.hpp"

using namespace tasp;

namespace {

Trace tr(const std::string& s) { return parse_trace_shorthand(s); }

const char* kProgram24 = "initial: #true -> a.\ndynamic: 'a -> b.\nfinal: not b -> #false.\n";

AnswerSet answer(std::initializer_list<GroundAtom> xs) { return AnswerSet(xs); }

std::vector<State> word(std::initializer_list<State> xs) { return {xs}; }

std::set<Trace> ltl_language(const Formula& f, const std::vector<std::string>& atoms, std::size_t max_len) {
  std::set<Trace> out;
  for (std::size_t n = 1; n <= max_len; ++n)
    for (const auto& t : oracle::traces(atoms, n))
      if (oracle::ltl(t, 0, f)) out.insert(t);
  return out;
}

std::set<Trace> ts_language(const Formula& f, const std::vector<std::string>& atoms, std::size_t max_len) {
  std::set<Trace> out;
  for (std::size_t n = 1; n <= max_len; ++n)
    for (const auto& t : oracle::ts_models({f}, atoms, n)) out.insert(t);
  return out;
}

}  // namespace

TEST_CASE("ground text") {
  const std::string text = "a(0).\nb(1) :- a(0), not c(1).\na(0) ; b(0) :- c(0).\n:- not b(1).\n";
  GroundProgram g = parse_ground_text(text);
  CHECK(g.rules.size() == 4);
  CHECK(emit_ground_text(g) == text);
  CHECK(ga("a", 0).str() == "a(0)");
  CHECK(ga("a").str() == "a");
  CHECK(ga("q", 2).is_guard());
}

TEST_CASE("stable models of small programs") {
  CHECK(stable_models(parse_ground_text("a.\nb :- a, not c.\n")) == std::vector<AnswerSet>{answer({ga("a"), ga("b")})});
  CHECK(stable_models(parse_ground_text("a ; b.\n")) ==
        std::vector<AnswerSet>{answer({ga("a")}), answer({ga("b")})});
  CHECK(stable_models(parse_ground_text("a :- not b.\nb :- not a.\n")).size() == 2);
  CHECK(stable_models(parse_ground_text("a :- not a.\n")).empty());
  CHECK(is_stable_model(parse_ground_text("a.\n"), answer({ga("a")})));
  CHECK_FALSE(is_stable_model(parse_ground_text("a :- b.\nb :- a.\n"), answer({ga("a"), ga("b")})));
}

TEST_CASE("bounded translation of the example program") {
  TemporalProgram p = parse_program(kProgram24);
  CHECK(emit_ground_text(GroundProgram{{tau_rule(p.rules[1], 1)}}) == "b(1) :- a(0).\n");
  CHECK(emit_ground_text(GroundProgram{{tau_rule(p.rules[0], 0)}}) == "a(0).\n");
  CHECK(emit_ground_text(GroundProgram{{tau_rule(p.rules[2], 1)}}) == ":- not b(1).\n");
  CHECK_THROWS(tau_rule(p.rules[1], 0));
  CHECK(emit_ground_text(tau_bounded(p, 2)) == "a(0).\nb(1) :- a(0).\n:- not b(1).\n");
  CHECK(stable_models(tau_bounded(p, 2)) == std::vector<AnswerSet>{answer({ga("a", 0), ga("b", 1)})});
  for (std::size_t lambda : {1, 3, 4}) CHECK(stable_models(tau_bounded(p, lambda)).empty());
  CHECK(ts_models_asp(p, Alphabet{"a", "b"}, 2) == std::vector<Trace>{tr("{a}.{b}")});
  CHECK_THROWS(tau_bounded(parse_program("fulfill_dia: a => b.\n"), 2));
}

TEST_CASE("modules of the example program") {
  TemporalProgram p = parse_program(kProgram24);
  CHECK(emit_ground_text(GroundProgram{{tau_pointwise_rule(p.rules[2], 3)}}) == ":- not b(3), not q(4).\n");
  AspModule m0 = build_module(p, 0);
  CHECK(emit_ground_text(m0.program) == "a(0).\n:- not b(0), not q(1).\n");
  CHECK(m0.input == std::set<GroundAtom>{ga("q", 1)});
  CHECK(m0.output == std::set<GroundAtom>{ga("a", 0), ga("b", 0)});
  AspModule m1 = build_module(p, 1);
  CHECK(emit_ground_text(m1.program) == "b(1) :- a(0).\n:- not b(1), not q(2).\nq(1).\n");
  CHECK(m1.input == std::set<GroundAtom>{ga("a", 0), ga("b", 0), ga("q", 2)});
  CHECK(m1.output == std::set<GroundAtom>{ga("a", 1), ga("b", 1), ga("q", 1)});
  CHECK(compositional_check(m0, m1).ok);
  AspModule j = join_modules({m0, m1});
  CHECK(stable_models(j.program) == std::vector<AnswerSet>{answer({ga("a", 0), ga("b", 1), ga("q", 1)})});
  CHECK_THROWS(build_module(parse_program("dynamic: a -> 'b.\n"), 1));
}

TEST_CASE("compositionality") {
  AspModule x{parse_ground_text("a(0) :- b(0).\n"), {ga("b", 0)}, {ga("a", 0)}};
  AspModule y{parse_ground_text("b(0) :- a(0).\n"), {ga("a", 0)}, {ga("b", 0)}};
  auto v = compositional_check(x, y);
  CHECK_FALSE(v.ok);
  CHECK(v.witness == std::set<GroundAtom>{ga("a", 0), ga("b", 0)});
  CHECK_THROWS_AS(join_modules({x, y}), std::invalid_argument);
  AspModule z{parse_ground_text("c(0).\n"), {}, {ga("c", 0)}};
  AspModule w{parse_ground_text("d(0).\n"), {}, {ga("d", 0)}};
  CHECK(compositional_check(z, w).ok);
  CHECK(join_modules({z, w}).output == std::set<GroundAtom>{ga("c", 0), ga("d", 0)});
  AspModule z2{parse_ground_text("c(0) :- e(0).\n"), {ga("e", 0)}, {ga("c", 0)}};
  CHECK_THROWS_AS(join_modules({z, z2}), std::invalid_argument);
}

TEST_CASE("alternating automaton runs") {
  Afw a = build_afw(parse(">* (a | > a)"));
  CHECK(afw_accepts(a, word({{}, {"a"}, {"a", "last"}})));
  CHECK_FALSE(afw_accepts(a, word({{}, {"a"}, {"last"}})));
  Afw t = build_afw(top());
  CHECK(afw_accepts(t, word({{"last"}})));
  CHECK(afw_accepts(t, word({{}, {"last"}})));
  CHECK(afw_accepts(build_afw(atom("a")), word({{"a", "last"}})));
  CHECK_THROWS(afw_accepts(a, word({{"last"}, {"a", "last"}})));
  CHECK_THROWS(build_afw(parse("< a")));
}

TEST_CASE("NFA languages") {
  Formula f = parse(">* (~a -> > a)");
  CHECK(nfa_language(ltl_to_nfa(f), 5) == ltl_language(f, {"a"}, 5));
  CHECK(nfa_language(afw_to_nfa(build_afw(parse(">* (a | > a)"))), 5) == ltl_language(f, {"a"}, 5));
  CHECK(nfa_empty(ltl_to_nfa(bot())));
  CHECK(nfa_language(ltl_to_nfa(atom("a")), 3) == ltl_language(atom("a"), {"a"}, 3));
  Nfa n = ltl_to_nfa(parse("a >? b"));
  CHECK(nfa_language(nfa_intersect(n, nfa_complement(n)), 5).empty());
  CHECK(nfa_language(nfa_intersect(n, nfa_universal(n.atoms)), 4) == nfa_language(n, 4));
  CHECK(nfa_language(nfa_project(n, {}), 4) == nfa_language(n, 4));
  std::set<Trace> dropped;
  for (const auto& t : nfa_language(n, 4)) {
    Trace u;
    for (const auto& s : t.states) u.states.push_back(s.count("a") ? State{"a"} : State{});
    dropped.insert(u);
  }
  CHECK(nfa_language(nfa_project(n, {"b"}), 4) == dropped);
  auto w = nfa_shortest_word(n);
  REQUIRE(w);
  CHECK(*w == tr("{b}"));
  CHECK(nfa_language(nfa_trim(n), 4) == nfa_language(n, 4));
}

TEST_CASE("temporal equilibrium automata") {
  Formula f = parse(">* (~a -> > a)");
  std::set<Trace> want{tr("{}.{a}"), tr("{}.{a}.{}.{a}"), tr("{}.{a}.{}.{a}.{}.{a}")};
  CHECK(nfa_language(build_telf_automaton(f), 6) == want);
  CHECK(want == ts_language(f, {"a"}, 6));
  CHECK(nfa_language(build_telf_automaton(atom("a")), 3) == std::set<Trace>{tr("{a}"), tr("{a}.{}"), tr("{a}.{}.{}")});
  CHECK(nfa_empty(build_telf_automaton(bot())));
}

TEST_CASE("automata export") {
  Nfa n = ltl_to_nfa(parse(">* (~a -> > a)"));
  CHECK(nfa_to_json(n) == nfa_to_json(ltl_to_nfa(parse(">* (~a -> > a)"))));
  CHECK(nfa_to_json(n).find("\"transitions\"") != std::string::npos);
  CHECK(nfa_to_dot(n).rfind("digraph", 0) == 0);
  Afw a = build_afw(parse(">* (a | > a)"));
  CHECK(afw_to_json(a).find("\"initial\"") != std::string::npos);
  CHECK(afw_to_dot(a).rfind("digraph", 0) == 0);
}

TEST_CASE("action description syntax") {
  ActionDescription d = parse_bc("fluent f : {t,f} regular.\nfluent g : {t,f} static.\naction a.\n"
                                 "f=t after a.\nf=f after f=f ifcons f=f.\ng=t if f=t.\n");
  REQUIRE(d.laws.size() == 3);
  CHECK(d.laws[0].dynamic);
  CHECK(d.laws[0].body == std::vector<BcAtom>{{"a", ""}});
  CHECK(d.laws[1].ifcons == std::vector<BcAtom>{{"f", "f"}});
  CHECK_FALSE(d.laws[2].dynamic);
  CHECK(parse_bc(print(d)).laws.size() == 3);
  CHECK_THROWS_AS(parse_bc("fluent f : {t} regular.\n"), BcError);
  CHECK_THROWS_AS(parse_bc("fluent g : {t,f} static.\naction a.\ng=t after a.\n"), BcError);
  CHECK_THROWS_AS(parse_bc("fluent f : {t,f} regular.\nf=t if a.\n"), BcError);
  CHECK_THROWS_AS(parse_bc("fluent f__x : {t,f} regular.\n"), BcError);
}

TEST_CASE("action description translation") {
  ActionDescription d = parse_bc(props::bc_descriptions()[0]);
  TemporalProgram p = translate_bc(d);
  const std::string text = print(p);
  CHECK(text.find("dynamic: 'f__t -> f__t ; not f__t.") != std::string::npos);
  CHECK(text.find("initial: not f__t, not f__f -> #false.") != std::string::npos);
  CHECK(text.find("dynamic: f__t, f__f -> #false.") != std::string::npos);
  CHECK(bc_alphabet(d) == (Alphabet{"a", "f__f", "f__t"}));
  std::vector<Trace> states;
  for (const auto& x : stable_models(ground_nl(d, 0))) states.push_back(nl_to_trace(x, d, 0));
  std::sort(states.begin(), states.end());
  CHECK(states == std::vector<Trace>{tr("{f__f}"), tr("{f__t}")});
  TransitionSystem ts = transitions(d);
  std::vector<BcTransition> want{{{"f__f"}, {}, {"f__f"}},
                                 {{"f__f"}, {"a"}, {"f__t"}},
                                 {{"f__t"}, {}, {"f__t"}},
                                 {{"f__t"}, {"a"}, {"f__t"}}};
  CHECK(ts.transitions == want);
}

TEST_CASE("small transition systems") {
  TransitionSystem forced = transitions(parse_bc("fluent g : {t,f} static.\ng=t if.\n"));
  CHECK(forced.states == std::vector<State>{{"g__t"}});
  TransitionSystem free = transitions(parse_bc("fluent f : {t,f} regular.\naction a.\n"));
  CHECK(free.states.size() == 2);
  CHECK(free.transitions.empty());
  TransitionSystem toggles = transitions(parse_bc(props::bc_descriptions()[1]));
  CHECK(toggles.transitions.size() == 6);
}

TEST_CASE("action descriptions against their ground programs") {
  for (const auto& d : props::bc_descriptions()) {
    auto r = props::bc_bijection(d);
    INFO(d);
    INFO(r.first_violation);
    CHECK(r.ok());
    CHECK(r.cases == 3);
  }
}
