#include <doctest.h>

#include "properties.hpp"
#include "test_seed.hpp"

namespace {

void run_all(const std::vector<props::NamedSuite>& suites) {
  for (const auto& s : suites) {
    auto r = s.run(test_seed(), s.default_cases);
    MESSAGE(props::format(r));
    INFO(r.first_violation);
    CHECK_MESSAGE(r.ok(), s.name);
    CHECK(r.cases >= s.default_cases);
  }
}

}  // namespace

TEST_CASE("semantic properties") { run_all(props::semantic_suites()); }

TEST_CASE("translation properties") { run_all(props::program_suites()); }

TEST_CASE("strong equivalence and automata properties") {
  run_all({
      {"strong equivalence agreement", props::se_agreement, 300},
      {"strong equivalence automaton", props::se_automaton, 300},
      {"TEL_f automaton language", props::telf_language, 300},
      {"AFW and NFA agreement", props::afw_nfa_agreement, 200},
  });
}
