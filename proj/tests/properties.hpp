#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace props {

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t violations = 0;
  std::string first_violation;
  double seconds = 0;

  bool ok() const { return violations == 0; }
};

using Suite = std::function<SuiteResult(std::uint64_t seed, std::size_t cases)>;

struct NamedSuite {
  std::string name;
  Suite run;
  std::size_t default_cases;
};

// Semantics.
SuiteResult reference_agreement(std::uint64_t seed, std::size_t cases);
SuiteResult persistence(std::uint64_t seed, std::size_t cases);
SuiteResult total_is_ltl(std::uint64_t seed, std::size_t cases);
SuiteResult em_collapse(std::uint64_t seed, std::size_t cases);
SuiteResult equivalences(std::uint64_t seed, std::size_t cases);
SuiteResult unfoldings(std::uint64_t seed, std::size_t cases);
SuiteResult definability(std::uint64_t seed, std::size_t cases);
SuiteResult boolean_duality(std::uint64_t seed, std::size_t cases);
SuiteResult temporal_duality(std::uint64_t seed, std::size_t cases);
SuiteResult implication_free(std::uint64_t seed, std::size_t cases);
SuiteResult syntax_roundtrip(std::uint64_t seed, std::size_t cases);

// Translations.
SuiteResult star_correspondence(std::uint64_t seed, std::size_t cases);
SuiteResult kamp_correspondence(std::uint64_t seed, std::size_t cases);
SuiteResult kamp_equilibrium(std::uint64_t seed, std::size_t cases);
SuiteResult sm_vs_oracle(std::uint64_t seed, std::size_t cases);
SuiteResult sigma_projection(std::uint64_t seed, std::size_t cases);

// Ground programs.
SuiteResult solver_vs_scan(std::uint64_t seed, std::size_t cases);
SuiteResult bounded_translation(std::uint64_t seed, std::size_t cases);
SuiteResult pointwise_translation(std::uint64_t seed, std::size_t cases);

// Strong equivalence and automata.
SuiteResult se_agreement(std::uint64_t seed, std::size_t cases);
SuiteResult telf_language(std::uint64_t seed, std::size_t cases);
SuiteResult afw_nfa_agreement(std::uint64_t seed, std::size_t cases);
SuiteResult se_automaton(std::uint64_t seed, std::size_t cases);

// Action descriptions.
/// Hand-written descriptions with at most two fluents and two actions.
std::vector<std::string> bc_descriptions();
/// TS-models of P(D) against stable models of N_l(D) and transition paths, one case per l in 0..2.
SuiteResult bc_bijection(const std::string& description);

/// Suites backing the randomized property criterion, in report order.
std::vector<NamedSuite> semantic_suites();
/// Suites backing the translation theorem criterion.
std::vector<NamedSuite> program_suites();

std::string format(const SuiteResult& r);

}  // namespace props
