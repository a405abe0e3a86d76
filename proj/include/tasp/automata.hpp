#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tasp/formula.hpp"
#include "tasp/trace.hpp"

namespace tasp {

inline constexpr const char* kLastAtom = "last";
inline constexpr int kMaxEffectiveAtoms = 6;

/// Positive Boolean formula over automaton states.
struct PosBool {
  enum class Op { True, False, State, And, Or };
  Op op = Op::False;
  int state = -1;
  std::vector<PosBool> kids;

  static PosBool t();
  static PosBool f();
  static PosBool q(int s);
  static PosBool conj(PosBool a, PosBool b);
  static PosBool disj(PosBool a, PosBool b);

  bool eval(const std::vector<char>& assignment) const;
  bool operator==(const PosBool& o) const = default;
};

std::string print(const PosBool& b, const std::vector<std::string>& state_names);

/// Alternating automaton over 2^(atoms + last); symbol bit atoms.size() is last.
struct Afw {
  std::vector<std::string> atoms;
  std::vector<Formula> states;
  int initial = 0;
  std::set<int> final;
  /// delta[state][symbol]
  std::vector<std::vector<PosBool>> delta;

  std::uint32_t last_bit() const { return 1u << atoms.size(); }
  std::uint32_t symbol_of(const State& s) const;
};

/// Rewrites f into the connectives the transition table covers. Past operators and I are rejected.
Formula ltl_core(const Formula& f);

Afw build_afw(const Formula& f, const Alphabet& extra = {});
/// Symbols are atom sets; only the final one carries last.
bool afw_accepts(const Afw& a, const std::vector<State>& word);

/// Nondeterministic automaton over 2^atoms; symbols are bitmasks over atoms.
struct Nfa {
  std::vector<std::string> atoms;
  int num_states = 0;
  std::vector<int> initial;
  std::set<int> final;
  /// trans[state][symbol] = sorted successor list
  std::vector<std::map<std::uint32_t, std::vector<int>>> trans;

  bool accepts(const Trace& w) const;
  std::size_t num_transitions() const;
};

Nfa afw_to_nfa(const Afw& a, const Budget& b = Budget::from_env());
Nfa ltl_to_nfa(const Formula& f, const Alphabet& extra = {}, const Budget& b = Budget::from_env());

/// Removes states that are unreachable or cannot reach a final state, renumbering canonically.
Nfa nfa_trim(const Nfa& n);
Nfa nfa_project(const Nfa& n, const std::set<std::string>& drop);
Nfa nfa_complement(const Nfa& n, const Budget& b = Budget::from_env());
Nfa nfa_intersect(const Nfa& x, const Nfa& y, const Budget& b = Budget::from_env());
Nfa nfa_universal(const std::vector<std::string>& atoms);
bool nfa_empty(const Nfa& n);
std::optional<Trace> nfa_shortest_word(const Nfa& n);
std::set<Trace> nfa_language(const Nfa& n, std::size_t max_len);

/// Accepts exactly the temporal stable models of f over its atoms plus extra.
Nfa build_telf_automaton(const Formula& f, const Alphabet& extra = {}, const Budget& b = Budget::from_env());
/// Over the extended alphabet: accepts encodings of HT-traces where f -> g or g -> f fails at some state.
Nfa build_se_automaton(const Formula& f, const Formula& g, const Alphabet& extra = {},
                       const Budget& b = Budget::from_env());

std::string afw_to_json(const Afw& a);
std::string afw_to_dot(const Afw& a);
std::string nfa_to_json(const Nfa& n);
std::string nfa_to_dot(const Nfa& n);

}  // namespace tasp
