#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tasp/formula.hpp"

namespace tasp {

/// Regular or previous-state literal over an atom.
struct Literal {
  std::string atom;
  bool negated = false;
  bool previous = false;

  bool operator==(const Literal& o) const = default;
  auto operator<=>(const Literal& o) const = default;
};

Literal pos(const std::string& a);
Literal negl(const std::string& a);
Literal prevl(const std::string& a, bool negated = false);

enum class RuleClass { Initial, Dynamic, FulfillBox, FulfillDia, Final };

const char* to_string(RuleClass c);

/// Body is a conjunction, head a disjunction; an empty head is a constraint.
/// Fulfillment rules only use p and q: box is always(always p -> q), dia is always(p -> eventually q).
struct TemporalRule {
  RuleClass cls = RuleClass::Initial;
  std::vector<Literal> body;
  std::vector<Literal> head;
  std::string p;
  std::string q;

  bool operator==(const TemporalRule& o) const = default;
  auto operator<=>(const TemporalRule& o) const = default;
};

struct TemporalProgram {
  std::vector<TemporalRule> rules;

  std::set<std::string> atoms() const;
  std::vector<TemporalRule> of(RuleClass c) const;
  bool operator==(const TemporalProgram& o) const = default;
};

/// Reserved atoms standing for the initial and final markers in extended dynamic rules.
inline constexpr const char* kInitialAtom = "__i";
inline constexpr const char* kFinalAtom = "__f";
inline constexpr const char* kLabelPrefix = "l_";

/// l_ followed by eight hex digits of the structural hash.
std::string label_name(const Formula& f);
/// Atoms, top and bottom are their own labels.
Formula label(const Formula& f);
/// Label of ~<>F, the marker for infinite continuations.
std::string final_label();

/// Rewrites f into the connectives the definition tables cover: atoms, top, bottom, and, or,
/// implication, next, previous, until, release, since, trigger. While is rejected.
Formula core_form(const Formula& f);
/// Expands every While subformula into its unfolding for traces of length lambda.
Formula unfold_while(const Formula& f, std::size_t lambda);

std::vector<Formula> df(const Formula& mu);
std::vector<TemporalRule> df_star(const Formula& mu);

/// Facts for the labels of gamma plus the rule definitions of all subformulas.
/// With lambda given, While is unfolded first; otherwise it is rejected.
TemporalProgram sigma(const std::vector<Formula>& gamma, std::optional<std::size_t> lambda = std::nullopt);

/// Replaces fulfillment rules by final rules p -> q.
TemporalProgram fulfillment_to_final(const TemporalProgram& p);

bool is_present_centered(const TemporalProgram& p);
bool is_past_future(const Formula& f);
/// Present-centered program for a past-future rule. Eventually in heads is only
/// accepted over atoms that occur nowhere else in the rule.
TemporalProgram past_future_reduce(const Formula& f);

Formula to_formula(const TemporalRule& r);
std::vector<Formula> to_theory(const TemporalProgram& p);

std::string print(const Literal& l);
std::string print(const TemporalRule& r);
std::string print(const TemporalProgram& p);
TemporalProgram parse_program(const std::string& text);

}  // namespace tasp
