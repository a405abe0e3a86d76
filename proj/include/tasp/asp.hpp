#pragma once

#include <set>
#include <string>
#include <vector>

#include "tasp/normalform.hpp"
#include "tasp/trace.hpp"

namespace tasp {

/// name(time), or a plain name when time is negative. Atoms named q are module guards.
struct GroundAtom {
  std::string name;
  int time = -1;

  bool is_guard() const { return name == "q"; }
  std::string str() const;
  bool operator==(const GroundAtom& o) const = default;
  auto operator<=>(const GroundAtom& o) const = default;
};

GroundAtom ga(const std::string& name, int time = -1);

/// head_1 ; ... ; not neg_head_1 ; ... :- pos_1, ..., not neg_1, ...
struct GroundRule {
  std::vector<GroundAtom> head;
  std::vector<GroundAtom> neg_head;
  std::vector<GroundAtom> pos;
  std::vector<GroundAtom> neg;

  bool operator==(const GroundRule& o) const = default;
};

struct GroundProgram {
  std::vector<GroundRule> rules;
  std::set<GroundAtom> atoms() const;
  std::set<GroundAtom> head_atoms() const;
};

struct AspModule {
  GroundProgram program;
  std::set<GroundAtom> input;
  std::set<GroundAtom> output;
};

using AnswerSet = std::set<GroundAtom>;

GroundRule tau_rule(const TemporalRule& r, int k);
GroundProgram tau_bounded(const TemporalProgram& p, std::size_t lambda);
GroundRule tau_pointwise_rule(const TemporalRule& r, int k);

AspModule build_module(const TemporalProgram& p, int k);

struct CompositionVerdict {
  bool ok = true;
  std::string reason;
  std::set<GroundAtom> witness;
};

CompositionVerdict compositional_check(const AspModule& m1, const AspModule& m2);
/// Left fold of the pairwise join; throws std::invalid_argument naming the offending atoms.
AspModule join_modules(const std::vector<AspModule>& ms);

/// All stable models, sorted.
std::vector<AnswerSet> stable_models(const GroundProgram& g, const Budget& b = Budget::from_env());
bool is_stable_model(const GroundProgram& g, const AnswerSet& x);

std::string emit_ground_text(const GroundProgram& g);
GroundProgram parse_ground_text(const std::string& text);

/// Trace of length lambda read off an answer set, restricted to the alphabet.
Trace answer_to_trace(const AnswerSet& x, const Alphabet& a, std::size_t lambda);
/// Temporal stable models of a program without fulfillment rules, through the bounded translation.
std::vector<Trace> ts_models_asp(const TemporalProgram& p, const Alphabet& a, std::size_t lambda,
                                 const Budget& b = Budget::from_env());

}  // namespace tasp
