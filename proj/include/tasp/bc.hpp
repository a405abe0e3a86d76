#pragma once

#include <set>
#include <string>
#include <vector>

#include "tasp/asp.hpp"
#include "tasp/normalform.hpp"
#include "tasp/trace.hpp"

namespace tasp {

struct BcFluent {
  std::string name;
  std::vector<std::string> domain;
  bool regular = true;
};

/// f=v, or an action constant when value is empty (only in after-lists).
struct BcAtom {
  std::string fluent;
  std::string value;

  bool is_action() const { return value.empty(); }
  bool operator==(const BcAtom& o) const = default;
  auto operator<=>(const BcAtom& o) const = default;
};

struct BcLaw {
  bool dynamic = false;
  BcAtom head;
  std::vector<BcAtom> body;
  std::vector<BcAtom> ifcons;
};

struct ActionDescription {
  std::vector<BcFluent> fluents;
  std::vector<std::string> actions;
  std::vector<BcLaw> laws;

  const BcFluent* fluent(const std::string& name) const;
  bool is_action(const std::string& name) const;
};

class BcError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ActionDescription parse_bc(const std::string& text);
std::string print(const ActionDescription& d);

/// f__v
std::string bc_atom_name(const BcAtom& a);
/// Mangled fluent atoms plus action constants.
Alphabet bc_alphabet(const ActionDescription& d);
std::set<std::string> bc_fluent_atoms(const ActionDescription& d);

TemporalProgram translate_bc(const ActionDescription& d);
GroundProgram ground_nl(const ActionDescription& d, int l);
/// Reads the trace of length l+1 off a stable model of N_l, dropping auxiliary atoms.
Trace nl_to_trace(const AnswerSet& x, const ActionDescription& d, int l);

struct BcTransition {
  State from;
  State actions;
  State to;

  bool operator==(const BcTransition& o) const = default;
  auto operator<=>(const BcTransition& o) const = default;
};

struct TransitionSystem {
  std::vector<State> states;
  std::vector<BcTransition> transitions;
};

TransitionSystem transitions(const ActionDescription& d, const Budget& b = Budget::from_env());
/// Fluent-state sequences s_0 ... s_{length-1} linked by transitions.
std::set<std::vector<State>> paths(const TransitionSystem& ts, std::size_t length);
std::string print(const TransitionSystem& ts);

}  // namespace tasp
