#pragma once

#include <cstddef>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace tasp {

enum class Kind {
  Atom,
  Truth,
  Falsum,
  Initial,
  Final,
  And,
  Or,
  Implies,
  Previous,
  WeakPrevious,
  Since,
  Trigger,
  AlwaysBefore,
  EventuallyBefore,
  Next,
  WeakNext,
  Until,
  Release,
  While,
  Always,
  Eventually,
  Not,
  Iff
};

int arity(Kind k);
bool is_base(Kind k);
bool is_past(Kind k);
bool is_future(Kind k);

struct Node;

/// Immutable, structurally compared temporal formula.
class Formula {
 public:
  Formula();

  Kind kind() const;
  const std::string& name() const;
  /// First child (unary operand or left operand).
  const Formula& lhs() const;
  /// Second child of binary nodes.
  const Formula& rhs() const;
  std::size_t hash() const;
  std::size_t size() const;
  std::size_t depth() const;

  bool operator==(const Formula& o) const;
  bool operator!=(const Formula& o) const { return !(*this == o); }
  bool operator<(const Formula& o) const;

 private:
  friend Formula make_node(Kind, std::string, Formula, Formula);
  std::shared_ptr<const Node> p_;
};

struct Node {
  Kind kind;
  std::string name;
  Formula a;
  Formula b;
  std::size_t hash = 0;
  std::size_t size = 1;
  std::size_t depth = 0;
};

Formula make_node(Kind k, std::string name, Formula a, Formula b);

Formula atom(const std::string& name);
Formula top();
Formula bot();
Formula initial();
Formula final_();
Formula mk_and(Formula a, Formula b);
Formula mk_or(Formula a, Formula b);
Formula implies(Formula a, Formula b);
Formula iff(Formula a, Formula b);
Formula neg(Formula a);
Formula prev(Formula a);
Formula wprev(Formula a);
Formula since(Formula a, Formula b);
Formula trigger(Formula a, Formula b);
Formula always_before(Formula a);
Formula eventually_before(Formula a);
Formula next(Formula a);
Formula wnext(Formula a);
Formula until(Formula a, Formula b);
Formula release(Formula a, Formula b);
Formula while_(Formula a, Formula b);
Formula always(Formula a);
Formula eventually(Formula a);
Formula unary(Kind k, Formula a);
Formula binary(Kind k, Formula a, Formula b);

/// Conjunction/disjunction of a list; empty lists give top/bot.
Formula conj(const std::vector<Formula>& fs);
Formula disj(const std::vector<Formula>& fs);

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t pos);
  std::size_t position() const { return pos_; }
  const std::string& message() const { return msg_; }

 private:
  std::string msg_;
  std::size_t pos_;
};

/// Parses formula text. With a non-null alphabet, unknown atoms are rejected.
Formula parse(const std::string& text, const std::vector<std::string>* alphabet = nullptr);
/// Parses a sequence of formulas separated by '.' or newlines at top level.
std::vector<Formula> parse_theory(const std::string& text);

std::string print(const Formula& f);

Formula expand_derived(const Formula& f);
/// Distinct subformulas in deterministic post-order, f last.
std::vector<Formula> subformulas(const Formula& f);
std::set<std::string> atoms_of(const Formula& f);
std::set<std::string> atoms_of(const std::vector<Formula>& fs);

Formula dual_map(const Formula& f);
Formula swap_time_map(const Formula& f);

bool is_implication_free(const Formula& f);
/// Replaces atoms by formulas according to the given pairs.
Formula substitute(const Formula& f, const std::vector<std::pair<std::string, Formula>>& sub);

bool valid_atom_name(const std::string& s);

}  // namespace tasp
