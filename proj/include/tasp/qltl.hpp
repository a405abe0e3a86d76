#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "tasp/formula.hpp"
#include "tasp/trace.hpp"

namespace tasp {

/// Temporal formula with propositional quantifiers, evaluated classically.
class QFormula {
 public:
  enum class QKind { Leaf, Op, Exists, Forall };

  static QFormula leaf(Formula f);
  static QFormula op(Kind k, QFormula a);
  static QFormula op(Kind k, QFormula a, QFormula b);
  static QFormula exists(const std::string& var, QFormula body);
  static QFormula forall(const std::string& var, QFormula body);

  QKind qkind() const;
  /// Connective of Op nodes.
  Kind kind() const;
  const Formula& formula() const;
  const std::string& var() const;
  const QFormula& lhs() const;
  const QFormula& rhs() const;

  std::set<std::string> free_atoms() const;
  std::set<std::string> bound_atoms() const;

 private:
  struct Node;
  std::shared_ptr<const Node> p_;
};

std::string print(const QFormula& f);

/// Traces agreeing with t outside x.
std::vector<Trace> variants(const Trace& t, const std::set<std::string>& x);

bool qltl_satisfies(const Trace& t, std::size_t k, const QFormula& f);

/// Order formulas between the primed and unprimed copies of the alphabet.
Formula primed_leq(const Alphabet& a);
Formula primed_lt(const Alphabet& a);

/// f & ~exists a1' ... an' (<a'> < <a> & f*). The alphabet defaults to the atoms of f.
QFormula build_sm(const Formula& f, const Alphabet& a = {});

std::vector<Trace> ts_models_via_sm(const Formula& f, const Alphabet& a, std::size_t lambda,
                                    const Budget& b = Budget::from_env());

}  // namespace tasp
