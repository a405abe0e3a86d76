#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tasp/formula.hpp"
#include "tasp/trace.hpp"

namespace tasp {

/// Variable or constant time point followed by a chain of +1/-1 applications.
struct FoTerm {
  bool is_var = false;
  std::string var;
  int value = 0;
  std::vector<int> steps;

  static FoTerm variable(const std::string& name);
  static FoTerm constant(int value);
  FoTerm plus1() const;
  FoTerm minus1() const;
};

enum class FoKind { Pred, Eq, Lt, Le, Top, Bot, And, Or, Implies, Exists, Forall };

class FoFormula {
 public:
  static FoFormula pred(const std::string& name, FoTerm t);
  static FoFormula eq(FoTerm a, FoTerm b);
  static FoFormula lt(FoTerm a, FoTerm b);
  static FoFormula le(FoTerm a, FoTerm b);
  static FoFormula top();
  static FoFormula bot();
  static FoFormula conj(FoFormula a, FoFormula b);
  static FoFormula disj(FoFormula a, FoFormula b);
  static FoFormula implies(FoFormula a, FoFormula b);
  static FoFormula neg(FoFormula a);
  static FoFormula exists(const std::string& var, FoFormula body);
  static FoFormula forall(const std::string& var, FoFormula body);

  FoKind kind() const;
  const std::string& name() const;
  const FoTerm& t1() const;
  const FoTerm& t2() const;
  const FoFormula& lhs() const;
  const FoFormula& rhs() const;

 private:
  struct Node;
  std::shared_ptr<const Node> p_;
};

std::string print(const FoTerm& t);
std::string print(const FoFormula& f);

/// Kamp's translation at a given time point term. Variables are named x0, x1, ... by depth.
FoFormula kamp_translate(const Formula& f, const FoTerm& k);
FoFormula kamp_translate(const Formula& f, int k);

struct MhtInterpretation {
  std::size_t lambda = 0;
  std::set<std::pair<std::string, int>> h;
  std::set<std::pair<std::string, int>> t;
};

MhtInterpretation corresponding(const HTTrace& m);
HTTrace corresponding(const MhtInterpretation& m);

/// Domain element -1 stands for the undefined element u.
using FoEnv = std::map<std::string, int>;

bool mht_evaluate(const MhtInterpretation& m, const FoFormula& f, const FoEnv& env = {});

/// Total interpretations of length lambda that are equilibrium models of the translation at 0.
std::vector<Trace> mht_equilibrium_models(const Formula& f, const Alphabet& a, std::size_t lambda,
                                          const Budget& b = Budget::from_env());

}  // namespace tasp
