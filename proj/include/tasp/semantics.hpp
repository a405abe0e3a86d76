#pragma once

#include <map>
#include <optional>
#include <vector>

#include "tasp/formula.hpp"
#include "tasp/trace.hpp"

namespace tasp {

/// Formula compiled into an indexed DAG and evaluated on bitmask HT-traces.
class Evaluator {
 public:
  Evaluator(const Formula& f, const Alphabet& a);

  /// Fills both levels for all time points. h must be pointwise included in t.
  void run(const MaskTrace& h, const MaskTrace& t);
  /// Classical evaluation (H = T), cheaper than run(t, t).
  void run_total(const MaskTrace& t);

  bool here(std::size_t k) const { return h_[root_ * lambda_ + k] != 0; }
  bool there(std::size_t k) const { return t_[root_ * lambda_ + k] != 0; }
  const Alphabet& alphabet() const { return alphabet_; }

 private:
  struct Op {
    Kind kind;
    int atom = -1;
    int a = -1;
    int b = -1;
  };
  void level(const MaskTrace& x, std::vector<char>& out, bool here_level);

  Alphabet alphabet_;
  std::vector<Op> ops_;
  std::size_t root_ = 0;
  std::size_t lambda_ = 0;
  std::vector<char> h_;
  std::vector<char> t_;
};

bool tht_satisfies(const HTTrace& m, std::size_t k, const Formula& f);
bool ltl_satisfies(const Trace& t, std::size_t k, const Formula& f);

/// Truth values 0 (false), 1 (assumed), 2 (proven) for every subformula and time point.
class ThreeValued {
 public:
  ThreeValued(const HTTrace& m, const Formula& f);
  int value(std::size_t k, const Formula& g) const;
  const std::map<Formula, std::vector<int>>& table() const { return table_; }

 private:
  const std::vector<int>& compute(const Formula& g);
  HTTrace m_;
  std::map<Formula, std::vector<int>> table_;
};

ThreeValued three_valued(const HTTrace& m, const Formula& f);

struct ModelQuery {
  std::vector<Formula> theory;
  Alphabet alphabet;
  std::size_t lambda = 1;
};

/// Alphabet of the query, or the theory's atoms when the query leaves it empty.
Alphabet query_alphabet(const ModelQuery& q);

std::vector<HTTrace> tht_models(const ModelQuery& q, const Budget& b = Budget::from_env());
std::vector<Trace> ts_models(const ModelQuery& q, const Budget& b = Budget::from_env());
std::vector<Trace> ltl_models(const ModelQuery& q, const Budget& b = Budget::from_env());
/// Bitmask variant of ts_models over an explicit alphabet.
std::vector<MaskTrace> ts_models_masks(const std::vector<Formula>& theory, const Alphabet& a, std::size_t lambda,
                                       const Budget& b = Budget::from_env());

enum class EquivMode { Global, Initial, Total };

struct Countermodel {
  HTTrace m;
  std::size_t k = 0;
};

struct EquivResult {
  bool equivalent = true;
  std::size_t lambda_max = 0;
  std::optional<Countermodel> counter;
};

/// Compares satisfaction of f and g on all HT-traces of length 1..lambda_max.
/// Initial mode only inspects k = 0; Total mode only inspects total traces.
EquivResult tht_equiv_bounded(const Formula& f, const Formula& g, const Alphabet& a, std::size_t lambda_max,
                              EquivMode mode = EquivMode::Global, const Budget& b = Budget::from_env());
EquivResult tautology_bounded(const Formula& f, const Alphabet& a, std::size_t lambda_max,
                              const Budget& b = Budget::from_env());

}  // namespace tasp
