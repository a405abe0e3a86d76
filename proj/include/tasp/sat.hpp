#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace tasp {

/// Small complete DPLL search over variables 1..n with DIMACS-style literals.
class SatSolver {
 public:
  explicit SatSolver(int num_vars = 0);

  int new_var();
  int num_vars() const { return n_; }
  void add_clause(std::vector<int> lits);
  /// var -> (options[0] or options[1] or ...), each option a conjunction of literals.
  void add_support(int var, std::vector<std::vector<int>> options);

  /// Calls fn on every total model (index 0 unused, values 0/1) until fn returns false.
  /// Returns the number of models visited.
  std::uint64_t enumerate(const std::function<bool(const std::vector<char>&)>& fn,
                          const std::vector<int>& assumptions = {});
  bool solve(std::vector<char>* model = nullptr, const std::vector<int>& assumptions = {});

 private:
  struct Support {
    int var;
    std::vector<std::vector<int>> options;
  };
  int value(int lit) const;
  bool assign(int lit);
  bool propagate();
  bool search(const std::function<bool(const std::vector<char>&)>& fn, int next, std::uint64_t& count, bool& stop);

  int n_ = 0;
  std::vector<std::vector<int>> clauses_;
  std::vector<Support> supports_;
  std::vector<std::vector<int>> clause_occ_;
  std::vector<std::vector<int>> support_occ_;
  std::vector<signed char> val_;
  std::vector<int> trail_;
  std::size_t qhead_ = 0;
  bool trivially_false_ = false;
};

}  // namespace tasp
