#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace tasp {

/// Sorted, duplicate-free list of atom names.
class Alphabet {
 public:
  Alphabet() = default;
  Alphabet(std::initializer_list<std::string> atoms);
  explicit Alphabet(const std::set<std::string>& atoms);
  explicit Alphabet(const std::vector<std::string>& atoms);

  const std::vector<std::string>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }
  int index_of(const std::string& a) const;
  bool contains(const std::string& a) const { return index_of(a) >= 0; }
  Alphabet merged(const Alphabet& o) const;
  bool operator==(const Alphabet& o) const { return atoms_ == o.atoms_; }

 private:
  std::vector<std::string> atoms_;
};

using State = std::set<std::string>;

struct Trace {
  std::vector<State> states;
  std::size_t length() const { return states.size(); }
  bool operator==(const Trace& o) const { return states == o.states; }
  bool operator<(const Trace& o) const { return states < o.states; }
};

struct HTTrace {
  Trace h;
  Trace t;
  std::size_t length() const { return t.length(); }
  bool valid() const;
  bool total() const { return h == t; }
  bool operator==(const HTTrace& o) const { return h == o.h && t == o.t; }
  bool operator<(const HTTrace& o) const { return t < o.t || (t == o.t && h < o.h); }
};

enum class HtOrder { Equal, StrictlyLess, StrictlyGreater, Incomparable, DifferentThere };
const char* to_string(HtOrder o);

HtOrder ht_compare(const HTTrace& a, const HTTrace& b);

/// Enumeration limits, overridable through TEMPOASP_BUDGET.
struct Budget {
  int trace_slots = 24;
  int ht_slots = 16;
  int solver_atoms = 64;
  int automaton_states = 20000;

  static Budget from_env();
  /// Accepts "N" (trace slots) or "key=value,..." with keys traces, ht, solver, states.
  static Budget parse(const std::string& spec);
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bitmask view of a trace over an alphabet (bit i = atom i).
using MaskTrace = std::vector<std::uint32_t>;

MaskTrace to_mask(const Trace& t, const Alphabet& a);
Trace from_mask(const MaskTrace& m, const Alphabet& a);

/// Calls fn for every trace of the given length, in increasing mask order.
void for_each_trace(const Alphabet& a, std::size_t lambda, const std::function<void(const MaskTrace&)>& fn,
                    const Budget& b = Budget{});
/// Calls fn(h, t) for every HT-trace; t varies slowest.
void for_each_ht_trace(const Alphabet& a, std::size_t lambda,
                       const std::function<void(const MaskTrace&, const MaskTrace&)>& fn, const Budget& b = Budget{});

std::vector<Trace> enumerate_traces(const Alphabet& a, std::size_t lambda, const Budget& b = Budget{});
std::vector<HTTrace> enumerate_ht_traces(const Alphabet& a, std::size_t lambda, const Budget& b = Budget{});

/// Structured-data forms: {"states":[[...],...]} and {"h":[...],"t":[...]}.
std::string trace_to_json(const Trace& t);
std::string ht_trace_to_json(const HTTrace& m);
Trace trace_from_json(const std::string& text);
HTTrace ht_trace_from_json(const std::string& text);
/// Concatenation shorthand such as {a}.{}.{a,b}.
Trace parse_trace_shorthand(const std::string& text);
std::string trace_to_shorthand(const Trace& t);
std::string ht_trace_to_shorthand(const HTTrace& m);

}  // namespace tasp
