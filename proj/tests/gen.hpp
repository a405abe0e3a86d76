#pragma once

#include <random>
#include <string>
#include <vector>

#include "tasp/asp.hpp"
#include "tasp/formula.hpp"
#include "tasp/normalform.hpp"
#include "tasp/trace.hpp"

namespace gen {

using Rng = std::mt19937_64;

struct FormulaShape {
  std::vector<std::string> atoms{"p", "q"};
  int depth = 2;
  bool implications = true;
  bool while_op = true;
  bool past = true;
  bool future = true;
  bool constants = true;
  /// I and F among the constants.
  bool markers = true;
};

tasp::Formula formula(Rng& rng, const FormulaShape& s);
/// Like formula but never a bare atom or constant at the root.
tasp::Formula compound(Rng& rng, const FormulaShape& s);

tasp::Trace trace(Rng& rng, const std::vector<std::string>& atoms, std::size_t lambda);
tasp::HTTrace ht_trace(Rng& rng, const std::vector<std::string>& atoms, std::size_t lambda);

struct ProgramShape {
  std::vector<std::string> atoms{"a", "b"};
  int max_rules = 4;
  bool present_centered = false;
  bool final_rules = true;
};

tasp::TemporalProgram program(Rng& rng, const ProgramShape& s);

/// Ground program over at most atoms.size() atoms with optional negated heads.
tasp::GroundProgram ground_program(Rng& rng, const std::vector<std::string>& atoms, int max_rules);

/// A formula equivalent to f in THT obtained by random sound rewrites.
tasp::Formula rewrite(Rng& rng, const tasp::Formula& f, bool implication_free);

int uniform(Rng& rng, int lo, int hi);

}  // namespace gen
