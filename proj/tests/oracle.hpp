#pragma once

// Brute-force reference implementations used to check the library. Nothing here
// calls into the library's evaluators or solvers.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "tasp/asp.hpp"
#include "tasp/formula.hpp"
#include "tasp/normalform.hpp"
#include "tasp/trace.hpp"

namespace oracle {

using tasp::Formula;
using tasp::HTTrace;
using tasp::Trace;

/// Satisfaction straight from the recursive definition. here selects H or T as the atom level.
bool sat(const HTTrace& m, bool here, std::size_t k, const Formula& f);
inline bool tht(const HTTrace& m, std::size_t k, const Formula& f) { return sat(m, true, k, f); }
bool ltl(const Trace& t, std::size_t k, const Formula& f);
/// 2 proven, 1 assumed, 0 false.
int value(const HTTrace& m, std::size_t k, const Formula& f);

std::vector<Trace> traces(const std::vector<std::string>& atoms, std::size_t lambda);
std::vector<HTTrace> ht_traces(const std::vector<std::string>& atoms, std::size_t lambda);
/// Traces H with H_i a subset of T_i, T itself included.
std::vector<Trace> below(const Trace& t);

std::vector<Trace> ts_models(const std::vector<Formula>& theory, const std::vector<std::string>& atoms,
                             std::size_t lambda);
std::vector<Trace> ltl_models(const std::vector<Formula>& theory, const std::vector<std::string>& atoms,
                              std::size_t lambda);

/// Temporal programs read directly as rules over HT-traces.
bool rule_sat(const HTTrace& m, const tasp::TemporalRule& r);
bool program_sat(const HTTrace& m, const tasp::TemporalProgram& p);
std::vector<Trace> program_ts_models(const tasp::TemporalProgram& p, const std::vector<std::string>& atoms,
                                     std::size_t lambda);

/// Number of ways (capped at cap) to extend m with the atoms of p outside m's alphabet
/// so that the extension satisfies p.
int count_extensions(const HTTrace& m, const std::vector<std::string>& base, const tasp::TemporalProgram& p,
                     int cap = 2);

/// Stable models by scanning every interpretation and every subset of it.
std::vector<tasp::AnswerSet> stable_models(const tasp::GroundProgram& g);

/// Model count of a CNF over variables 1..n, capped at cap.
int count_models(int n, const std::vector<std::vector<int>>& clauses, int cap);

}  // namespace oracle
