#pragma once

#include <string>
#include <vector>

#include "tasp/formula.hpp"
#include "tasp/semantics.hpp"
#include "tasp/trace.hpp"

namespace tasp {

inline constexpr const char* kPrimeSuffix = "__p";

std::string primed(const std::string& a);
bool is_primed(const std::string& a);
std::string unprimed(const std::string& a);

/// A together with a' for every a in A.
Alphabet extended_alphabet(const Alphabet& a);

/// THT-to-LTL translation over the primed alphabet.
Formula star(const Formula& f);
/// Conjunction of always(a' -> a) over the alphabet.
Formula ax_primed(const Alphabet& a);
/// One always(a | ~a) per atom.
std::vector<Formula> em_axioms(const Alphabet& a);

/// T*_i = T_i plus a' for every a in H_i.
Trace extend_trace(const HTTrace& m);
/// Inverse of extend_trace; throws when the trace violates ax_primed.
HTTrace decode_trace(const Trace& t, const Alphabet& base);

/// Strong equivalence up to bound through classical satisfiability over the extended alphabet.
EquivResult check_se_bounded(const Formula& f, const Formula& g, const Alphabet& a, std::size_t lambda_max,
                             const Budget& b = Budget::from_env());

}  // namespace tasp
