#include "tasp/star.hpp"

namespace tasp {

std::string primed(const std::string& a) { return a + kPrimeSuffix; }

bool is_primed(const std::string& a) {
  const std::string suf = kPrimeSuffix;
  return a.size() > suf.size() && a.compare(a.size() - suf.size(), suf.size(), suf) == 0;
}

std::string unprimed(const std::string& a) {
  if (!is_primed(a)) throw std::invalid_argument("atom '" + a + "' is not primed");
  return a.substr(0, a.size() - std::string(kPrimeSuffix).size());
}

Alphabet extended_alphabet(const Alphabet& a) {
  std::set<std::string> s(a.atoms().begin(), a.atoms().end());
  for (const auto& x : a.atoms()) s.insert(primed(x));
  return Alphabet(s);
}

Formula star(const Formula& f) {
  switch (f.kind()) {
    case Kind::Atom:
      if (f.name().find(kPrimeSuffix) != std::string::npos)
        throw std::invalid_argument("atom '" + f.name() + "' uses the reserved suffix " + kPrimeSuffix);
      return atom(primed(f.name()));
    case Kind::Truth:
    case Kind::Falsum:
    case Kind::Initial:
    case Kind::Final:
      return f;
    case Kind::Implies:
      return mk_and(f, implies(star(f.lhs()), star(f.rhs())));
    case Kind::Not:
      return mk_and(f, neg(star(f.lhs())));
    case Kind::Iff: {
      Formula a = star(f.lhs()), b = star(f.rhs());
      return mk_and(f, iff(a, b));
    }
    case Kind::While:
      return mk_and(release(neg(f.rhs()), f.lhs()), release(neg(star(f.rhs())), star(f.lhs())));
    default:
      break;
  }
  if (arity(f.kind()) == 1) return unary(f.kind(), star(f.lhs()));
  return binary(f.kind(), star(f.lhs()), star(f.rhs()));
}

Formula ax_primed(const Alphabet& a) {
  std::vector<Formula> parts;
  for (const auto& x : a.atoms()) parts.push_back(always(implies(atom(primed(x)), atom(x))));
  return conj(parts);
}

std::vector<Formula> em_axioms(const Alphabet& a) {
  std::vector<Formula> out;
  for (const auto& x : a.atoms()) out.push_back(always(mk_or(atom(x), neg(atom(x)))));
  return out;
}

Trace extend_trace(const HTTrace& m) {
  if (!m.valid()) throw std::invalid_argument("HT-trace violates H <= T");
  Trace out = m.t;
  for (std::size_t i = 0; i < m.length(); ++i)
    for (const auto& a : m.h.states[i]) out.states[i].insert(primed(a));
  return out;
}

HTTrace decode_trace(const Trace& t, const Alphabet& base) {
  HTTrace m;
  m.h.states.resize(t.length());
  m.t.states.resize(t.length());
  for (std::size_t i = 0; i < t.length(); ++i) {
    for (const auto& x : t.states[i]) {
      if (is_primed(x)) {
        std::string a = unprimed(x);
        if (!base.empty() && !base.contains(a)) continue;
        if (!t.states[i].count(a)) throw std::invalid_argument("extended trace violates " + x + " -> " + a);
        m.h.states[i].insert(a);
      } else if (base.empty() || base.contains(x)) {
        m.t.states[i].insert(x);
      }
    }
  }
  return m;
}

EquivResult check_se_bounded(const Formula& f, const Formula& g, const Alphabet& alpha, std::size_t lambda_max,
                             const Budget& b) {
  Alphabet base = alpha.merged(Alphabet(atoms_of(std::vector<Formula>{f, g})));
  Alphabet ext = extended_alphabet(base);
  Formula ax = ax_primed(base);
  Formula fg = star(implies(f, g));
  Formula gf = star(implies(g, f));
  Evaluator e1(mk_and(ax, eventually(neg(fg))), ext);
  Evaluator e2(mk_and(ax, eventually(neg(gf))), ext);
  Evaluator wf(fg, ext), wg(gf, ext);
  EquivResult res;
  res.lambda_max = lambda_max;
  struct Found {};
  for (std::size_t lambda = 1; lambda <= lambda_max; ++lambda) {
    try {
      for_each_trace(
          ext, lambda,
          [&](const MaskTrace& t) {
            e1.run_total(t);
            e2.run_total(t);
            if (!e1.here(0) && !e2.here(0)) return;
            Evaluator& w = e1.here(0) ? wf : wg;
            w.run_total(t);
            std::size_t k = 0;
            while (k < lambda && w.here(k)) ++k;
            res.equivalent = false;
            HTTrace m = decode_trace(from_mask(t, ext), base);
            if (tht_satisfies(m, k, f) == tht_satisfies(m, k, g)) m.h = m.t;
            res.counter = Countermodel{m, k};
            throw Found{};
          },
          b);
    } catch (const Found&) {
      return res;
    }
  }
  return res;
}

}  // namespace tasp
