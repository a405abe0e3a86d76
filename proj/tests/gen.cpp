#include "gen.hpp"

#include <algorithm>

namespace gen {

using tasp::Formula;
using tasp::Kind;

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

namespace {

bool coin(Rng& rng, int percent) { return uniform(rng, 0, 99) < percent; }

Formula leaf(Rng& rng, const FormulaShape& s) {
  if (s.constants && coin(rng, 12)) {
    std::vector<Kind> ks{Kind::Truth, Kind::Falsum};
    if (s.markers && s.past) ks.push_back(Kind::Initial);
    if (s.markers && s.future) ks.push_back(Kind::Final);
    switch (ks[uniform(rng, 0, static_cast<int>(ks.size()) - 1)]) {
      case Kind::Truth:
        return tasp::top();
      case Kind::Falsum:
        return tasp::bot();
      case Kind::Initial:
        return tasp::initial();
      default:
        return tasp::final_();
    }
  }
  return tasp::atom(s.atoms[uniform(rng, 0, static_cast<int>(s.atoms.size()) - 1)]);
}

std::vector<Kind> operators(const FormulaShape& s) {
  std::vector<Kind> ks{Kind::And, Kind::Or};
  if (s.implications) {
    ks.push_back(Kind::Implies);
    ks.push_back(Kind::Not);
    ks.push_back(Kind::Not);
  }
  if (s.future) {
    for (Kind k : {Kind::Next, Kind::WeakNext, Kind::Until, Kind::Release, Kind::Always, Kind::Eventually})
      ks.push_back(k);
    if (s.while_op && s.implications) ks.push_back(Kind::While);
  }
  if (s.past)
    for (Kind k : {Kind::Previous, Kind::WeakPrevious, Kind::Since, Kind::Trigger, Kind::AlwaysBefore,
                   Kind::EventuallyBefore})
      ks.push_back(k);
  return ks;
}

Formula build(Rng& rng, const FormulaShape& s, int depth, bool force) {
  if (depth <= 0 || (!force && coin(rng, 30))) return leaf(rng, s);
  auto ks = operators(s);
  Kind k = ks[uniform(rng, 0, static_cast<int>(ks.size()) - 1)];
  Formula a = build(rng, s, depth - 1, false);
  if (tasp::arity(k) == 1) return tasp::unary(k, a);
  return tasp::binary(k, a, build(rng, s, depth - 1, false));
}

}  // namespace

Formula formula(Rng& rng, const FormulaShape& s) { return build(rng, s, s.depth, false); }

Formula compound(Rng& rng, const FormulaShape& s) { return build(rng, s, std::max(1, s.depth), true); }

tasp::Trace trace(Rng& rng, const std::vector<std::string>& atoms, std::size_t lambda) {
  tasp::Trace t;
  for (std::size_t i = 0; i < lambda; ++i) {
    tasp::State st;
    for (const auto& a : atoms)
      if (coin(rng, 50)) st.insert(a);
    t.states.push_back(st);
  }
  return t;
}

tasp::HTTrace ht_trace(Rng& rng, const std::vector<std::string>& atoms, std::size_t lambda) {
  tasp::HTTrace m;
  m.t = trace(rng, atoms, lambda);
  for (const auto& st : m.t.states) {
    tasp::State h;
    for (const auto& a : st)
      if (coin(rng, 50)) h.insert(a);
    m.h.states.push_back(h);
  }
  return m;
}

namespace {

tasp::Literal literal(Rng& rng, const std::vector<std::string>& atoms, bool allow_prev) {
  tasp::Literal l;
  l.atom = atoms[uniform(rng, 0, static_cast<int>(atoms.size()) - 1)];
  l.negated = coin(rng, 35);
  l.previous = allow_prev && coin(rng, 40);
  return l;
}

}  // namespace

tasp::TemporalProgram program(Rng& rng, const ProgramShape& s) {
  tasp::TemporalProgram p;
  const int n = uniform(rng, 1, s.max_rules);
  for (int i = 0; i < n; ++i) {
    tasp::TemporalRule r;
    int c = uniform(rng, 0, s.final_rules ? 9 : 7);
    r.cls = c < 3 ? tasp::RuleClass::Initial : c < 8 ? tasp::RuleClass::Dynamic : tasp::RuleClass::Final;
    const bool dyn = r.cls == tasp::RuleClass::Dynamic;
    for (int j = uniform(rng, 0, 2); j > 0; --j) r.body.push_back(literal(rng, s.atoms, dyn));
    for (int j = uniform(rng, coin(rng, 80) ? 1 : 0, 2); j > 0; --j) {
      auto l = literal(rng, s.atoms, dyn && !s.present_centered);
      if (coin(rng, 60)) l.negated = false;
      r.head.push_back(l);
    }
    p.rules.push_back(r);
  }
  return p;
}

tasp::GroundProgram ground_program(Rng& rng, const std::vector<std::string>& atoms, int max_rules) {
  tasp::GroundProgram g;
  auto pick = [&]() { return tasp::ga(atoms[uniform(rng, 0, static_cast<int>(atoms.size()) - 1)]); };
  for (int i = uniform(rng, 1, max_rules); i > 0; --i) {
    tasp::GroundRule r;
    for (int j = uniform(rng, 0, 2); j > 0; --j) r.head.push_back(pick());
    if (coin(rng, 10)) r.neg_head.push_back(pick());
    for (int j = uniform(rng, 0, 2); j > 0; --j) r.pos.push_back(pick());
    for (int j = uniform(rng, 0, 2); j > 0; --j) r.neg.push_back(pick());
    g.rules.push_back(r);
  }
  return g;
}

namespace {

Formula rewrite_root(Rng& rng, const Formula& f, bool implication_free) {
  using namespace tasp;
  const Formula& a = f.lhs();
  const Formula& b = f.rhs();
  switch (f.kind()) {
    case Kind::And:
      if (coin(rng, 40)) return mk_and(b, a);
      if (b.kind() == Kind::Or && coin(rng, 50)) return mk_or(mk_and(a, b.lhs()), mk_and(a, b.rhs()));
      break;
    case Kind::Or:
      if (coin(rng, 40)) return mk_or(b, a);
      if (b.kind() == Kind::And && coin(rng, 50)) return mk_and(mk_or(a, b.lhs()), mk_or(a, b.rhs()));
      break;
    case Kind::Until:
      if (coin(rng, 50)) return mk_or(b, mk_and(a, next(f)));
      break;
    case Kind::Release:
      if (coin(rng, 50)) return mk_and(b, mk_or(a, wnext(f)));
      break;
    case Kind::Since:
      if (coin(rng, 50)) return mk_or(b, mk_and(a, prev(f)));
      break;
    case Kind::Trigger:
      if (coin(rng, 50)) return mk_and(b, mk_or(a, wprev(f)));
      break;
    case Kind::Always:
      if (coin(rng, 50)) return mk_and(a, wnext(f));
      break;
    case Kind::Eventually:
      if (coin(rng, 50)) return mk_or(a, next(f));
      break;
    case Kind::Next:
      if (a.kind() == Kind::And && coin(rng, 60)) return mk_and(next(a.lhs()), next(a.rhs()));
      if (a.kind() == Kind::Or && coin(rng, 60)) return mk_or(next(a.lhs()), next(a.rhs()));
      break;
    case Kind::WeakNext:
      if (a.kind() == Kind::And && coin(rng, 60)) return mk_and(wnext(a.lhs()), wnext(a.rhs()));
      if (a.kind() == Kind::Or && coin(rng, 60)) return mk_or(wnext(a.lhs()), wnext(a.rhs()));
      break;
    case Kind::Not:
      if (!implication_free && coin(rng, 30)) return neg(neg(f));
      break;
    default:
      break;
  }
  if (coin(rng, 15)) return coin(rng, 50) ? mk_or(f, mk_and(f, top())) : mk_and(f, mk_or(f, bot()));
  return f;
}

}  // namespace

Formula rewrite(Rng& rng, const Formula& f, bool implication_free) {
  Formula g = f;
  switch (tasp::arity(f.kind())) {
    case 1:
      g = tasp::unary(f.kind(), rewrite(rng, f.lhs(), implication_free));
      break;
    case 2:
      g = tasp::binary(f.kind(), rewrite(rng, f.lhs(), implication_free), rewrite(rng, f.rhs(), implication_free));
      break;
    default:
      break;
  }
  return rewrite_root(rng, g, implication_free);
}

}  // namespace gen
