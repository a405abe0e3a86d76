#include "tasp/normalform.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

namespace tasp {

Literal pos(const std::string& a) { return {a, false, false}; }
Literal negl(const std::string& a) { return {a, true, false}; }
Literal prevl(const std::string& a, bool negated) { return {a, negated, true}; }

const char* to_string(RuleClass c) {
  switch (c) {
    case RuleClass::Initial:
      return "initial";
    case RuleClass::Dynamic:
      return "dynamic";
    case RuleClass::FulfillBox:
      return "fulfill_box";
    case RuleClass::FulfillDia:
      return "fulfill_dia";
    case RuleClass::Final:
      return "final";
  }
  return "?";
}

namespace {

const std::string kTrueName = "#true";
const std::string kFalseName = "#false";

bool is_fulfillment(RuleClass c) { return c == RuleClass::FulfillBox || c == RuleClass::FulfillDia; }

std::string hex8(std::uint64_t h) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%08x", static_cast<unsigned>((h ^ (h >> 32)) & 0xffffffffu));
  return buf;
}

std::string tagged_name(const std::string& tag) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : tag) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return kLabelPrefix + hex8(h);
}

bool reserved_name(const std::string& a) {
  return a.rfind(kLabelPrefix, 0) == 0 || a.rfind("__", 0) == 0 || a.find("__p") != std::string::npos;
}

/// Literal over a label or a constant, used while building rules.
struct Term {
  Formula f;
  bool neg = false;
  bool prev = false;
};

Term term(const Formula& f, bool neg = false, bool prev = false) { return {label(f), neg, prev}; }
Term shift(Term t) {
  t.prev = true;
  return t;
}

/// -1 when the term is not constant.
int const_value(const Term& t) {
  if (t.f.kind() == Kind::Truth) return t.neg ? 0 : 1;
  if (t.f.kind() == Kind::Falsum) return t.neg ? 1 : 0;
  return -1;
}

Literal to_literal(const Term& t) { return {t.f.name(), t.neg, t.prev}; }

class Emitter {
 public:
  explicit Emitter(std::vector<TemporalRule>& out) : out_(out) {}

  void rule(RuleClass cls, const std::vector<Term>& body, const std::vector<Term>& head) {
    TemporalRule r;
    r.cls = cls;
    for (const auto& t : body) {
      int v = const_value(t);
      if (v == 1) continue;
      if (v == 0) return;
      Literal l = to_literal(t);
      if (std::find(r.body.begin(), r.body.end(), l) == r.body.end()) r.body.push_back(l);
    }
    for (const auto& t : head) {
      int v = const_value(t);
      if (v == 0) continue;
      if (v == 1) return;
      Literal l = to_literal(t);
      if (std::find(r.head.begin(), r.head.end(), l) == r.head.end()) r.head.push_back(l);
    }
    for (const auto& b : r.body) {
      Literal flip = b;
      flip.negated = !flip.negated;
      if (std::find(r.body.begin(), r.body.end(), flip) != r.body.end()) return;
      if (std::find(r.head.begin(), r.head.end(), b) != r.head.end()) return;
    }
    out_.push_back(std::move(r));
  }

  void always(const std::vector<Term>& body, const std::vector<Term>& head) {
    rule(RuleClass::Initial, body, head);
    rule(RuleClass::Dynamic, body, head);
  }

  void fulfill(RuleClass cls, const Formula& p, const Formula& q) {
    auto name = [](const Formula& f) {
      if (f.kind() == Kind::Truth) return kTrueName;
      if (f.kind() == Kind::Falsum) return kFalseName;
      return f.name();
    };
    Formula lp = label(p), lq = label(q);
    if (lq.kind() == Kind::Truth || lp.kind() == Kind::Falsum) return;
    TemporalRule r;
    r.cls = cls;
    r.p = name(lp);
    r.q = name(lq);
    out_.push_back(std::move(r));
  }

 private:
  std::vector<TemporalRule>& out_;
};

bool is_atomic(const Formula& f) {
  return f.kind() == Kind::Atom || f.kind() == Kind::Truth || f.kind() == Kind::Falsum;
}

void dedupe(std::vector<TemporalRule>& rules) {
  std::vector<TemporalRule> out;
  std::set<TemporalRule> seen;
  for (auto& r : rules)
    if (seen.insert(r).second) out.push_back(std::move(r));
  rules = std::move(out);
}

}  // namespace

std::set<std::string> TemporalProgram::atoms() const {
  std::set<std::string> s;
  for (const auto& r : rules) {
    for (const auto& l : r.body) s.insert(l.atom);
    for (const auto& l : r.head) s.insert(l.atom);
    if (is_fulfillment(r.cls)) {
      if (r.p != kTrueName && r.p != kFalseName) s.insert(r.p);
      if (r.q != kTrueName && r.q != kFalseName) s.insert(r.q);
    }
  }
  return s;
}

std::vector<TemporalRule> TemporalProgram::of(RuleClass c) const {
  std::vector<TemporalRule> out;
  for (const auto& r : rules)
    if (r.cls == c) out.push_back(r);
  return out;
}

std::string label_name(const Formula& f) { return kLabelPrefix + hex8(f.hash()); }

Formula label(const Formula& f) {
  if (is_atomic(f)) return f;
  return atom(label_name(f));
}

std::string final_label() { return label_name(neg(eventually(final_()))); }

Formula core_form(const Formula& f) {
  switch (f.kind()) {
    case Kind::Atom:
    case Kind::Truth:
    case Kind::Falsum:
      return f;
    case Kind::Initial:
      return implies(prev(top()), bot());
    case Kind::Final:
      return implies(next(top()), bot());
    case Kind::Not:
      return implies(core_form(f.lhs()), bot());
    case Kind::Iff: {
      Formula a = core_form(f.lhs()), b = core_form(f.rhs());
      return mk_and(implies(a, b), implies(b, a));
    }
    case Kind::WeakPrevious:
      return mk_or(prev(core_form(f.lhs())), core_form(initial()));
    case Kind::WeakNext:
      return mk_or(next(core_form(f.lhs())), core_form(final_()));
    case Kind::AlwaysBefore:
      return trigger(bot(), core_form(f.lhs()));
    case Kind::EventuallyBefore:
      return since(top(), core_form(f.lhs()));
    case Kind::Always:
      return release(bot(), core_form(f.lhs()));
    case Kind::Eventually:
      return until(top(), core_form(f.lhs()));
    case Kind::While:
      throw std::invalid_argument("while has no definition without a trace length");
    default:
      break;
  }
  if (arity(f.kind()) == 1) return unary(f.kind(), core_form(f.lhs()));
  return binary(f.kind(), core_form(f.lhs()), core_form(f.rhs()));
}

Formula unfold_while(const Formula& f, std::size_t lambda) {
  if (lambda == 0) throw std::invalid_argument("trace length must be at least 1");
  const int ar = arity(f.kind());
  if (ar == 0) return f;
  if (f.kind() != Kind::While) {
    if (ar == 1) return unary(f.kind(), unfold_while(f.lhs(), lambda));
    return binary(f.kind(), unfold_while(f.lhs(), lambda), unfold_while(f.rhs(), lambda));
  }
  Formula a = unfold_while(f.lhs(), lambda), b = unfold_while(f.rhs(), lambda);
  std::vector<Formula> parts{a};
  for (std::size_t d = 1; d < lambda; ++d) {
    std::vector<Formula> guard;
    for (std::size_t i = 0; i < d; ++i) {
      Formula g = b;
      for (std::size_t j = 0; j < i; ++j) g = next(g);
      guard.push_back(g);
    }
    Formula c = a;
    for (std::size_t j = 0; j < d; ++j) c = wnext(c);
    parts.push_back(implies(conj(guard), c));
  }
  return conj(parts);
}

std::vector<Formula> df(const Formula& mu) {
  Formula c = core_form(mu);
  if (is_atomic(c)) return {};
  Formula L = label(c);
  Formula A = label(c.lhs());
  Formula B = arity(c.kind()) == 2 ? label(c.rhs()) : Formula{};
  switch (c.kind()) {
    case Kind::And:
      return {always(iff(L, mk_and(A, B)))};
    case Kind::Or:
      return {always(iff(L, mk_or(A, B)))};
    case Kind::Implies:
      return {always(iff(L, implies(A, B)))};
    case Kind::Next:
      return {wnext(always(iff(prev(L), A))), always(implies(always(L), atom(final_label())))};
    case Kind::Previous:
      return {neg(L), wnext(always(iff(L, prev(A))))};
    case Kind::Until:
      return {wnext(always(iff(prev(L), mk_or(prev(B), mk_and(prev(A), L))))), always(implies(L, eventually(B))),
              always(implies(B, eventually(L)))};
    case Kind::Release:
      return {wnext(always(iff(prev(L), mk_and(prev(B), mk_or(prev(A), L))))), always(implies(always(B), L)),
              always(implies(always(L), B))};
    case Kind::Since:
      return {iff(L, B), wnext(always(iff(L, mk_or(B, mk_and(A, prev(L))))))};
    case Kind::Trigger:
      return {iff(L, B), wnext(always(iff(L, mk_and(B, mk_or(A, prev(L))))))};
    default:
      throw std::logic_error("unexpected connective in core form");
  }
}

std::vector<TemporalRule> df_star(const Formula& mu) {
  Formula c = core_form(mu);
  std::vector<TemporalRule> out;
  if (is_atomic(c)) return out;
  Emitter e(out);
  const Term L = term(c);
  const Term A = term(c.lhs());
  const Term B = arity(c.kind()) == 2 ? term(c.rhs()) : Term{};
  auto no = [](Term t) {
    t.neg = !t.neg;
    return t;
  };
  const auto D = RuleClass::Dynamic;
  const auto I = RuleClass::Initial;
  switch (c.kind()) {
    case Kind::And:
      e.always({L}, {A});
      e.always({L}, {B});
      e.always({A, B}, {L});
      break;
    case Kind::Or:
      e.always({L}, {A, B});
      e.always({A}, {L});
      e.always({B}, {L});
      break;
    case Kind::Implies:
      e.always({L, A}, {B});
      e.always({no(A)}, {L});
      e.always({B}, {L});
      e.always({}, {A, no(B), L});
      break;
    case Kind::Next:
      e.rule(D, {shift(L)}, {A});
      e.rule(D, {A}, {shift(L)});
      e.fulfill(RuleClass::FulfillBox, L.f, atom(final_label()));
      break;
    case Kind::Previous:
      e.rule(I, {L}, {});
      e.rule(D, {L}, {shift(A)});
      e.rule(D, {shift(A)}, {L});
      break;
    case Kind::Until:
      e.rule(D, {shift(L)}, {shift(B), shift(A)});
      e.rule(D, {shift(L)}, {shift(B), L});
      e.rule(D, {shift(B)}, {shift(L)});
      e.rule(D, {shift(A), L}, {shift(L)});
      e.fulfill(RuleClass::FulfillDia, L.f, B.f);
      e.fulfill(RuleClass::FulfillDia, B.f, L.f);
      break;
    case Kind::Release:
      e.rule(D, {shift(L)}, {shift(B)});
      e.rule(D, {shift(L)}, {shift(A), L});
      e.rule(D, {shift(B), shift(A)}, {shift(L)});
      e.rule(D, {shift(B), L}, {shift(L)});
      e.fulfill(RuleClass::FulfillBox, B.f, L.f);
      e.fulfill(RuleClass::FulfillBox, L.f, B.f);
      break;
    case Kind::Since:
      e.rule(I, {L}, {B});
      e.rule(I, {B}, {L});
      e.rule(D, {L}, {B, A});
      e.rule(D, {L}, {B, shift(L)});
      e.rule(D, {B}, {L});
      e.rule(D, {A, shift(L)}, {L});
      break;
    case Kind::Trigger:
      e.rule(I, {L}, {B});
      e.rule(I, {B}, {L});
      e.rule(D, {L}, {B});
      e.rule(D, {L}, {A, shift(L)});
      e.rule(D, {B, A}, {L});
      e.rule(D, {B, shift(L)}, {L});
      break;
    default:
      throw std::logic_error("unexpected connective in core form");
  }
  return out;
}

TemporalProgram sigma(const std::vector<Formula>& gamma, std::optional<std::size_t> lambda) {
  for (const auto& a : atoms_of(gamma))
    if (reserved_name(a)) throw std::invalid_argument("atom '" + a + "' uses a reserved name");
  TemporalProgram p;
  std::vector<Formula> cores;
  for (const auto& g : gamma) cores.push_back(core_form(lambda ? unfold_while(g, *lambda) : g));
  Emitter e(p.rules);
  for (const auto& c : cores) e.rule(RuleClass::Initial, {}, {term(c)});
  std::map<std::string, Formula> names;
  std::set<Formula> seen;
  for (const auto& c : cores)
    for (const auto& s : subformulas(c)) {
      if (is_atomic(s) || !seen.insert(s).second) continue;
      auto [it, fresh] = names.emplace(label_name(s), s);
      if (!fresh && it->second != s) throw std::logic_error("label collision for " + it->first);
      auto rs = df_star(s);
      p.rules.insert(p.rules.end(), rs.begin(), rs.end());
    }
  const std::string fin = final_label();
  bool uses_fin = false;
  for (const auto& r : p.rules)
    if (r.q == fin) uses_fin = true;
  if (uses_fin) {
    e.rule(RuleClass::Initial, {term(atom(fin))}, {});
    e.rule(RuleClass::Dynamic, {term(atom(fin))}, {});
  }
  dedupe(p.rules);
  return p;
}

TemporalProgram fulfillment_to_final(const TemporalProgram& p) {
  TemporalProgram out;
  Emitter e(out.rules);
  auto side = [](const std::string& n) {
    if (n == kTrueName) return term(top());
    if (n == kFalseName) return term(bot());
    return term(atom(n));
  };
  for (const auto& r : p.rules) {
    if (is_fulfillment(r.cls))
      e.rule(RuleClass::Final, {side(r.p)}, {side(r.q)});
    else
      out.rules.push_back(r);
  }
  dedupe(out.rules);
  return out;
}

bool is_present_centered(const TemporalProgram& p) {
  for (const auto& r : p.rules)
    for (const auto& l : r.head)
      if (l.previous) return false;
  return true;
}

namespace {

bool negation_only(const Formula& f) {
  if (f.kind() == Kind::Iff || f.kind() == Kind::While) return false;
  if (f.kind() == Kind::Implies && f.rhs().kind() != Kind::Falsum) return false;
  const int ar = arity(f.kind());
  if (ar >= 1 && !negation_only(f.lhs())) return false;
  if (ar >= 2 && f.kind() != Kind::Implies && !negation_only(f.rhs())) return false;
  return true;
}

bool kinds_within(const Formula& f, bool past) {
  switch (f.kind()) {
    case Kind::Atom:
    case Kind::Truth:
    case Kind::Falsum:
    case Kind::And:
    case Kind::Or:
    case Kind::Not:
    case Kind::Implies:
      break;
    case Kind::Initial:
    case Kind::Previous:
    case Kind::WeakPrevious:
    case Kind::Since:
    case Kind::Trigger:
    case Kind::AlwaysBefore:
    case Kind::EventuallyBefore:
      if (!past) return false;
      break;
    case Kind::Final:
    case Kind::Next:
    case Kind::WeakNext:
    case Kind::Until:
    case Kind::Release:
    case Kind::Always:
    case Kind::Eventually:
      if (past) return false;
      break;
    default:
      return false;
  }
  const int ar = arity(f.kind());
  if (ar >= 1 && !kinds_within(f.lhs(), past)) return false;
  if (ar >= 2 && !kinds_within(f.rhs(), past)) return false;
  return true;
}

enum class Scope { Initial, Always, Dynamic, Final };

struct RuleShape {
  Scope scope;
  Formula body;
  Formula head;
};

bool split_implication(const Formula& f, Formula& b, Formula& a) {
  if (f.kind() == Kind::Implies) {
    b = f.lhs();
    a = f.rhs();
    return true;
  }
  if (f.kind() == Kind::Not) {
    b = f.lhs();
    a = bot();
    return true;
  }
  return false;
}

RuleShape shape_of(const Formula& f) {
  Formula b, a;
  if (f.kind() == Kind::Always) {
    const Formula& g = f.lhs();
    Formula b2, a2;
    if (split_implication(g, b, a)) {
      if (b.kind() == Kind::Final && split_implication(a, b2, a2)) return {Scope::Final, b2, a2};
      return {Scope::Always, b, a};
    }
    return {Scope::Always, top(), g};
  }
  if (f.kind() == Kind::WeakNext && f.lhs().kind() == Kind::Always) {
    const Formula& g = f.lhs().lhs();
    if (split_implication(g, b, a)) return {Scope::Dynamic, b, a};
    return {Scope::Dynamic, top(), g};
  }
  if (split_implication(f, b, a)) return {Scope::Initial, b, a};
  return {Scope::Initial, top(), f};
}

bool shape_ok(const RuleShape& s) {
  return negation_only(s.body) && negation_only(s.head) && kinds_within(s.body, true) && kinds_within(s.head, false);
}

bool is_negation(const Formula& f) {
  return f.kind() == Kind::Not || (f.kind() == Kind::Implies && f.rhs().kind() == Kind::Falsum);
}

class Reducer {
 public:
  TemporalProgram run(const Formula& f) {
    for (const auto& a : atoms_of(f))
      if (reserved_name(a)) throw std::invalid_argument("atom '" + a + "' uses a reserved name");
    RuleShape s = shape_of(f);
    if (!shape_ok(s)) throw std::invalid_argument("formula is not a past-future rule");
    check_eventually(f, s.head);
    std::vector<Term> cond;
    for (const auto& c : conjuncts(s.body)) cond.push_back(define(c));
    head(s.scope, cond, s.head);
    dedupe(prog_.rules);
    return prog_;
  }

 private:
  static std::vector<Formula> conjuncts(const Formula& f) {
    if (f.kind() != Kind::And) return {f};
    auto a = conjuncts(f.lhs());
    auto b = conjuncts(f.rhs());
    a.insert(a.end(), b.begin(), b.end());
    return a;
  }

  void check_eventually(const Formula& f, const Formula& h) {
    std::map<std::string, int> total, under;
    std::function<void(const Formula&, std::map<std::string, int>&, bool)> count =
        [&](const Formula& g, std::map<std::string, int>& m, bool only_dia) {
          if (only_dia && g.kind() == Kind::Eventually) {
            if (g.lhs().kind() != Kind::Atom && !is_atomic(g.lhs()))
              throw std::invalid_argument("eventually in a rule head must apply to an atom");
            if (g.lhs().kind() == Kind::Atom) ++m[g.lhs().name()];
            return;
          }
          if (!only_dia && g.kind() == Kind::Atom) ++m[g.name()];
          const int ar = arity(g.kind());
          if (ar >= 1) count(g.lhs(), m, only_dia);
          if (ar >= 2) count(g.rhs(), m, only_dia);
        };
    count(f, total, false);
    count(h, under, true);
    for (const auto& [a, n] : under)
      if (total[a] != n)
        throw std::invalid_argument("atom '" + a + "' under eventually also occurs elsewhere in the rule");
  }

  Formula fresh(const std::string& tag, const Formula& f) {
    std::string base = tag + "/" + print(f);
    std::string name = tagged_name(base);
    for (int i = 1; used_.count(name); ++i) name = tagged_name(base + "#" + std::to_string(i));
    used_.insert(name);
    return atom(name);
  }

  Term define(const Formula& g) {
    if (is_atomic(g)) return term(g);
    auto it = defined_.find(g);
    if (it != defined_.end()) return it->second;
    Emitter e(prog_.rules);
    Term out;
    if (is_negation(g)) {
      Term x = define(g.lhs());
      int v = const_value(x);
      if (v >= 0) {
        out = term(v ? bot() : top());
      } else {
        if (x.neg) {
          Formula m = fresh("neg", g.lhs());
          e.always({x}, {term(m)});
          x = term(m);
        }
        out = x;
        out.neg = true;
      }
    } else {
      Formula L = fresh("def", g);
      out = term(L);
      const auto I = RuleClass::Initial;
      const auto D = RuleClass::Dynamic;
      Term X = arity(g.kind()) >= 1 ? define(g.lhs()) : Term{};
      Term Y = arity(g.kind()) >= 2 ? define(g.rhs()) : Term{};
      switch (g.kind()) {
        case Kind::And:
          e.always({X, Y}, {out});
          break;
        case Kind::Or:
          e.always({X}, {out});
          e.always({Y}, {out});
          break;
        case Kind::Initial:
          e.rule(I, {}, {out});
          break;
        case Kind::Previous:
          e.rule(D, {shift(X)}, {out});
          break;
        case Kind::WeakPrevious:
          e.rule(I, {}, {out});
          e.rule(D, {shift(X)}, {out});
          break;
        case Kind::Since:
          e.always({Y}, {out});
          e.rule(D, {X, shift(out)}, {out});
          break;
        case Kind::Trigger:
          e.rule(I, {Y}, {out});
          e.rule(D, {Y, X}, {out});
          e.rule(D, {Y, shift(out)}, {out});
          break;
        case Kind::AlwaysBefore:
          e.rule(I, {X}, {out});
          e.rule(D, {X, shift(out)}, {out});
          break;
        case Kind::EventuallyBefore:
          e.always({X}, {out});
          e.rule(D, {shift(out)}, {out});
          break;
        default:
          throw std::invalid_argument("unsupported connective in rule body");
      }
    }
    defined_.emplace(g, out);
    return out;
  }

  static bool clause(const Formula& f, std::vector<Term>& lits) {
    switch (f.kind()) {
      case Kind::Atom:
      case Kind::Truth:
      case Kind::Falsum:
        lits.push_back(term(f));
        return true;
      case Kind::Or:
        return clause(f.lhs(), lits) && clause(f.rhs(), lits);
      case Kind::Not:
      case Kind::Implies:
        if (is_negation(f) && is_atomic(f.lhs())) {
          lits.push_back(term(f.lhs(), true));
          return true;
        }
        return false;
      default:
        return false;
    }
  }

  static RuleClass cls_of(Scope s) {
    switch (s) {
      case Scope::Initial:
        return RuleClass::Initial;
      case Scope::Dynamic:
        return RuleClass::Dynamic;
      case Scope::Final:
        return RuleClass::Final;
      default:
        return RuleClass::Initial;
    }
  }

  void emit(Scope s, const std::vector<Term>& body, const std::vector<Term>& hd) {
    Emitter e(prog_.rules);
    if (s == Scope::Always)
      e.always(body, hd);
    else
      e.rule(cls_of(s), body, hd);
  }

  static std::vector<Term> shifted(const std::vector<Term>& c) {
    std::vector<Term> out;
    for (const auto& t : c) out.push_back(shift(t));
    return out;
  }

  void head(Scope s, const std::vector<Term>& cond, const Formula& a) {
    std::vector<Term> lits;
    if (clause(a, lits)) {
      emit(s, cond, lits);
      return;
    }
    if (a.kind() == Kind::And) {
      head(s, cond, a.lhs());
      head(s, cond, a.rhs());
      return;
    }
    if (s != Scope::Always) {
      Formula n = fresh("scope", a);
      emit(s, cond, {term(n)});
      head(Scope::Always, {term(n)}, a);
      return;
    }
    Emitter e(prog_.rules);
    const auto D = RuleClass::Dynamic;
    switch (a.kind()) {
      case Kind::Final:
        e.rule(D, shifted(cond), {});
        return;
      case Kind::Next:
      case Kind::WeakNext: {
        if (a.kind() == Kind::Next) e.rule(RuleClass::Final, cond, {});
        std::vector<Term> inner;
        if (clause(a.lhs(), inner)) {
          e.rule(D, shifted(cond), inner);
          return;
        }
        Formula n = fresh("next", a);
        e.rule(D, shifted(cond), {term(n)});
        head(Scope::Always, {term(n)}, a.lhs());
        return;
      }
      case Kind::Always: {
        Formula g = fresh("always", a);
        e.always(cond, {term(g)});
        e.rule(D, {shift(term(g))}, {term(g)});
        head(Scope::Always, {term(g)}, a.lhs());
        return;
      }
      case Kind::Eventually: {
        const Formula& x = a.lhs();
        if (x.kind() == Kind::Truth) return;
        if (x.kind() == Kind::Falsum) {
          e.always(cond, {});
          return;
        }
        Term at = term(x);
        Term d = term(fresh("pending", a));
        Term done = term(fresh("resolved", a));
        Term not_d = d;
        not_d.neg = true;
        e.always(cond, {at, d});
        e.rule(D, {shift(d)}, {at, d});
        e.rule(RuleClass::Final, {d}, {});
        std::vector<Term> c2 = cond;
        c2.push_back(not_d);
        e.always(c2, {done});
        e.rule(D, {shift(d), not_d}, {done});
        e.rule(D, {shift(done)}, {done});
        e.rule(D, {shift(done), at}, {});
        return;
      }
      default:
        throw std::invalid_argument("connective outside the supported head fragment: " + print(a));
    }
  }

  TemporalProgram prog_;
  std::map<Formula, Term> defined_;
  std::set<std::string> used_;
};

}  // namespace

bool is_past_future(const Formula& f) { return shape_ok(shape_of(f)); }

TemporalProgram past_future_reduce(const Formula& f) { return Reducer().run(f); }

namespace {

Formula literal_formula(const Literal& l) {
  Formula a;
  if (l.atom == kInitialAtom)
    a = initial();
  else if (l.atom == kFinalAtom)
    a = final_();
  else
    a = atom(l.atom);
  if (l.previous) a = prev(a);
  return l.negated ? neg(a) : a;
}

Formula side_formula(const std::string& n) {
  if (n == kTrueName) return top();
  if (n == kFalseName) return bot();
  return atom(n);
}

}  // namespace

Formula to_formula(const TemporalRule& r) {
  std::vector<Formula> b, h;
  for (const auto& l : r.body) b.push_back(literal_formula(l));
  for (const auto& l : r.head) h.push_back(literal_formula(l));
  Formula rule = implies(conj(b), disj(h));
  switch (r.cls) {
    case RuleClass::Initial:
      return rule;
    case RuleClass::Dynamic:
      return wnext(always(rule));
    case RuleClass::Final:
      return always(implies(final_(), rule));
    case RuleClass::FulfillBox:
      return always(implies(always(side_formula(r.p)), side_formula(r.q)));
    case RuleClass::FulfillDia:
      return always(implies(side_formula(r.p), eventually(side_formula(r.q))));
  }
  return rule;
}

std::vector<Formula> to_theory(const TemporalProgram& p) {
  std::vector<Formula> out;
  for (const auto& r : p.rules) out.push_back(to_formula(r));
  return out;
}

std::string print(const Literal& l) {
  std::string s = l.negated ? "not " : "";
  if (l.previous) s += '\'';
  return s + l.atom;
}

std::string print(const TemporalRule& r) {
  std::string s = to_string(r.cls);
  s += ": ";
  if (is_fulfillment(r.cls)) return s + r.p + " => " + r.q + ".";
  if (r.body.empty()) s += kTrueName;
  for (std::size_t i = 0; i < r.body.size(); ++i) s += (i ? ", " : "") + print(r.body[i]);
  s += " -> ";
  if (r.head.empty()) s += kFalseName;
  for (std::size_t i = 0; i < r.head.size(); ++i) s += (i ? " ; " : "") + print(r.head[i]);
  return s + ".";
}

std::string print(const TemporalProgram& p) {
  std::string s;
  for (const auto& r : p.rules) s += print(r) + "\n";
  return s;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

bool program_atom(const std::string& a) {
  if (a.empty()) return false;
  if (!(std::islower(static_cast<unsigned char>(a[0])) || a[0] == '_')) return false;
  for (char c : a)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

}  // namespace

TemporalProgram parse_program(const std::string& text) {
  TemporalProgram p;
  std::size_t offset = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t here = offset;
    offset += line.size() + 1;
    if (auto c = line.find('%'); c != std::string::npos) line = line.substr(0, c);
    line = trim(line);
    if (line.empty()) continue;
    if (line.back() != '.') throw ParseError("rule must end with '.'", here);
    line.pop_back();
    auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError("missing rule class", here);
    std::string kw = trim(line.substr(0, colon));
    std::string rest = line.substr(colon + 1);
    auto lit = [&](std::string t, bool allow_prev) {
      t = trim(t);
      Literal l;
      if (t.rfind("not ", 0) == 0) {
        l.negated = true;
        t = trim(t.substr(4));
      }
      if (!t.empty() && t[0] == '\'') {
        if (!allow_prev) throw ParseError("previous literal outside a dynamic rule", here);
        l.previous = true;
        t = t.substr(1);
      }
      if (!program_atom(t)) throw ParseError("invalid atom '" + t + "'", here);
      l.atom = t;
      return l;
    };
    if (kw == "fulfill_box" || kw == "fulfill_dia") {
      auto arrow = rest.find("=>");
      if (arrow == std::string::npos) throw ParseError("fulfillment rule needs '=>'", here);
      TemporalRule r;
      r.cls = kw == "fulfill_box" ? RuleClass::FulfillBox : RuleClass::FulfillDia;
      r.p = trim(rest.substr(0, arrow));
      r.q = trim(rest.substr(arrow + 2));
      for (const auto* s : {&r.p, &r.q})
        if (*s != kTrueName && *s != kFalseName && !program_atom(*s))
          throw ParseError("invalid atom '" + *s + "'", here);
      p.rules.push_back(r);
      continue;
    }
    std::vector<RuleClass> classes;
    if (kw == "initial")
      classes = {RuleClass::Initial};
    else if (kw == "dynamic")
      classes = {RuleClass::Dynamic};
    else if (kw == "final")
      classes = {RuleClass::Final};
    else if (kw == "always")
      classes = {RuleClass::Initial, RuleClass::Dynamic};
    else
      throw ParseError("unknown rule class '" + kw + "'", here);
    auto arrow = rest.find("->");
    if (arrow == std::string::npos) throw ParseError("rule needs '->'", here);
    std::string body = trim(rest.substr(0, arrow)), hd = trim(rest.substr(arrow + 2));
    TemporalRule r;
    const bool allow_prev = kw == "dynamic";
    if (!body.empty() && body != kTrueName)
      for (const auto& t : split(body, ',')) r.body.push_back(lit(t, allow_prev));
    if (!hd.empty() && hd != kFalseName)
      for (const auto& t : split(hd, ';')) r.head.push_back(lit(t, allow_prev));
    for (auto c : classes) {
      r.cls = c;
      p.rules.push_back(r);
    }
  }
  return p;
}

}  // namespace tasp
