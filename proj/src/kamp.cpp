#include "tasp/kamp.hpp"

#include <functional>
#include <optional>

namespace tasp {

FoTerm FoTerm::variable(const std::string& name) {
  FoTerm t;
  t.is_var = true;
  t.var = name;
  return t;
}

FoTerm FoTerm::constant(int value) {
  FoTerm t;
  t.value = value;
  return t;
}

FoTerm FoTerm::plus1() const {
  FoTerm t = *this;
  t.steps.push_back(+1);
  return t;
}

FoTerm FoTerm::minus1() const {
  FoTerm t = *this;
  t.steps.push_back(-1);
  return t;
}

struct FoFormula::Node {
  FoKind kind;
  std::string name;
  FoTerm t1;
  FoTerm t2;
  std::vector<FoFormula> kids;
};

FoFormula FoFormula::pred(const std::string& name, FoTerm t) {
  FoFormula f;
  f.p_ = std::make_shared<Node>(Node{FoKind::Pred, name, std::move(t), {}, {}});
  return f;
}

FoFormula FoFormula::eq(FoTerm a, FoTerm b) {
  FoFormula f;
  f.p_ = std::make_shared<Node>(Node{FoKind::Eq, "", std::move(a), std::move(b), {}});
  return f;
}

FoFormula FoFormula::lt(FoTerm a, FoTerm b) {
  FoFormula f;
  f.p_ = std::make_shared<Node>(Node{FoKind::Lt, "", std::move(a), std::move(b), {}});
  return f;
}

FoFormula FoFormula::le(FoTerm a, FoTerm b) {
  FoFormula f;
  f.p_ = std::make_shared<Node>(Node{FoKind::Le, "", std::move(a), std::move(b), {}});
  return f;
}

FoFormula FoFormula::top() {
  FoFormula f;
  f.p_ = std::make_shared<Node>(Node{FoKind::Top, "", {}, {}, {}});
  return f;
}

FoFormula FoFormula::bot() {
  FoFormula f;
  f.p_ = std::make_shared<Node>(Node{FoKind::Bot, "", {}, {}, {}});
  return f;
}

FoFormula FoFormula::conj(FoFormula a, FoFormula b) {
  FoFormula f;
  f.p_ = std::make_shared<Node>(Node{FoKind::And, "", {}, {}, {std::move(a), std::move(b)}});
  return f;
}

FoFormula FoFormula::disj(FoFormula a, FoFormula b) {
  FoFormula f;
  f.p_ = std::make_shared<Node>(Node{FoKind::Or, "", {}, {}, {std::move(a), std::move(b)}});
  return f;
}

FoFormula FoFormula::implies(FoFormula a, FoFormula b) {
  FoFormula f;
  f.p_ = std::make_shared<Node>(Node{FoKind::Implies, "", {}, {}, {std::move(a), std::move(b)}});
  return f;
}

FoFormula FoFormula::neg(FoFormula a) { return implies(std::move(a), bot()); }

FoFormula FoFormula::exists(const std::string& var, FoFormula body) {
  FoFormula f;
  f.p_ = std::make_shared<Node>(Node{FoKind::Exists, var, {}, {}, {std::move(body)}});
  return f;
}

FoFormula FoFormula::forall(const std::string& var, FoFormula body) {
  FoFormula f;
  f.p_ = std::make_shared<Node>(Node{FoKind::Forall, var, {}, {}, {std::move(body)}});
  return f;
}

FoKind FoFormula::kind() const { return p_->kind; }
const std::string& FoFormula::name() const { return p_->name; }
const FoTerm& FoFormula::t1() const { return p_->t1; }
const FoTerm& FoFormula::t2() const { return p_->t2; }
const FoFormula& FoFormula::lhs() const { return p_->kids.at(0); }
const FoFormula& FoFormula::rhs() const { return p_->kids.at(1); }

std::string print(const FoTerm& t) {
  std::string out = t.is_var ? t.var : std::to_string(t.value);
  for (int s : t.steps) out += s > 0 ? "+1" : "-1";
  return out;
}

std::string print(const FoFormula& f) {
  switch (f.kind()) {
    case FoKind::Pred:
      return f.name() + "(" + print(f.t1()) + ")";
    case FoKind::Eq:
      return print(f.t1()) + " = " + print(f.t2());
    case FoKind::Lt:
      return print(f.t1()) + " < " + print(f.t2());
    case FoKind::Le:
      return print(f.t1()) + " <= " + print(f.t2());
    case FoKind::Top:
      return "#true";
    case FoKind::Bot:
      return "#false";
    case FoKind::And:
      return "(" + print(f.lhs()) + " & " + print(f.rhs()) + ")";
    case FoKind::Or:
      return "(" + print(f.lhs()) + " | " + print(f.rhs()) + ")";
    case FoKind::Implies:
      if (f.rhs().kind() == FoKind::Bot) return "~" + print(f.lhs());
      return "(" + print(f.lhs()) + " -> " + print(f.rhs()) + ")";
    case FoKind::Exists:
    case FoKind::Forall: {
      std::string body = print(f.lhs());
      FoKind bk = f.lhs().kind();
      bool wrapped = bk == FoKind::And || bk == FoKind::Or || (bk == FoKind::Implies && f.lhs().rhs().kind() != FoKind::Bot);
      if (!wrapped) body = "(" + body + ")";
      return (f.kind() == FoKind::Exists ? "exists " : "forall ") + f.name() + " " + body;
    }
  }
  return "";
}

// ---------------------------------------------------------------- translation

namespace {

using F = FoFormula;

F tr(const Formula& f, const FoTerm& k, int depth) {
  auto var = [&](int d) { return "x" + std::to_string(d); };
  const std::string x = var(depth), y = var(depth + 1);
  const FoTerm X = FoTerm::variable(x), Y = FoTerm::variable(y);
  switch (f.kind()) {
    case Kind::Atom:
      return F::pred(f.name(), k);
    case Kind::Truth:
      return F::top();
    case Kind::Falsum:
      return F::bot();
    case Kind::And:
      return F::conj(tr(f.lhs(), k, depth), tr(f.rhs(), k, depth));
    case Kind::Or:
      return F::disj(tr(f.lhs(), k, depth), tr(f.rhs(), k, depth));
    case Kind::Implies:
      return F::implies(tr(f.lhs(), k, depth), tr(f.rhs(), k, depth));
    case Kind::Not:
      return F::neg(tr(f.lhs(), k, depth));
    case Kind::Iff: {
      F a = tr(f.lhs(), k, depth), b = tr(f.rhs(), k, depth);
      return F::conj(F::implies(a, b), F::implies(b, a));
    }
    case Kind::Next:
      return F::exists(x, F::conj(F::eq(X, k.plus1()), tr(f.lhs(), X, depth + 1)));
    case Kind::Previous:
      return F::exists(x, F::conj(F::eq(X, k.minus1()), tr(f.lhs(), X, depth + 1)));
    case Kind::Until:
      return F::exists(
          x, F::conj(F::conj(F::le(k, X), tr(f.rhs(), X, depth + 1)),
                     F::forall(y, F::implies(F::conj(F::le(k, Y), F::lt(Y, X)), tr(f.lhs(), Y, depth + 2)))));
    case Kind::Release:
      return F::forall(
          x, F::implies(F::le(k, X),
                        F::disj(tr(f.rhs(), X, depth + 1),
                                F::exists(y, F::conj(F::conj(F::le(k, Y), F::lt(Y, X)), tr(f.lhs(), Y, depth + 2))))));
    case Kind::While:
      return F::forall(
          x, F::implies(F::conj(F::le(k, X), F::forall(y, F::implies(F::conj(F::le(k, Y), F::lt(Y, X)),
                                                                     tr(f.rhs(), Y, depth + 2)))),
                        tr(f.lhs(), X, depth + 1)));
    case Kind::Since:
      return F::exists(
          x, F::conj(F::conj(F::le(X, k), tr(f.rhs(), X, depth + 1)),
                     F::forall(y, F::implies(F::conj(F::lt(X, Y), F::le(Y, k)), tr(f.lhs(), Y, depth + 2)))));
    case Kind::Trigger:
      return F::forall(
          x, F::implies(F::le(X, k),
                        F::disj(tr(f.rhs(), X, depth + 1),
                                F::exists(y, F::conj(F::conj(F::lt(X, Y), F::le(Y, k)), tr(f.lhs(), Y, depth + 2))))));
    case Kind::Initial:
      return F::neg(F::exists(x, F::eq(X, k.minus1())));
    case Kind::WeakPrevious:
      return F::forall(x, F::implies(F::eq(X, k.minus1()), tr(f.lhs(), X, depth + 1)));
    case Kind::EventuallyBefore:
      return F::exists(x, F::conj(F::le(X, k), tr(f.lhs(), X, depth + 1)));
    case Kind::AlwaysBefore:
      return F::forall(x, F::implies(F::le(X, k), tr(f.lhs(), X, depth + 1)));
    case Kind::Final:
      return F::neg(F::exists(x, F::eq(X, k.plus1())));
    case Kind::WeakNext:
      return F::forall(x, F::implies(F::eq(X, k.plus1()), tr(f.lhs(), X, depth + 1)));
    case Kind::Eventually:
      return F::exists(x, F::conj(F::le(k, X), tr(f.lhs(), X, depth + 1)));
    case Kind::Always:
      return F::forall(x, F::implies(F::le(k, X), tr(f.lhs(), X, depth + 1)));
  }
  throw std::logic_error("unknown connective");
}

}  // namespace

FoFormula kamp_translate(const Formula& f, const FoTerm& k) {
  int depth = 0;
  if (k.is_var && k.var.size() > 1 && k.var[0] == 'x') depth = std::stoi(k.var.substr(1)) + 1;
  return tr(f, k, depth);
}

FoFormula kamp_translate(const Formula& f, int k) { return tr(f, FoTerm::constant(k), 0); }

// ---------------------------------------------------------------- evaluation

MhtInterpretation corresponding(const HTTrace& m) {
  MhtInterpretation out;
  out.lambda = m.length();
  for (std::size_t i = 0; i < m.length(); ++i) {
    for (const auto& a : m.h.states[i]) out.h.emplace(a, static_cast<int>(i));
    for (const auto& a : m.t.states[i]) out.t.emplace(a, static_cast<int>(i));
  }
  return out;
}

HTTrace corresponding(const MhtInterpretation& m) {
  HTTrace out;
  out.h.states.resize(m.lambda);
  out.t.states.resize(m.lambda);
  for (const auto& [a, i] : m.h) out.h.states.at(i).insert(a);
  for (const auto& [a, i] : m.t) out.t.states.at(i).insert(a);
  return out;
}

namespace {

constexpr int kUndef = -1;

struct MhtEval {
  const MhtInterpretation& m;
  FoEnv env;

  int term(const FoTerm& t) const {
    int v;
    if (t.is_var) {
      auto it = env.find(t.var);
      if (it == env.end()) throw std::invalid_argument("unbound variable " + t.var);
      v = it->second;
    } else {
      v = t.value >= 0 && t.value < static_cast<int>(m.lambda) ? t.value : kUndef;
    }
    for (int s : t.steps) {
      if (v == kUndef) break;
      v += s;
      if (v < 0 || v >= static_cast<int>(m.lambda)) v = kUndef;
    }
    return v;
  }

  bool sat(const FoFormula& f, bool here) {
    switch (f.kind()) {
      case FoKind::Pred: {
        int v = term(f.t1());
        if (v == kUndef) return false;
        const auto& x = here ? m.h : m.t;
        return x.count({f.name(), v}) > 0;
      }
      case FoKind::Eq: {
        int a = term(f.t1()), b = term(f.t2());
        return a != kUndef && b != kUndef && a == b;
      }
      case FoKind::Lt: {
        int a = term(f.t1()), b = term(f.t2());
        return a != kUndef && b != kUndef && a < b;
      }
      case FoKind::Le: {
        int a = term(f.t1()), b = term(f.t2());
        return a != kUndef && b != kUndef && a <= b;
      }
      case FoKind::Top:
        return true;
      case FoKind::Bot:
        return false;
      case FoKind::And:
        return sat(f.lhs(), here) && sat(f.rhs(), here);
      case FoKind::Or:
        return sat(f.lhs(), here) || sat(f.rhs(), here);
      case FoKind::Implies: {
        bool ok = !sat(f.lhs(), false) || sat(f.rhs(), false);
        if (here) ok = ok && (!sat(f.lhs(), true) || sat(f.rhs(), true));
        return ok;
      }
      case FoKind::Exists:
      case FoKind::Forall: {
        const bool ex = f.kind() == FoKind::Exists;
        auto saved = env.find(f.name()) != env.end() ? std::optional<int>(env[f.name()]) : std::nullopt;
        bool result = !ex;
        for (int d = kUndef; d < static_cast<int>(m.lambda); ++d) {
          env[f.name()] = d;
          bool r = sat(f.lhs(), here);
          if (ex && r) {
            result = true;
            break;
          }
          if (!ex && !r) {
            result = false;
            break;
          }
        }
        if (saved) env[f.name()] = *saved;
        else env.erase(f.name());
        return result;
      }
    }
    return false;
  }
};

}  // namespace

bool mht_evaluate(const MhtInterpretation& m, const FoFormula& f, const FoEnv& env) {
  for (const auto& [a, i] : m.h)
    if (!m.t.count({a, i})) throw std::invalid_argument("interpretation violates H <= T");
  MhtEval ev{m, env};
  return ev.sat(f, true);
}

std::vector<Trace> mht_equilibrium_models(const Formula& f, const Alphabet& alpha, std::size_t lambda,
                                          const Budget& b) {
  Alphabet a = alpha.merged(Alphabet(atoms_of(f)));
  FoFormula tr0 = kamp_translate(f, 0);
  std::vector<Trace> out;
  MaskTrace current;
  bool candidate = false;
  bool beaten = false;
  auto flush = [&]() {
    if (candidate && !beaten) out.push_back(from_mask(current, a));
  };
  for_each_ht_trace(
      a, lambda,
      [&](const MaskTrace& h, const MaskTrace& t) {
        if (t != current) {
          flush();
          current = t;
          candidate = mht_evaluate(corresponding(HTTrace{from_mask(t, a), from_mask(t, a)}), tr0);
          beaten = false;
        }
        if (!candidate || beaten || h == t) return;
        if (mht_evaluate(corresponding(HTTrace{from_mask(h, a), from_mask(t, a)}), tr0)) beaten = true;
      },
      b);
  flush();
  return out;
}

}  // namespace tasp
