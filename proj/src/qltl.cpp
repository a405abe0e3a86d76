#include "tasp/qltl.hpp"

#include <map>

#include "tasp/semantics.hpp"
#include "tasp/star.hpp"

namespace tasp {

struct QFormula::Node {
  QKind qkind;
  Kind kind = Kind::Falsum;
  Formula formula;
  std::string var;
  std::vector<QFormula> kids;
};

QFormula QFormula::leaf(Formula f) {
  QFormula q;
  q.p_ = std::make_shared<Node>(Node{QKind::Leaf, f.kind(), std::move(f), "", {}});
  return q;
}

QFormula QFormula::op(Kind k, QFormula a) {
  if (arity(k) != 1) throw std::invalid_argument("connective is not unary");
  QFormula q;
  q.p_ = std::make_shared<Node>(Node{QKind::Op, k, {}, "", {std::move(a)}});
  return q;
}

QFormula QFormula::op(Kind k, QFormula a, QFormula b) {
  if (arity(k) != 2) throw std::invalid_argument("connective is not binary");
  QFormula q;
  q.p_ = std::make_shared<Node>(Node{QKind::Op, k, {}, "", {std::move(a), std::move(b)}});
  return q;
}

QFormula QFormula::exists(const std::string& var, QFormula body) {
  QFormula q;
  q.p_ = std::make_shared<Node>(Node{QKind::Exists, Kind::Falsum, {}, var, {std::move(body)}});
  return q;
}

QFormula QFormula::forall(const std::string& var, QFormula body) {
  QFormula q;
  q.p_ = std::make_shared<Node>(Node{QKind::Forall, Kind::Falsum, {}, var, {std::move(body)}});
  return q;
}

QFormula::QKind QFormula::qkind() const { return p_->qkind; }
Kind QFormula::kind() const { return p_->kind; }
const Formula& QFormula::formula() const { return p_->formula; }
const std::string& QFormula::var() const { return p_->var; }
const QFormula& QFormula::lhs() const { return p_->kids.at(0); }
const QFormula& QFormula::rhs() const { return p_->kids.at(1); }

std::set<std::string> QFormula::free_atoms() const {
  switch (qkind()) {
    case QKind::Leaf:
      return atoms_of(formula());
    case QKind::Exists:
    case QKind::Forall: {
      auto s = lhs().free_atoms();
      s.erase(var());
      return s;
    }
    case QKind::Op: {
      auto s = lhs().free_atoms();
      if (p_->kids.size() > 1) {
        auto t = rhs().free_atoms();
        s.insert(t.begin(), t.end());
      }
      return s;
    }
  }
  return {};
}

std::set<std::string> QFormula::bound_atoms() const {
  std::set<std::string> s;
  if (qkind() == QKind::Leaf) return s;
  if (qkind() != QKind::Op) s.insert(var());
  for (const auto& k : p_->kids) {
    auto t = k.bound_atoms();
    s.insert(t.begin(), t.end());
  }
  return s;
}

namespace {

void print_rec(const QFormula& f, std::string& out) {
  switch (f.qkind()) {
    case QFormula::QKind::Leaf:
      out += print(f.formula());
      return;
    case QFormula::QKind::Exists:
    case QFormula::QKind::Forall:
      out += f.qkind() == QFormula::QKind::Exists ? "exists " : "forall ";
      out += f.var();
      out += " (";
      print_rec(f.lhs(), out);
      out += ')';
      return;
    case QFormula::QKind::Op: {
      Formula x = atom("x"), y = atom("y");
      std::string skel = arity(f.kind()) == 1 ? print(unary(f.kind(), x)) : print(binary(f.kind(), x, y));
      std::string lhs, rhs;
      print_rec(f.lhs(), lhs);
      if (arity(f.kind()) == 2) print_rec(f.rhs(), rhs);
      for (char c : skel) {
        if (c == 'x') out += lhs;
        else if (c == 'y') out += rhs;
        else out += c;
      }
      return;
    }
  }
}

using Bits = std::vector<char>;

Bits combine(Kind k, const Bits& A, const Bits& B) {
  const std::size_t n = A.size();
  Bits r(n, 0);
  switch (k) {
    case Kind::Not:
      for (std::size_t i = 0; i < n; ++i) r[i] = !A[i];
      break;
    case Kind::And:
      for (std::size_t i = 0; i < n; ++i) r[i] = A[i] && B[i];
      break;
    case Kind::Or:
      for (std::size_t i = 0; i < n; ++i) r[i] = A[i] || B[i];
      break;
    case Kind::Implies:
      for (std::size_t i = 0; i < n; ++i) r[i] = !A[i] || B[i];
      break;
    case Kind::Iff:
      for (std::size_t i = 0; i < n; ++i) r[i] = A[i] == B[i];
      break;
    case Kind::Previous:
      for (std::size_t i = 1; i < n; ++i) r[i] = A[i - 1];
      break;
    case Kind::WeakPrevious:
      for (std::size_t i = 0; i < n; ++i) r[i] = i == 0 || A[i - 1];
      break;
    case Kind::Next:
      for (std::size_t i = 0; i + 1 < n; ++i) r[i] = A[i + 1];
      break;
    case Kind::WeakNext:
      for (std::size_t i = 0; i < n; ++i) r[i] = i + 1 == n || A[i + 1];
      break;
    case Kind::AlwaysBefore:
      for (std::size_t i = 0; i < n; ++i) r[i] = A[i] && (i == 0 || r[i - 1]);
      break;
    case Kind::EventuallyBefore:
      for (std::size_t i = 0; i < n; ++i) r[i] = A[i] || (i > 0 && r[i - 1]);
      break;
    case Kind::Always:
      for (std::size_t i = n; i-- > 0;) r[i] = A[i] && (i + 1 == n || r[i + 1]);
      break;
    case Kind::Eventually:
      for (std::size_t i = n; i-- > 0;) r[i] = A[i] || (i + 1 < n && r[i + 1]);
      break;
    case Kind::Since:
      for (std::size_t i = 0; i < n; ++i) r[i] = B[i] || (A[i] && i > 0 && r[i - 1]);
      break;
    case Kind::Trigger:
      for (std::size_t i = 0; i < n; ++i) r[i] = B[i] && (A[i] || i == 0 || r[i - 1]);
      break;
    case Kind::Until:
      for (std::size_t i = n; i-- > 0;) r[i] = B[i] || (A[i] && i + 1 < n && r[i + 1]);
      break;
    case Kind::Release:
      for (std::size_t i = n; i-- > 0;) r[i] = B[i] && (A[i] || i + 1 == n || r[i + 1]);
      break;
    case Kind::While:
      for (std::size_t i = n; i-- > 0;) r[i] = A[i] && (!B[i] || i + 1 == n || r[i + 1]);
      break;
    default:
      throw std::logic_error("unexpected connective in quantified formula");
  }
  return r;
}

using Cache = std::map<const Formula*, std::unique_ptr<Evaluator>>;

Bits eval(const QFormula& f, const MaskTrace& t, const Alphabet& a, Cache& cache) {
  switch (f.qkind()) {
    case QFormula::QKind::Leaf: {
      auto& slot = cache[&f.formula()];
      if (!slot) slot = std::make_unique<Evaluator>(f.formula(), a);
      Evaluator& ev = *slot;
      ev.run_total(t);
      Bits r(t.size());
      for (std::size_t k = 0; k < t.size(); ++k) r[k] = ev.here(k);
      return r;
    }
    case QFormula::QKind::Op: {
      Bits A = eval(f.lhs(), t, a, cache);
      Bits B = arity(f.kind()) == 2 ? eval(f.rhs(), t, a, cache) : Bits(t.size(), 0);
      return combine(f.kind(), A, B);
    }
    case QFormula::QKind::Exists:
    case QFormula::QKind::Forall: {
      const bool ex = f.qkind() == QFormula::QKind::Exists;
      const std::uint32_t bit = 1u << a.index_of(f.var());
      const std::size_t n = t.size();
      Bits acc(n, ex ? 0 : 1);
      MaskTrace v = t;
      for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << n); ++pick) {
        for (std::size_t i = 0; i < n; ++i) v[i] = (t[i] & ~bit) | ((pick >> i & 1u) ? bit : 0u);
        Bits r = eval(f.lhs(), v, a, cache);
        for (std::size_t i = 0; i < n; ++i) acc[i] = ex ? (acc[i] || r[i]) : (acc[i] && r[i]);
      }
      return acc;
    }
  }
  return {};
}

}  // namespace

std::string print(const QFormula& f) {
  std::string out;
  print_rec(f, out);
  return out;
}

std::vector<Trace> variants(const Trace& t, const std::set<std::string>& x) {
  std::set<std::string> all(x.begin(), x.end());
  for (const auto& s : t.states) all.insert(s.begin(), s.end());
  Alphabet a(all);
  MaskTrace base = to_mask(t, a);
  std::uint32_t xm = 0;
  for (const auto& v : x) xm |= 1u << a.index_of(v);
  std::vector<Trace> out;
  const std::size_t n = t.length();
  MaskTrace cur(n, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      out.push_back(from_mask(cur, a));
      return;
    }
    for (std::uint32_t sub = 0;; sub = (sub - xm) & xm) {
      cur[i] = (base[i] & ~xm) | sub;
      rec(i + 1);
      if (sub == xm) break;
    }
  };
  rec(0);
  return out;
}

bool qltl_satisfies(const Trace& t, std::size_t k, const QFormula& f) {
  if (t.length() == 0) throw std::invalid_argument("empty trace");
  if (k >= t.length()) throw std::out_of_range("time point outside trace");
  std::set<std::string> all = f.free_atoms();
  auto bound = f.bound_atoms();
  all.insert(bound.begin(), bound.end());
  for (const auto& s : t.states) all.insert(s.begin(), s.end());
  Alphabet a(all);
  if (a.size() > 31) throw BudgetExceeded("too many atoms for quantified evaluation");
  Cache cache;
  return eval(f, to_mask(t, a), a, cache)[k] != 0;
}

Formula primed_leq(const Alphabet& a) { return ax_primed(a); }

Formula primed_lt(const Alphabet& a) {
  std::vector<Formula> strict;
  for (const auto& x : a.atoms()) strict.push_back(eventually(mk_and(neg(atom(primed(x))), atom(x))));
  return mk_and(primed_leq(a), disj(strict));
}

QFormula build_sm(const Formula& f, const Alphabet& alpha) {
  Alphabet a = alpha.empty() ? Alphabet(atoms_of(f)) : alpha.merged(Alphabet(atoms_of(f)));
  QFormula body = QFormula::leaf(mk_and(primed_lt(a), star(f)));
  const auto& atoms = a.atoms();
  for (auto it = atoms.rbegin(); it != atoms.rend(); ++it) body = QFormula::exists(primed(*it), body);
  return QFormula::op(Kind::And, QFormula::leaf(f), QFormula::op(Kind::Not, body));
}

std::vector<Trace> ts_models_via_sm(const Formula& f, const Alphabet& alpha, std::size_t lambda, const Budget& b) {
  if (lambda == 0) throw std::invalid_argument("trace length must be at least 1");
  Alphabet a = alpha.merged(Alphabet(atoms_of(f)));
  if (static_cast<long long>(a.size()) * static_cast<long long>(lambda) > b.ht_slots)
    throw BudgetExceeded("quantified enumeration exceeds the HT budget");
  QFormula sm = build_sm(f, a);
  Alphabet ext = extended_alphabet(a);
  std::vector<Trace> out;
  Cache cache;
  for_each_trace(
      a, lambda,
      [&](const MaskTrace& m) {
        Trace t = from_mask(m, a);
        MaskTrace em = to_mask(t, ext);
        if (eval(sm, em, ext, cache)[0]) out.push_back(t);
      },
      b);
  return out;
}

}  // namespace tasp
