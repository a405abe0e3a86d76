#include "tasp/semantics.hpp"

#include <algorithm>
#include <unordered_map>

namespace tasp {

namespace {

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

Alphabet merged_alphabet(const Formula& f, const Trace& t) {
  std::set<std::string> s = atoms_of(f);
  for (const auto& st : t.states) s.insert(st.begin(), st.end());
  return Alphabet(s);
}

void check_point(std::size_t k, std::size_t lambda) {
  if (lambda == 0) throw std::invalid_argument("empty trace");
  if (k >= lambda) throw std::out_of_range("time point " + std::to_string(k) + " outside trace of length " +
                                           std::to_string(lambda));
}

}  // namespace

Evaluator::Evaluator(const Formula& f, const Alphabet& a) : alphabet_(a) {
  Formula e = expand_derived(f);
  std::unordered_map<Formula, int, FormulaHash> index;
  for (const auto& g : subformulas(e)) {
    Op op{g.kind()};
    if (g.kind() == Kind::Atom) op.atom = alphabet_.index_of(g.name());
    int ar = arity(g.kind());
    if (ar >= 1) op.a = index.at(g.lhs());
    if (ar >= 2) op.b = index.at(g.rhs());
    index.emplace(g, static_cast<int>(ops_.size()));
    ops_.push_back(op);
  }
  root_ = ops_.size() - 1;
}

void Evaluator::level(const MaskTrace& x, std::vector<char>& out, bool here_level) {
  const std::size_t n = lambda_;
  out.assign(ops_.size() * n, 0);
  for (std::size_t id = 0; id < ops_.size(); ++id) {
    const Op& op = ops_[id];
    char* r = &out[id * n];
    const char* A = op.a >= 0 ? &out[op.a * n] : nullptr;
    const char* B = op.b >= 0 ? &out[op.b * n] : nullptr;
    const char* TA = here_level && op.a >= 0 ? &t_[op.a * n] : nullptr;
    const char* TB = here_level && op.b >= 0 ? &t_[op.b * n] : nullptr;
    switch (op.kind) {
      case Kind::Atom:
        for (std::size_t k = 0; k < n; ++k) r[k] = op.atom >= 0 && (x[k] >> op.atom & 1u);
        break;
      case Kind::Falsum:
        break;
      case Kind::Truth:
        for (std::size_t k = 0; k < n; ++k) r[k] = 1;
        break;
      case Kind::And:
        for (std::size_t k = 0; k < n; ++k) r[k] = A[k] && B[k];
        break;
      case Kind::Or:
        for (std::size_t k = 0; k < n; ++k) r[k] = A[k] || B[k];
        break;
      case Kind::Implies:
        for (std::size_t k = 0; k < n; ++k) {
          r[k] = !A[k] || B[k];
          if (here_level) r[k] = r[k] && (!TA[k] || TB[k]);
        }
        break;
      case Kind::Previous:
        for (std::size_t k = 1; k < n; ++k) r[k] = A[k - 1];
        break;
      case Kind::Next:
        for (std::size_t k = 0; k + 1 < n; ++k) r[k] = A[k + 1];
        break;
      case Kind::Since:
        for (std::size_t k = 0; k < n; ++k) r[k] = B[k] || (A[k] && k > 0 && r[k - 1]);
        break;
      case Kind::Trigger:
        for (std::size_t k = 0; k < n; ++k) r[k] = B[k] && (A[k] || k == 0 || r[k - 1]);
        break;
      case Kind::Until:
        for (std::size_t k = n; k-- > 0;) r[k] = B[k] || (A[k] && k + 1 < n && r[k + 1]);
        break;
      case Kind::Release:
        for (std::size_t k = n; k-- > 0;) r[k] = B[k] && (A[k] || k + 1 == n || r[k + 1]);
        break;
      case Kind::While: {
        // A is the repeated formula, B the condition.
        std::vector<char> cl(n, 0);
        for (std::size_t k = n; k-- > 0;) cl[k] = A[k] && (!B[k] || k + 1 == n || cl[k + 1]);
        if (here_level) {
          std::vector<char> ct(n, 0);
          for (std::size_t k = n; k-- > 0;) ct[k] = TA[k] && (!TB[k] || k + 1 == n || ct[k + 1]);
          for (std::size_t k = 0; k < n; ++k) r[k] = cl[k] && ct[k];
        } else {
          for (std::size_t k = 0; k < n; ++k) r[k] = cl[k];
        }
        break;
      }
      default:
        throw std::logic_error("evaluator received a derived connective");
    }
  }
}

void Evaluator::run(const MaskTrace& h, const MaskTrace& t) {
  if (h.size() != t.size()) throw std::invalid_argument("HT-trace components differ in length");
  lambda_ = t.size();
  t_.clear();
  std::vector<char> tt;
  level(t, tt, false);
  t_ = std::move(tt);
  level(h, h_, true);
}

void Evaluator::run_total(const MaskTrace& t) {
  lambda_ = t.size();
  t_.clear();
  std::vector<char> tt;
  level(t, tt, false);
  t_ = std::move(tt);
  h_ = t_;
}

bool tht_satisfies(const HTTrace& m, std::size_t k, const Formula& f) {
  if (!m.valid()) throw std::invalid_argument("HT-trace violates H <= T");
  check_point(k, m.length());
  Alphabet a = merged_alphabet(f, m.t);
  Evaluator ev(f, a);
  ev.run(to_mask(m.h, a), to_mask(m.t, a));
  return ev.here(k);
}

bool ltl_satisfies(const Trace& t, std::size_t k, const Formula& f) {
  check_point(k, t.length());
  Alphabet a = merged_alphabet(f, t);
  Evaluator ev(f, a);
  ev.run_total(to_mask(t, a));
  return ev.here(k);
}

// ---------------------------------------------------------------- three-valued

namespace {

int imp(int x, int y) { return x <= y ? 2 : y; }

int atom_value(const HTTrace& m, std::size_t k, const std::string& a) {
  if (m.h.states[k].count(a)) return 2;
  if (m.t.states[k].count(a)) return 1;
  return 0;
}

}  // namespace

ThreeValued::ThreeValued(const HTTrace& m, const Formula& f) : m_(m) {
  if (m.length() == 0) throw std::invalid_argument("empty trace");
  if (!m.valid()) throw std::invalid_argument("HT-trace violates H <= T");
  compute(f);
}

int ThreeValued::value(std::size_t k, const Formula& g) const {
  auto it = table_.find(g);
  if (it == table_.end()) throw std::out_of_range("formula not in valuation table: " + print(g));
  return it->second.at(k);
}

const std::vector<int>& ThreeValued::compute(const Formula& g) {
  auto it = table_.find(g);
  if (it != table_.end()) return it->second;
  const std::size_t n = m_.length();
  std::vector<int> v(n, 0);
  auto sub = [&](const Formula& x) { return compute(x); };
  switch (g.kind()) {
    case Kind::Atom:
      for (std::size_t k = 0; k < n; ++k) v[k] = atom_value(m_, k, g.name());
      break;
    case Kind::Falsum:
      break;
    case Kind::Truth:
      std::fill(v.begin(), v.end(), 2);
      break;
    case Kind::Initial:
      v[0] = 2;
      break;
    case Kind::Final:
      v[n - 1] = 2;
      break;
    case Kind::Not: {
      auto a = sub(g.lhs());
      for (std::size_t k = 0; k < n; ++k) v[k] = a[k] == 0 ? 2 : 0;
      break;
    }
    case Kind::And: {
      auto a = sub(g.lhs()), b = sub(g.rhs());
      for (std::size_t k = 0; k < n; ++k) v[k] = std::min(a[k], b[k]);
      break;
    }
    case Kind::Or: {
      auto a = sub(g.lhs()), b = sub(g.rhs());
      for (std::size_t k = 0; k < n; ++k) v[k] = std::max(a[k], b[k]);
      break;
    }
    case Kind::Implies: {
      auto a = sub(g.lhs()), b = sub(g.rhs());
      for (std::size_t k = 0; k < n; ++k) v[k] = imp(a[k], b[k]);
      break;
    }
    case Kind::Iff: {
      auto a = sub(g.lhs()), b = sub(g.rhs());
      for (std::size_t k = 0; k < n; ++k) v[k] = std::min(imp(a[k], b[k]), imp(b[k], a[k]));
      break;
    }
    case Kind::Previous: {
      auto a = sub(g.lhs());
      for (std::size_t k = 1; k < n; ++k) v[k] = a[k - 1];
      break;
    }
    case Kind::WeakPrevious: {
      auto a = sub(g.lhs());
      v[0] = 2;
      for (std::size_t k = 1; k < n; ++k) v[k] = a[k - 1];
      break;
    }
    case Kind::Next: {
      auto a = sub(g.lhs());
      for (std::size_t k = 0; k + 1 < n; ++k) v[k] = a[k + 1];
      break;
    }
    case Kind::WeakNext: {
      auto a = sub(g.lhs());
      for (std::size_t k = 0; k + 1 < n; ++k) v[k] = a[k + 1];
      v[n - 1] = 2;
      break;
    }
    case Kind::AlwaysBefore: {
      auto a = sub(g.lhs());
      for (std::size_t k = 0; k < n; ++k) {
        int x = 2;
        for (std::size_t i = 0; i <= k; ++i) x = std::min(x, a[i]);
        v[k] = x;
      }
      break;
    }
    case Kind::EventuallyBefore: {
      auto a = sub(g.lhs());
      for (std::size_t k = 0; k < n; ++k) {
        int x = 0;
        for (std::size_t i = 0; i <= k; ++i) x = std::max(x, a[i]);
        v[k] = x;
      }
      break;
    }
    case Kind::Always: {
      auto a = sub(g.lhs());
      for (std::size_t k = 0; k < n; ++k) {
        int x = 2;
        for (std::size_t i = k; i < n; ++i) x = std::min(x, a[i]);
        v[k] = x;
      }
      break;
    }
    case Kind::Eventually: {
      auto a = sub(g.lhs());
      for (std::size_t k = 0; k < n; ++k) {
        int x = 0;
        for (std::size_t i = k; i < n; ++i) x = std::max(x, a[i]);
        v[k] = x;
      }
      break;
    }
    case Kind::Since: {
      auto a = sub(g.lhs()), b = sub(g.rhs());
      for (std::size_t k = 0; k < n; ++k) {
        int best = 0;
        for (std::size_t j = 0; j <= k; ++j) {
          int x = b[j];
          for (std::size_t i = j + 1; i <= k; ++i) x = std::min(x, a[i]);
          best = std::max(best, x);
        }
        v[k] = best;
      }
      break;
    }
    case Kind::Trigger: {
      auto a = sub(g.lhs()), b = sub(g.rhs());
      for (std::size_t k = 0; k < n; ++k) {
        int worst = 2;
        for (std::size_t j = 0; j <= k; ++j) {
          int x = b[j];
          for (std::size_t i = j + 1; i <= k; ++i) x = std::max(x, a[i]);
          worst = std::min(worst, x);
        }
        v[k] = worst;
      }
      break;
    }
    case Kind::Until: {
      auto a = sub(g.lhs()), b = sub(g.rhs());
      for (std::size_t k = 0; k < n; ++k) {
        int best = 0;
        for (std::size_t j = k; j < n; ++j) {
          int x = b[j];
          for (std::size_t i = k; i < j; ++i) x = std::min(x, a[i]);
          best = std::max(best, x);
        }
        v[k] = best;
      }
      break;
    }
    case Kind::Release: {
      auto a = sub(g.lhs()), b = sub(g.rhs());
      for (std::size_t k = 0; k < n; ++k) {
        int worst = 2;
        for (std::size_t j = k; j < n; ++j) {
          int x = b[j];
          for (std::size_t i = k; i < j; ++i) x = std::max(x, a[i]);
          worst = std::min(worst, x);
        }
        v[k] = worst;
      }
      break;
    }
    case Kind::While: {
      auto a = sub(g.lhs()), b = sub(g.rhs());
      for (std::size_t k = 0; k < n; ++k) {
        int worst = 2;
        for (std::size_t j = k; j < n; ++j) {
          int cond = 2;
          for (std::size_t i = k; i < j; ++i) cond = std::min(cond, b[i]);
          worst = std::min(worst, imp(cond, a[j]));
        }
        v[k] = worst;
      }
      break;
    }
  }
  return table_.emplace(g, std::move(v)).first->second;
}

ThreeValued three_valued(const HTTrace& m, const Formula& f) { return ThreeValued(m, f); }

// ---------------------------------------------------------------- models

Alphabet query_alphabet(const ModelQuery& q) {
  if (!q.alphabet.empty()) return q.alphabet;
  return Alphabet(atoms_of(q.theory));
}

namespace {

void check_lambda(std::size_t lambda) {
  if (lambda == 0) throw std::invalid_argument("trace length must be at least 1");
}

}  // namespace

std::vector<HTTrace> tht_models(const ModelQuery& q, const Budget& b) {
  check_lambda(q.lambda);
  Alphabet a = query_alphabet(q);
  Evaluator ev(conj(q.theory), a);
  std::vector<HTTrace> out;
  for_each_ht_trace(
      a, q.lambda,
      [&](const MaskTrace& h, const MaskTrace& t) {
        ev.run(h, t);
        if (ev.here(0)) out.push_back({from_mask(h, a), from_mask(t, a)});
      },
      b);
  return out;
}

std::vector<MaskTrace> ts_models_masks(const std::vector<Formula>& theory, const Alphabet& a, std::size_t lambda,
                                       const Budget& b) {
  check_lambda(lambda);
  if (static_cast<long long>(a.size()) * static_cast<long long>(lambda) > b.ht_slots)
    throw BudgetExceeded("stable-model enumeration needs " + std::to_string(a.size() * lambda) +
                         " atom-slots, budget is " + std::to_string(b.ht_slots));
  Evaluator ev(conj(theory), a);
  std::vector<MaskTrace> out;
  Budget wide = b;
  wide.trace_slots = std::max(b.trace_slots, b.ht_slots);
  for_each_trace(
      a, lambda,
      [&](const MaskTrace& t) {
        ev.run_total(t);
        if (!ev.here(0)) return;
        MaskTrace h(lambda, 0);
        // Proper sub-traces H < T, enumerated as per-state submasks.
        while (true) {
          if (h == t) break;
          ev.run(h, t);
          if (ev.here(0)) return;
          std::size_t i = lambda;
          while (i > 0) {
            --i;
            if (h[i] != t[i]) {
              h[i] = (h[i] - t[i]) & t[i];
              for (std::size_t j = i + 1; j < lambda; ++j) h[j] = 0;
              break;
            }
          }
        }
        out.push_back(t);
      },
      wide);
  return out;
}

std::vector<Trace> ts_models(const ModelQuery& q, const Budget& b) {
  Alphabet a = query_alphabet(q);
  std::vector<Trace> out;
  for (const auto& m : ts_models_masks(q.theory, a, q.lambda, b)) out.push_back(from_mask(m, a));
  return out;
}

std::vector<Trace> ltl_models(const ModelQuery& q, const Budget& b) {
  check_lambda(q.lambda);
  Alphabet a = query_alphabet(q);
  Evaluator ev(conj(q.theory), a);
  std::vector<Trace> out;
  for_each_trace(
      a, q.lambda,
      [&](const MaskTrace& t) {
        ev.run_total(t);
        if (ev.here(0)) out.push_back(from_mask(t, a));
      },
      b);
  return out;
}

EquivResult tht_equiv_bounded(const Formula& f, const Formula& g, const Alphabet& alpha, std::size_t lambda_max,
                              EquivMode mode, const Budget& b) {
  Alphabet a = alpha.merged(Alphabet(atoms_of(std::vector<Formula>{f, g})));
  Evaluator ef(f, a), eg(g, a);
  EquivResult res;
  res.lambda_max = lambda_max;
  struct Found {};
  for (std::size_t lambda = 1; lambda <= lambda_max; ++lambda) {
    try {
      auto visit = [&](const MaskTrace& h, const MaskTrace& t) {
        ef.run(h, t);
        eg.run(h, t);
        std::size_t upto = mode == EquivMode::Initial ? 1 : lambda;
        for (std::size_t k = 0; k < upto; ++k) {
          if (ef.here(k) != eg.here(k)) {
            res.equivalent = false;
            res.counter = Countermodel{{from_mask(h, a), from_mask(t, a)}, k};
            throw Found{};
          }
        }
      };
      if (mode == EquivMode::Total) {
        Budget wide = b;
        wide.trace_slots = std::max(b.trace_slots, b.ht_slots);
        for_each_trace(a, lambda, [&](const MaskTrace& t) { visit(t, t); }, wide);
      } else {
        for_each_ht_trace(a, lambda, visit, b);
      }
    } catch (const Found&) {
      return res;
    }
  }
  return res;
}

EquivResult tautology_bounded(const Formula& f, const Alphabet& a, std::size_t lambda_max, const Budget& b) {
  return tht_equiv_bounded(f, top(), a, lambda_max, EquivMode::Global, b);
}

}  // namespace tasp
