#include "oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace oracle {

using tasp::Kind;

namespace {

const tasp::State& level(const HTTrace& m, bool here, std::size_t i) {
  return here ? m.h.states[i] : m.t.states[i];
}

bool impl(const HTTrace& m, bool here, std::size_t k, const Formula& a, const Formula& b) {
  bool there_ok = !sat(m, false, k, a) || sat(m, false, k, b);
  if (!here) return there_ok;
  return there_ok && (!sat(m, true, k, a) || sat(m, true, k, b));
}

}  // namespace

bool sat(const HTTrace& m, bool here, std::size_t k, const Formula& f) {
  const std::size_t n = m.length();
  if (k >= n) throw std::out_of_range("time point outside trace");
  const Formula& a = f.lhs();
  const Formula& b = f.rhs();
  switch (f.kind()) {
    case Kind::Atom:
      return level(m, here, k).count(f.name()) > 0;
    case Kind::Truth:
      return true;
    case Kind::Falsum:
      return false;
    case Kind::Initial:
      return !(k > 0);
    case Kind::Final:
      return !(k + 1 < n);
    case Kind::And:
      return sat(m, here, k, a) && sat(m, here, k, b);
    case Kind::Or:
      return sat(m, here, k, a) || sat(m, here, k, b);
    case Kind::Implies:
      return impl(m, here, k, a, b);
    case Kind::Not:
      return impl(m, here, k, a, tasp::bot());
    case Kind::Iff:
      return impl(m, here, k, a, b) && impl(m, here, k, b, a);
    case Kind::Previous:
      return k > 0 && sat(m, here, k - 1, a);
    case Kind::WeakPrevious:
      return (k > 0 && sat(m, here, k - 1, a)) || k == 0;
    case Kind::Next:
      return k + 1 < n && sat(m, here, k + 1, a);
    case Kind::WeakNext:
      return (k + 1 < n && sat(m, here, k + 1, a)) || k + 1 >= n;
    case Kind::Since:
      for (std::size_t j = 0; j <= k; ++j) {
        if (!sat(m, here, j, b)) continue;
        bool all = true;
        for (std::size_t i = j + 1; i <= k; ++i) all = all && sat(m, here, i, a);
        if (all) return true;
      }
      return false;
    case Kind::Trigger:
      for (std::size_t j = 0; j <= k; ++j) {
        if (sat(m, here, j, b)) continue;
        bool some = false;
        for (std::size_t i = j + 1; i <= k; ++i) some = some || sat(m, here, i, a);
        if (!some) return false;
      }
      return true;
    case Kind::Until:
      for (std::size_t j = k; j < n; ++j) {
        if (!sat(m, here, j, b)) continue;
        bool all = true;
        for (std::size_t i = k; i < j; ++i) all = all && sat(m, here, i, a);
        if (all) return true;
      }
      return false;
    case Kind::Release:
      for (std::size_t j = k; j < n; ++j) {
        if (sat(m, here, j, b)) continue;
        bool some = false;
        for (std::size_t i = k; i < j; ++i) some = some || sat(m, here, i, a);
        if (!some) return false;
      }
      return true;
    case Kind::While:
      for (bool w : {true, false}) {
        if (w && !here) continue;
        for (std::size_t j = k; j < n; ++j) {
          if (sat(m, w, j, a)) continue;
          bool broken = false;
          for (std::size_t i = k; i < j; ++i) broken = broken || !sat(m, w, i, b);
          if (!broken) return false;
        }
      }
      return true;
    case Kind::Always:
      return sat(m, here, k, tasp::release(tasp::bot(), a));
    case Kind::Eventually:
      return sat(m, here, k, tasp::until(tasp::top(), a));
    case Kind::AlwaysBefore:
      return sat(m, here, k, tasp::trigger(tasp::bot(), a));
    case Kind::EventuallyBefore:
      return sat(m, here, k, tasp::since(tasp::top(), a));
  }
  throw std::logic_error("unknown connective");
}

bool ltl(const Trace& t, std::size_t k, const Formula& f) { return sat(HTTrace{t, t}, false, k, f); }

int value(const HTTrace& m, std::size_t k, const Formula& f) {
  if (sat(m, true, k, f)) return 2;
  return sat(m, false, k, f) ? 1 : 0;
}

namespace {

tasp::State state_of(const std::vector<std::string>& atoms, std::uint32_t mask) {
  tasp::State s;
  for (std::size_t i = 0; i < atoms.size(); ++i)
    if (mask >> i & 1u) s.insert(atoms[i]);
  return s;
}

}  // namespace

std::vector<Trace> traces(const std::vector<std::string>& atoms, std::size_t lambda) {
  std::vector<Trace> out{Trace{}};
  const std::uint32_t per = 1u << atoms.size();
  for (std::size_t i = 0; i < lambda; ++i) {
    std::vector<Trace> next;
    for (const auto& t : out)
      for (std::uint32_t m = 0; m < per; ++m) {
        Trace u = t;
        u.states.push_back(state_of(atoms, m));
        next.push_back(std::move(u));
      }
    out = std::move(next);
  }
  return out;
}

std::vector<Trace> below(const Trace& t) {
  std::vector<Trace> out{Trace{}};
  for (const auto& s : t.states) {
    std::vector<std::string> in(s.begin(), s.end());
    std::vector<Trace> next;
    for (const auto& h : out)
      for (std::uint32_t m = 0; m < (1u << in.size()); ++m) {
        Trace u = h;
        u.states.push_back(state_of(in, m));
        next.push_back(std::move(u));
      }
    out = std::move(next);
  }
  return out;
}

std::vector<HTTrace> ht_traces(const std::vector<std::string>& atoms, std::size_t lambda) {
  std::vector<HTTrace> out;
  for (const auto& t : traces(atoms, lambda))
    for (const auto& h : below(t)) out.push_back({h, t});
  return out;
}

namespace {

bool all_sat(const HTTrace& m, const std::vector<Formula>& theory) {
  for (const auto& f : theory)
    if (!sat(m, true, 0, f)) return false;
  return true;
}

}  // namespace

std::vector<Trace> ts_models(const std::vector<Formula>& theory, const std::vector<std::string>& atoms,
                             std::size_t lambda) {
  std::vector<Trace> out;
  for (const auto& t : traces(atoms, lambda)) {
    if (!all_sat({t, t}, theory)) continue;
    bool minimal = true;
    for (const auto& h : below(t))
      if (!(h == t) && all_sat({h, t}, theory)) {
        minimal = false;
        break;
      }
    if (minimal) out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Trace> ltl_models(const std::vector<Formula>& theory, const std::vector<std::string>& atoms,
                              std::size_t lambda) {
  std::vector<Trace> out;
  for (const auto& t : traces(atoms, lambda))
    if (all_sat({t, t}, theory)) out.push_back(t);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Literal truth at time i on the given level; previous literals look at i-1.
// Returns -1 when a previous literal is read at time 0.
int lit_value(const HTTrace& m, bool here, std::size_t i, const tasp::Literal& l) {
  const std::size_t n = m.length();
  if (l.previous) {
    if (i == 0) return -1;
    --i;
  }
  bool v;
  if (l.atom == tasp::kInitialAtom) {
    v = i == 0;
  } else if (l.atom == tasp::kFinalAtom) {
    v = i + 1 == n;
  } else {
    v = (l.negated ? m.t.states[i] : level(m, here, i)).count(l.atom) > 0;
  }
  return l.negated ? !v : v;
}

bool plain_rule_at(const HTTrace& m, const tasp::TemporalRule& r, std::size_t i) {
  for (bool here : {true, false}) {
    bool body = true;
    for (const auto& l : r.body) body = body && lit_value(m, here, i, l) == 1;
    if (!body) continue;
    bool head = false;
    for (const auto& l : r.head) head = head || lit_value(m, here, i, l) == 1;
    if (!head) return false;
  }
  return true;
}

bool holds(const HTTrace& m, bool here, std::size_t i, const std::string& a) {
  if (a == "#true") return true;
  if (a == "#false") return false;
  return level(m, here, i).count(a) > 0;
}

}  // namespace

bool rule_sat(const HTTrace& m, const tasp::TemporalRule& r) {
  const std::size_t n = m.length();
  switch (r.cls) {
    case tasp::RuleClass::Initial:
      return plain_rule_at(m, r, 0);
    case tasp::RuleClass::Dynamic:
      for (std::size_t i = 1; i < n; ++i)
        if (!plain_rule_at(m, r, i)) return false;
      return true;
    case tasp::RuleClass::Final:
      return plain_rule_at(m, r, n - 1);
    case tasp::RuleClass::FulfillBox:
      for (bool here : {true, false})
        for (std::size_t i = 0; i < n; ++i) {
          bool all_p = true;
          for (std::size_t j = i; j < n; ++j) all_p = all_p && holds(m, here, j, r.p);
          if (all_p && !holds(m, here, i, r.q)) return false;
        }
      return true;
    case tasp::RuleClass::FulfillDia:
      for (bool here : {true, false})
        for (std::size_t i = 0; i < n; ++i) {
          if (!holds(m, here, i, r.p)) continue;
          bool some_q = false;
          for (std::size_t j = i; j < n; ++j) some_q = some_q || holds(m, here, j, r.q);
          if (!some_q) return false;
        }
      return true;
  }
  return false;
}

bool program_sat(const HTTrace& m, const tasp::TemporalProgram& p) {
  for (const auto& r : p.rules)
    if (!rule_sat(m, r)) return false;
  return true;
}

std::vector<Trace> program_ts_models(const tasp::TemporalProgram& p, const std::vector<std::string>& atoms,
                                     std::size_t lambda) {
  std::vector<Trace> out;
  for (const auto& t : traces(atoms, lambda)) {
    if (!program_sat({t, t}, p)) continue;
    bool minimal = true;
    for (const auto& h : below(t))
      if (!(h == t) && program_sat({h, t}, p)) {
        minimal = false;
        break;
      }
    if (minimal) out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int count_models(int n, const std::vector<std::vector<int>>& clauses, int cap) {
  std::vector<signed char> val(n + 1, 0);
  int found = 0;
  std::function<void()> search = [&]() {
    if (found >= cap) return;
    std::vector<int> trail;
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& c : clauses) {
        int open = 0, last = 0;
        bool satisfied = false;
        for (int l : c) {
          int v = val[std::abs(l)];
          if (v == 0) {
            ++open;
            last = l;
          } else if ((v > 0) == (l > 0)) {
            satisfied = true;
            break;
          }
        }
        if (satisfied) continue;
        if (open == 0) {
          for (int x : trail) val[x] = 0;
          return;
        }
        if (open == 1) {
          val[std::abs(last)] = last > 0 ? 1 : -1;
          trail.push_back(std::abs(last));
          changed = true;
        }
      }
    }
    int pick = 0;
    for (int x = 1; x <= n && !pick; ++x)
      if (val[x] == 0) pick = x;
    if (!pick) {
      ++found;
    } else {
      for (int s : {1, -1}) {
        val[pick] = static_cast<signed char>(s);
        search();
        val[pick] = 0;
      }
    }
    for (int x : trail) val[x] = 0;
  };
  search();
  return std::min(found, cap);
}

int count_extensions(const HTTrace& m, const std::vector<std::string>& base, const tasp::TemporalProgram& p,
                     int cap) {
  const std::size_t n = m.length();
  std::set<std::string> base_set(base.begin(), base.end());
  std::map<std::string, int> index;
  for (const auto& a : p.atoms())
    if (!base_set.count(a) && a != tasp::kInitialAtom && a != tasp::kFinalAtom && a[0] != '#') index.emplace(a, 0);
  int next = 0;
  for (auto& [a, id] : index) id = next++;
  // variable for (atom, time, level): levels are H (here) and T.
  auto var = [&](int id, std::size_t i, bool here) { return 1 + static_cast<int>((id * n + i) * 2 + (here ? 0 : 1)); };
  const int nvars = static_cast<int>(index.size() * n * 2);

  std::vector<std::vector<int>> clauses;
  for (const auto& [a, id] : index)
    for (std::size_t i = 0; i < n; ++i) clauses.push_back({-var(id, i, true), var(id, i, false)});

  // A literal either has a fixed truth value or maps to a variable literal.
  struct Lit {
    int fixed = -1;
    int v = 0;
  };
  auto atom_lit = [&](const std::string& a, std::size_t i, bool here) -> Lit {
    if (a == tasp::kInitialAtom) return {i == 0 ? 1 : 0, 0};
    if (a == tasp::kFinalAtom) return {i + 1 == n ? 1 : 0, 0};
    if (a == "#true") return {1, 0};
    if (a == "#false") return {0, 0};
    auto it = index.find(a);
    if (it == index.end()) return {level(m, here, i).count(a) ? 1 : 0, 0};
    return {-1, var(it->second, i, here)};
  };
  auto lit = [&](const tasp::Literal& l, std::size_t i, bool here) -> Lit {
    Lit x = atom_lit(l.atom, l.previous ? i - 1 : i, l.negated ? false : here);
    if (!l.negated) return x;
    if (x.fixed >= 0) return {1 - x.fixed, 0};
    return {-1, -x.v};
  };
  auto add = [&](const std::vector<Lit>& neg_body, const std::vector<Lit>& head) {
    std::vector<int> c;
    for (const auto& l : neg_body) {
      if (l.fixed == 0) return;
      if (l.fixed < 0) c.push_back(-l.v);
    }
    for (const auto& l : head) {
      if (l.fixed == 1) return;
      if (l.fixed < 0) c.push_back(l.v);
    }
    clauses.push_back(c);
  };
  auto plain = [&](const tasp::TemporalRule& r, std::size_t i) {
    for (bool here : {true, false}) {
      std::vector<Lit> body, head;
      for (const auto& l : r.body) body.push_back(lit(l, i, here));
      for (const auto& l : r.head) head.push_back(lit(l, i, here));
      add(body, head);
    }
  };
  for (const auto& r : p.rules) {
    switch (r.cls) {
      case tasp::RuleClass::Initial:
        plain(r, 0);
        break;
      case tasp::RuleClass::Dynamic:
        for (std::size_t i = 1; i < n; ++i) plain(r, i);
        break;
      case tasp::RuleClass::Final:
        plain(r, n - 1);
        break;
      case tasp::RuleClass::FulfillBox:
        for (bool here : {true, false})
          for (std::size_t i = 0; i < n; ++i) {
            std::vector<Lit> body;
            for (std::size_t j = i; j < n; ++j) body.push_back(atom_lit(r.p, j, here));
            add(body, {atom_lit(r.q, i, here)});
          }
        break;
      case tasp::RuleClass::FulfillDia:
        for (bool here : {true, false})
          for (std::size_t i = 0; i < n; ++i) {
            std::vector<Lit> head;
            for (std::size_t j = i; j < n; ++j) head.push_back(atom_lit(r.q, j, here));
            add({atom_lit(r.p, i, here)}, head);
          }
        break;
    }
  }
  return count_models(nvars, clauses, cap);
}

std::vector<tasp::AnswerSet> stable_models(const tasp::GroundProgram& g) {
  std::vector<tasp::GroundAtom> atoms;
  for (const auto& a : g.atoms()) atoms.push_back(a);
  if (atoms.size() > 16) throw std::length_error("too many atoms for the brute-force scan");
  auto in = [&](std::uint32_t x, const tasp::GroundAtom& a) {
    auto i = std::lower_bound(atoms.begin(), atoms.end(), a) - atoms.begin();
    return (x >> i & 1u) != 0;
  };
  auto model = [&](std::uint32_t x) {
    for (const auto& r : g.rules) {
      bool body = true;
      for (const auto& a : r.pos) body = body && in(x, a);
      for (const auto& a : r.neg) body = body && !in(x, a);
      if (!body) continue;
      bool head = false;
      for (const auto& a : r.head) head = head || in(x, a);
      for (const auto& a : r.neg_head) head = head || !in(x, a);
      if (!head) return false;
    }
    return true;
  };
  // y is a model of the reduct of the program relative to x.
  auto reduct_model = [&](std::uint32_t y, std::uint32_t x) {
    for (const auto& r : g.rules) {
      bool keep = true;
      for (const auto& a : r.neg) keep = keep && !in(x, a);
      for (const auto& a : r.neg_head) keep = keep && in(x, a);
      if (!keep) continue;
      bool body = true;
      for (const auto& a : r.pos) body = body && in(y, a);
      if (!body) continue;
      bool head = false;
      for (const auto& a : r.head) head = head || in(y, a);
      if (!head) return false;
    }
    return true;
  };
  std::vector<tasp::AnswerSet> out;
  const std::uint32_t total = 1u << atoms.size();
  for (std::uint32_t x = 0; x < total; ++x) {
    if (!model(x)) continue;
    bool minimal = true;
    for (std::uint32_t y = (x - 1) & x;; y = (y - 1) & x) {
      if (y != x && reduct_model(y, x)) {
        minimal = false;
        break;
      }
      if (y == 0) break;
    }
    if (x == 0) minimal = true;
    if (!minimal) continue;
    tasp::AnswerSet s;
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if (x >> i & 1u) s.insert(atoms[i]);
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace oracle
