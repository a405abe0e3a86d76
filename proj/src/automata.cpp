#include "tasp/automata.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <json.hpp>
#include <sstream>
#include <stdexcept>

#include "tasp/qltl.hpp"
#include "tasp/star.hpp"

namespace tasp {

PosBool PosBool::t() { return PosBool{Op::True, -1, {}}; }
PosBool PosBool::f() { return PosBool{Op::False, -1, {}}; }
PosBool PosBool::q(int s) { return PosBool{Op::State, s, {}}; }

PosBool PosBool::conj(PosBool a, PosBool b) {
  if (a.op == Op::False || b.op == Op::False) return f();
  if (a.op == Op::True) return b;
  if (b.op == Op::True) return a;
  if (a == b) return a;
  PosBool r{Op::And, -1, {}};
  for (PosBool* x : {&a, &b}) {
    if (x->op == Op::And)
      for (auto& k : x->kids) r.kids.push_back(std::move(k));
    else
      r.kids.push_back(std::move(*x));
  }
  return r;
}

PosBool PosBool::disj(PosBool a, PosBool b) {
  if (a.op == Op::True || b.op == Op::True) return t();
  if (a.op == Op::False) return b;
  if (b.op == Op::False) return a;
  if (a == b) return a;
  PosBool r{Op::Or, -1, {}};
  for (PosBool* x : {&a, &b}) {
    if (x->op == Op::Or)
      for (auto& k : x->kids) r.kids.push_back(std::move(k));
    else
      r.kids.push_back(std::move(*x));
  }
  return r;
}

bool PosBool::eval(const std::vector<char>& assignment) const {
  switch (op) {
    case Op::True:
      return true;
    case Op::False:
      return false;
    case Op::State:
      return state >= 0 && static_cast<std::size_t>(state) < assignment.size() && assignment[state];
    case Op::And:
      return std::all_of(kids.begin(), kids.end(), [&](const PosBool& k) { return k.eval(assignment); });
    case Op::Or:
      return std::any_of(kids.begin(), kids.end(), [&](const PosBool& k) { return k.eval(assignment); });
  }
  return false;
}

std::string print(const PosBool& b, const std::vector<std::string>& names) {
  switch (b.op) {
    case PosBool::Op::True:
      return "#true";
    case PosBool::Op::False:
      return "#false";
    case PosBool::Op::State:
      return names.at(b.state);
    default:
      break;
  }
  std::string sep = b.op == PosBool::Op::And ? " & " : " | ";
  std::string out = "(";
  for (std::size_t i = 0; i < b.kids.size(); ++i) {
    if (i) out += sep;
    out += print(b.kids[i], names);
  }
  return out + ")";
}

std::uint32_t Afw::symbol_of(const State& s) const {
  std::uint32_t m = 0;
  for (const auto& x : s) {
    if (x == kLastAtom) {
      m |= last_bit();
      continue;
    }
    auto it = std::find(atoms.begin(), atoms.end(), x);
    if (it == atoms.end()) throw std::invalid_argument("symbol uses atom '" + x + "' outside the automaton alphabet");
    m |= 1u << (it - atoms.begin());
  }
  return m;
}

Formula ltl_core(const Formula& f) {
  switch (f.kind()) {
    case Kind::Atom:
    case Kind::Truth:
    case Kind::Falsum:
      return f;
    case Kind::Final:
      return neg(next(top()));
    case Kind::Not:
      return neg(ltl_core(f.lhs()));
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
    case Kind::Until:
    case Kind::Release:
      return binary(f.kind(), ltl_core(f.lhs()), ltl_core(f.rhs()));
    case Kind::Iff: {
      Formula a = ltl_core(f.lhs()), b = ltl_core(f.rhs());
      return mk_and(implies(a, b), implies(b, a));
    }
    case Kind::Next:
    case Kind::WeakNext:
      return unary(f.kind(), ltl_core(f.lhs()));
    case Kind::Always:
      return release(bot(), ltl_core(f.lhs()));
    case Kind::Eventually:
      return until(top(), ltl_core(f.lhs()));
    case Kind::While:
      return release(neg(ltl_core(f.rhs())), ltl_core(f.lhs()));
    default:
      break;
  }
  throw std::invalid_argument("automata do not support the past connective in " + print(f));
}

namespace {

Formula negate(const Formula& f) { return f.kind() == Kind::Not ? f.lhs() : neg(f); }

std::vector<std::string> effective_atoms(const std::vector<std::string>& atoms) {
  std::set<std::string> base;
  for (const auto& a : atoms) base.insert(is_primed(a) ? unprimed(a) : a);
  return {base.begin(), base.end()};
}

void check_atoms(const std::vector<std::string>& atoms) {
  if (effective_atoms(atoms).size() > static_cast<std::size_t>(kMaxEffectiveAtoms))
    throw BudgetExceeded("automata support at most " + std::to_string(kMaxEffectiveAtoms) + " atoms");
}

struct AfwBuilder {
  Afw& a;
  std::map<Formula, int> index;

  int id(const Formula& f) const {
    auto it = index.find(f);
    if (it == index.end()) throw std::logic_error("state outside the closure: " + print(f));
    return it->second;
  }

  PosBool dual(const PosBool& b) const {
    switch (b.op) {
      case PosBool::Op::True:
        return PosBool::f();
      case PosBool::Op::False:
        return PosBool::t();
      case PosBool::Op::State:
        return PosBool::q(id(negate(a.states[b.state])));
      case PosBool::Op::And: {
        PosBool r = PosBool::f();
        for (const auto& k : b.kids) r = PosBool::disj(r, dual(k));
        return r;
      }
      case PosBool::Op::Or: {
        PosBool r = PosBool::t();
        for (const auto& k : b.kids) r = PosBool::conj(r, dual(k));
        return r;
      }
    }
    return PosBool::f();
  }

  PosBool delta(const Formula& f, std::uint32_t x) const {
    bool last = (x & a.last_bit()) != 0;
    switch (f.kind()) {
      case Kind::Truth:
        return PosBool::t();
      case Kind::Falsum:
        return PosBool::f();
      case Kind::Atom: {
        auto it = std::find(a.atoms.begin(), a.atoms.end(), f.name());
        return (x >> (it - a.atoms.begin())) & 1u ? PosBool::t() : PosBool::f();
      }
      case Kind::Not:
        return dual(delta(f.lhs(), x));
      case Kind::And:
        return PosBool::conj(delta(f.lhs(), x), delta(f.rhs(), x));
      case Kind::Or:
        return PosBool::disj(delta(f.lhs(), x), delta(f.rhs(), x));
      case Kind::Implies:
        return PosBool::disj(dual(delta(f.lhs(), x)), delta(f.rhs(), x));
      case Kind::Next:
        return last ? PosBool::f() : PosBool::q(id(f.lhs()));
      case Kind::WeakNext:
        return last ? PosBool::t() : PosBool::q(id(f.lhs()));
      case Kind::Until:
        if (last) return delta(f.rhs(), x);
        return PosBool::disj(delta(f.rhs(), x), PosBool::conj(delta(f.lhs(), x), PosBool::q(id(f))));
      case Kind::Release:
        if (last) return delta(f.rhs(), x);
        return PosBool::conj(delta(f.rhs(), x), PosBool::disj(delta(f.lhs(), x), PosBool::q(id(f))));
      default:
        break;
    }
    throw std::invalid_argument("connective outside the transition table: " + print(f));
  }
};

using Dnf = std::vector<std::vector<int>>;

void minimize(Dnf& d) {
  std::sort(d.begin(), d.end(), [](const auto& x, const auto& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  d.erase(std::unique(d.begin(), d.end()), d.end());
  Dnf out;
  for (const auto& c : d) {
    bool subsumed = std::any_of(out.begin(), out.end(), [&](const auto& o) {
      return std::includes(c.begin(), c.end(), o.begin(), o.end());
    });
    if (!subsumed) out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  d = std::move(out);
}

Dnf product(const Dnf& x, const Dnf& y) {
  Dnf r;
  for (const auto& a : x)
    for (const auto& b : y) {
      std::vector<int> u;
      std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(u));
      r.push_back(std::move(u));
    }
  minimize(r);
  return r;
}

Dnf to_dnf(const PosBool& b) {
  switch (b.op) {
    case PosBool::Op::True:
      return {{}};
    case PosBool::Op::False:
      return {};
    case PosBool::Op::State:
      return {{b.state}};
    case PosBool::Op::And: {
      Dnf r{{}};
      for (const auto& k : b.kids) r = product(r, to_dnf(k));
      return r;
    }
    case PosBool::Op::Or: {
      Dnf r;
      for (const auto& k : b.kids) {
        Dnf d = to_dnf(k);
        r.insert(r.end(), d.begin(), d.end());
      }
      minimize(r);
      return r;
    }
  }
  return {};
}

std::uint32_t mask_of(const State& s, const std::vector<std::string>& atoms, bool& ok) {
  std::uint32_t m = 0;
  ok = true;
  for (const auto& x : s) {
    auto it = std::find(atoms.begin(), atoms.end(), x);
    if (it == atoms.end()) {
      ok = false;
      return 0;
    }
    m |= 1u << (it - atoms.begin());
  }
  return m;
}

State state_of(std::uint32_t m, const std::vector<std::string>& atoms) {
  State s;
  for (std::size_t i = 0; i < atoms.size(); ++i)
    if ((m >> i) & 1u) s.insert(atoms[i]);
  return s;
}

void add_edge(Nfa& n, int from, std::uint32_t sym, int to) {
  auto& v = n.trans[from][sym];
  auto it = std::lower_bound(v.begin(), v.end(), to);
  if (it == v.end() || *it != to) v.insert(it, to);
}

int new_state(Nfa& n) {
  n.trans.emplace_back();
  return n.num_states++;
}

std::vector<int> step(const Nfa& n, const std::vector<int>& from, std::uint32_t sym) {
  std::set<int> out;
  for (int s : from) {
    auto it = n.trans[s].find(sym);
    if (it != n.trans[s].end()) out.insert(it->second.begin(), it->second.end());
  }
  return {out.begin(), out.end()};
}

bool any_final(const Nfa& n, const std::vector<int>& s) {
  return std::any_of(s.begin(), s.end(), [&](int q) { return n.final.count(q) > 0; });
}

}  // namespace

Afw build_afw(const Formula& f, const Alphabet& extra) {
  Formula core = ltl_core(f);
  Afw a;
  a.atoms = Alphabet(atoms_of(core)).merged(extra).atoms();
  check_atoms(a.atoms);
  AfwBuilder bld{a, {}};
  auto add = [&](const Formula& g) {
    if (bld.index.count(g)) return;
    bld.index[g] = static_cast<int>(a.states.size());
    a.states.push_back(g);
  };
  add(core);
  for (const auto& s : subformulas(core)) {
    add(s);
    add(negate(s));
  }
  add(negate(core));
  a.initial = 0;
  std::uint32_t symbols = a.last_bit() << 1;
  a.delta.resize(a.states.size());
  for (std::size_t i = 0; i < a.states.size(); ++i) {
    a.delta[i].reserve(symbols);
    for (std::uint32_t x = 0; x < symbols; ++x) a.delta[i].push_back(bld.delta(a.states[i], x));
  }
  return a;
}

bool afw_accepts(const Afw& a, const std::vector<State>& word) {
  if (word.empty()) throw std::invalid_argument("words must be non-empty");
  std::vector<std::uint32_t> syms;
  for (std::size_t i = 0; i < word.size(); ++i) {
    std::uint32_t s = a.symbol_of(word[i]);
    bool last = (s & a.last_bit()) != 0;
    if (last != (i + 1 == word.size()))
      throw std::invalid_argument("last must mark exactly the final symbol of the word");
    syms.push_back(s);
  }
  std::size_t n = word.size();
  std::vector<std::vector<signed char>> memo(n + 1, std::vector<signed char>(a.states.size(), -1));
  std::function<bool(int, std::size_t)> acc = [&](int q, std::size_t i) -> bool {
    if (i == n) return a.final.count(q) > 0;
    auto& m = memo[i][q];
    if (m >= 0) return m != 0;
    std::function<bool(const PosBool&)> ev = [&](const PosBool& b) -> bool {
      switch (b.op) {
        case PosBool::Op::True:
          return true;
        case PosBool::Op::False:
          return false;
        case PosBool::Op::State:
          return acc(b.state, i + 1);
        case PosBool::Op::And:
          return std::all_of(b.kids.begin(), b.kids.end(), ev);
        case PosBool::Op::Or:
          return std::any_of(b.kids.begin(), b.kids.end(), ev);
      }
      return false;
    };
    bool r = ev(a.delta[q][syms[i]]);
    m = r ? 1 : 0;
    return r;
  };
  return acc(a.initial, 0);
}

bool Nfa::accepts(const Trace& w) const {
  if (w.length() == 0) return false;
  std::vector<int> cur = initial;
  std::sort(cur.begin(), cur.end());
  for (const auto& s : w.states) {
    bool ok = false;
    std::uint32_t m = mask_of(s, atoms, ok);
    if (!ok) return false;
    cur = step(*this, cur, m);
    if (cur.empty()) return false;
  }
  return any_final(*this, cur);
}

std::size_t Nfa::num_transitions() const {
  std::size_t c = 0;
  for (const auto& t : trans)
    for (const auto& [sym, to] : t) c += to.size();
  return c;
}

Nfa afw_to_nfa(const Afw& a, const Budget& b) {
  Nfa n;
  n.atoms = a.atoms;
  std::uint32_t symbols = 1u << a.atoms.size();
  std::map<std::vector<int>, int> ids;
  std::deque<std::vector<int>> todo;
  std::vector<std::vector<Dnf>> dnf(a.states.size(), std::vector<Dnf>(symbols));
  std::vector<std::vector<char>> dnf_done(a.states.size(), std::vector<char>(symbols, 0));
  std::vector<char> none(a.states.size(), 0);

  int start = new_state(n);
  ids[{a.initial}] = start;
  n.initial = {start};
  int acc = new_state(n);
  n.final.insert(acc);
  todo.push_back({a.initial});

  auto id_of = [&](const std::vector<int>& s) {
    auto it = ids.find(s);
    if (it != ids.end()) return it->second;
    if (n.num_states >= b.automaton_states) throw BudgetExceeded("subset construction exceeds the automaton budget");
    int k = new_state(n);
    ids[s] = k;
    todo.push_back(s);
    return k;
  };

  while (!todo.empty()) {
    std::vector<int> s = todo.front();
    todo.pop_front();
    int from = ids.at(s);
    for (std::uint32_t x = 0; x < symbols; ++x) {
      bool ends = std::all_of(s.begin(), s.end(), [&](int q) { return a.delta[q][x | a.last_bit()].eval(none); });
      if (ends) add_edge(n, from, x, acc);
      Dnf d{{}};
      for (int q : s) {
        if (!dnf_done[q][x]) {
          dnf[q][x] = to_dnf(a.delta[q][x]);
          dnf_done[q][x] = 1;
        }
        d = product(d, dnf[q][x]);
        if (d.empty()) break;
      }
      for (const auto& t : d) add_edge(n, from, x, id_of(t));
    }
  }
  return nfa_trim(n);
}

Nfa ltl_to_nfa(const Formula& f, const Alphabet& extra, const Budget& b) { return afw_to_nfa(build_afw(f, extra), b); }

Nfa nfa_trim(const Nfa& n) {
  std::vector<std::vector<int>> rev(n.num_states);
  for (int s = 0; s < n.num_states; ++s)
    for (const auto& [sym, to] : n.trans[s])
      for (int t : to) rev[t].push_back(s);
  std::vector<char> co(n.num_states, 0);
  std::deque<int> q(n.final.begin(), n.final.end());
  for (int s : n.final) co[s] = 1;
  while (!q.empty()) {
    int s = q.front();
    q.pop_front();
    for (int p : rev[s])
      if (!co[p]) {
        co[p] = 1;
        q.push_back(p);
      }
  }
  Nfa out;
  out.atoms = n.atoms;
  std::vector<int> ren(n.num_states, -1);
  std::vector<int> init = n.initial;
  std::sort(init.begin(), init.end());
  init.erase(std::unique(init.begin(), init.end()), init.end());
  std::deque<int> bfs;
  for (int s : init)
    if (co[s]) {
      ren[s] = new_state(out);
      out.initial.push_back(ren[s]);
      bfs.push_back(s);
    }
  std::vector<int> order;
  while (!bfs.empty()) {
    int s = bfs.front();
    bfs.pop_front();
    order.push_back(s);
    for (const auto& [sym, to] : n.trans[s])
      for (int t : to)
        if (co[t] && ren[t] < 0) {
          ren[t] = new_state(out);
          bfs.push_back(t);
        }
  }
  for (int s : order) {
    if (n.final.count(s)) out.final.insert(ren[s]);
    for (const auto& [sym, to] : n.trans[s])
      for (int t : to)
        if (ren[t] >= 0) add_edge(out, ren[s], sym, ren[t]);
  }
  return out;
}

Nfa nfa_project(const Nfa& n, const std::set<std::string>& drop) {
  Nfa out;
  std::vector<int> pos(n.atoms.size(), -1);
  for (std::size_t i = 0; i < n.atoms.size(); ++i)
    if (!drop.count(n.atoms[i])) {
      pos[i] = static_cast<int>(out.atoms.size());
      out.atoms.push_back(n.atoms[i]);
    }
  out.num_states = n.num_states;
  out.initial = n.initial;
  out.final = n.final;
  out.trans.resize(n.num_states);
  for (int s = 0; s < n.num_states; ++s)
    for (const auto& [sym, to] : n.trans[s]) {
      std::uint32_t m = 0;
      for (std::size_t i = 0; i < n.atoms.size(); ++i)
        if (pos[i] >= 0 && ((sym >> i) & 1u)) m |= 1u << pos[i];
      for (int t : to) add_edge(out, s, m, t);
    }
  return out;
}

Nfa nfa_complement(const Nfa& n, const Budget& b) {
  check_atoms(n.atoms);
  Nfa out;
  out.atoms = n.atoms;
  std::uint32_t symbols = 1u << n.atoms.size();
  std::map<std::vector<int>, int> ids;
  std::deque<std::vector<int>> todo;
  auto id_of = [&](const std::vector<int>& s) {
    auto it = ids.find(s);
    if (it != ids.end()) return it->second;
    if (out.num_states >= b.automaton_states) throw BudgetExceeded("determinization exceeds the automaton budget");
    int k = new_state(out);
    ids[s] = k;
    if (!any_final(n, s)) out.final.insert(k);
    todo.push_back(s);
    return k;
  };
  std::vector<int> init = n.initial;
  std::sort(init.begin(), init.end());
  init.erase(std::unique(init.begin(), init.end()), init.end());
  int start = new_state(out);
  out.initial = {start};
  for (std::uint32_t x = 0; x < symbols; ++x) add_edge(out, start, x, id_of(step(n, init, x)));
  while (!todo.empty()) {
    std::vector<int> s = todo.front();
    todo.pop_front();
    int from = ids.at(s);
    for (std::uint32_t x = 0; x < symbols; ++x) add_edge(out, from, x, id_of(step(n, s, x)));
  }
  return nfa_trim(out);
}

Nfa nfa_intersect(const Nfa& x, const Nfa& y, const Budget& b) {
  if (x.atoms != y.atoms) throw std::invalid_argument("intersection needs automata over the same atoms");
  Nfa out;
  out.atoms = x.atoms;
  std::map<std::pair<int, int>, int> ids;
  std::deque<std::pair<int, int>> todo;
  auto id_of = [&](std::pair<int, int> p) {
    auto it = ids.find(p);
    if (it != ids.end()) return it->second;
    if (out.num_states >= b.automaton_states) throw BudgetExceeded("product exceeds the automaton budget");
    int k = new_state(out);
    ids[p] = k;
    if (x.final.count(p.first) && y.final.count(p.second)) out.final.insert(k);
    todo.push_back(p);
    return k;
  };
  for (int i : x.initial)
    for (int j : y.initial) {
      int k = id_of({i, j});
      if (std::find(out.initial.begin(), out.initial.end(), k) == out.initial.end()) out.initial.push_back(k);
    }
  while (!todo.empty()) {
    auto p = todo.front();
    todo.pop_front();
    int from = ids.at(p);
    for (const auto& [sym, to1] : x.trans[p.first]) {
      auto it = y.trans[p.second].find(sym);
      if (it == y.trans[p.second].end()) continue;
      for (int s : to1)
        for (int t : it->second) add_edge(out, from, sym, id_of({s, t}));
    }
  }
  return nfa_trim(out);
}

Nfa nfa_universal(const std::vector<std::string>& atoms) {
  check_atoms(atoms);
  Nfa n;
  n.atoms = atoms;
  int s = new_state(n), f = new_state(n);
  n.initial = {s};
  n.final = {f};
  for (std::uint32_t x = 0; x < (1u << atoms.size()); ++x) {
    add_edge(n, s, x, f);
    add_edge(n, f, x, f);
  }
  return n;
}

std::optional<Trace> nfa_shortest_word(const Nfa& n) {
  std::vector<std::pair<int, std::uint32_t>> parent(n.num_states, {-2, 0});
  std::deque<int> q;
  std::vector<int> init = n.initial;
  std::sort(init.begin(), init.end());
  for (int s : init)
    for (const auto& [sym, to] : n.trans[s])
      for (int t : to)
        if (parent[t].first == -2) {
          parent[t] = {-1, sym};
          q.push_back(t);
        }
  while (!q.empty()) {
    int s = q.front();
    q.pop_front();
    if (n.final.count(s)) {
      Trace w;
      for (int c = s; c >= 0; c = parent[c].first) w.states.push_back(state_of(parent[c].second, n.atoms));
      std::reverse(w.states.begin(), w.states.end());
      return w;
    }
    for (const auto& [sym, to] : n.trans[s])
      for (int t : to)
        if (parent[t].first == -2) {
          parent[t] = {s, sym};
          q.push_back(t);
        }
  }
  return std::nullopt;
}

bool nfa_empty(const Nfa& n) { return !nfa_shortest_word(n).has_value(); }

std::set<Trace> nfa_language(const Nfa& n, std::size_t max_len) {
  std::set<Trace> out;
  Trace w;
  std::function<void(const std::vector<int>&)> go = [&](const std::vector<int>& cur) {
    if (w.length() == max_len) return;
    std::set<std::uint32_t> syms;
    for (int s : cur)
      for (const auto& [sym, to] : n.trans[s]) syms.insert(sym);
    for (std::uint32_t x : syms) {
      std::vector<int> nx = step(n, cur, x);
      if (nx.empty()) continue;
      w.states.push_back(state_of(x, n.atoms));
      if (any_final(n, nx)) out.insert(w);
      go(nx);
      w.states.pop_back();
    }
  };
  std::vector<int> init = n.initial;
  std::sort(init.begin(), init.end());
  init.erase(std::unique(init.begin(), init.end()), init.end());
  go(init);
  return out;
}

Nfa build_telf_automaton(const Formula& f, const Alphabet& extra, const Budget& b) {
  Alphabet a = Alphabet(atoms_of(f)).merged(extra);
  check_atoms(a.atoms());
  Nfa a1 = ltl_to_nfa(f, a, b);
  Nfa a2 = ltl_to_nfa(mk_and(primed_lt(a), star(f)), extended_alphabet(a), b);
  std::set<std::string> primes;
  for (const auto& x : a.atoms()) primes.insert(primed(x));
  Nfa h = nfa_project(a2, primes);
  return nfa_intersect(a1, nfa_complement(h, b), b);
}

Nfa build_se_automaton(const Formula& f, const Formula& g, const Alphabet& extra, const Budget& b) {
  Alphabet base = Alphabet(atoms_of(std::vector<Formula>{f, g})).merged(extra);
  Formula bad = mk_or(eventually(neg(star(implies(f, g)))), eventually(neg(star(implies(g, f)))));
  return ltl_to_nfa(mk_and(ax_primed(base), bad), extended_alphabet(base), b);
}

namespace {

nlohmann::ordered_json symbol_json(std::uint32_t m, const std::vector<std::string>& atoms, bool with_last) {
  auto arr = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < atoms.size(); ++i)
    if ((m >> i) & 1u) arr.push_back(atoms[i]);
  if (with_last && ((m >> atoms.size()) & 1u)) arr.push_back(kLastAtom);
  return arr;
}

std::string symbol_text(std::uint32_t m, const std::vector<std::string>& atoms, bool with_last) {
  std::string s = "{";
  bool first = true;
  auto put = [&](const std::string& x) {
    if (!first) s += ",";
    s += x;
    first = false;
  };
  for (std::size_t i = 0; i < atoms.size(); ++i)
    if ((m >> i) & 1u) put(atoms[i]);
  if (with_last && ((m >> atoms.size()) & 1u)) put(kLastAtom);
  return s + "}";
}

std::string dot_escape(const std::string& s) {
  std::string o;
  for (char c : s) {
    if (c == '"' || c == '\\') o += '\\';
    o += c;
  }
  return o;
}

std::vector<std::string> state_names(const Afw& a) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < a.states.size(); ++i) names.push_back("q" + std::to_string(i));
  return names;
}

}  // namespace

std::string afw_to_json(const Afw& a) {
  nlohmann::ordered_json j;
  auto names = state_names(a);
  j["states"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < a.states.size(); ++i)
    j["states"].push_back({{"id", names[i]}, {"formula", print(a.states[i])}});
  j["initial"] = names[a.initial];
  j["final"] = nlohmann::ordered_json::array();
  for (int s : a.final) j["final"].push_back(names[s]);
  j["transitions"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < a.states.size(); ++i)
    for (std::uint32_t x = 0; x < a.delta[i].size(); ++x)
      j["transitions"].push_back(
          {{"from", names[i]}, {"symbol", symbol_json(x, a.atoms, true)}, {"to", print(a.delta[i][x], names)}});
  j["atoms"] = a.atoms;
  return j.dump(2) + "\n";
}

std::string afw_to_dot(const Afw& a) {
  auto names = state_names(a);
  std::ostringstream o;
  o << "digraph afw {\n  rankdir=LR;\n  node [shape=ellipse];\n  start [shape=point];\n";
  for (std::size_t i = 0; i < a.states.size(); ++i)
    o << "  " << names[i] << " [label=\"" << dot_escape(names[i] + ": " + print(a.states[i])) << "\"];\n";
  o << "  start -> " << names[a.initial] << ";\n";
  int k = 0;
  for (std::size_t i = 0; i < a.states.size(); ++i) {
    std::map<std::string, std::vector<std::string>> by_target;
    for (std::uint32_t x = 0; x < a.delta[i].size(); ++x)
      if (a.delta[i][x].op != PosBool::Op::False)
        by_target[print(a.delta[i][x], names)].push_back(symbol_text(x, a.atoms, true));
    for (const auto& [tgt, syms] : by_target) {
      std::string label;
      for (std::size_t s = 0; s < syms.size(); ++s) label += (s ? " " : "") + syms[s];
      o << "  d" << k << " [shape=box,label=\"" << dot_escape(tgt) << "\"];\n";
      o << "  " << names[i] << " -> d" << k << " [label=\"" << dot_escape(label) << "\"];\n";
      ++k;
    }
  }
  o << "}\n";
  return o.str();
}

std::string nfa_to_json(const Nfa& n) {
  nlohmann::ordered_json j;
  j["states"] = nlohmann::ordered_json::array();
  for (int s = 0; s < n.num_states; ++s) j["states"].push_back(s);
  std::vector<int> init = n.initial;
  std::sort(init.begin(), init.end());
  j["initial"] = init;
  j["final"] = std::vector<int>(n.final.begin(), n.final.end());
  j["transitions"] = nlohmann::ordered_json::array();
  for (int s = 0; s < n.num_states; ++s)
    for (const auto& [sym, to] : n.trans[s])
      for (int t : to) j["transitions"].push_back({{"from", s}, {"symbol", symbol_json(sym, n.atoms, false)}, {"to", t}});
  j["atoms"] = n.atoms;
  return j.dump(2) + "\n";
}

std::string nfa_to_dot(const Nfa& n) {
  std::ostringstream o;
  o << "digraph nfa {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (int s = 0; s < n.num_states; ++s)
    o << "  " << s << (n.final.count(s) ? " [shape=doublecircle];\n" : ";\n");
  std::vector<int> init = n.initial;
  std::sort(init.begin(), init.end());
  for (int s : init) o << "  start" << s << " [shape=point];\n  start" << s << " -> " << s << ";\n";
  for (int s = 0; s < n.num_states; ++s) {
    std::map<int, std::vector<std::string>> edges;
    for (const auto& [sym, to] : n.trans[s])
      for (int t : to) edges[t].push_back(symbol_text(sym, n.atoms, false));
    for (const auto& [t, syms] : edges) {
      std::string label;
      for (std::size_t i = 0; i < syms.size(); ++i) label += (i ? " " : "") + syms[i];
      o << "  " << s << " -> " << t << " [label=\"" << dot_escape(label) << "\"];\n";
    }
  }
  o << "}\n";
  return o.str();
}

}  // namespace tasp
