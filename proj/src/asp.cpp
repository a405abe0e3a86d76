#include "tasp/asp.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>

#include "tasp/sat.hpp"

namespace tasp {

std::string GroundAtom::str() const { return time < 0 ? name : name + "(" + std::to_string(time) + ")"; }

GroundAtom ga(const std::string& name, int time) { return {name, time}; }

std::set<GroundAtom> GroundProgram::atoms() const {
  std::set<GroundAtom> s;
  for (const auto& r : rules)
    for (const auto* v : {&r.head, &r.neg_head, &r.pos, &r.neg}) s.insert(v->begin(), v->end());
  return s;
}

std::set<GroundAtom> GroundProgram::head_atoms() const {
  std::set<GroundAtom> s;
  for (const auto& r : rules) s.insert(r.head.begin(), r.head.end());
  return s;
}

namespace {

void push_unique(std::vector<GroundAtom>& v, const GroundAtom& a) {
  if (std::find(v.begin(), v.end(), a) == v.end()) v.push_back(a);
}

GroundAtom stamp(const Literal& l, int k) { return ga(l.atom, l.previous ? k - 1 : k); }

bool uses_atom(const TemporalProgram& p, const std::string& a) { return p.atoms().count(a) > 0; }

}  // namespace

GroundRule tau_rule(const TemporalRule& r, int k) {
  if (r.cls == RuleClass::FulfillBox || r.cls == RuleClass::FulfillDia)
    throw std::invalid_argument("fulfillment rules have no ground translation");
  if (k < 0) throw std::invalid_argument("negative time point");
  if (r.cls == RuleClass::Dynamic && k == 0) throw std::invalid_argument("dynamic rule at time point 0");
  GroundRule g;
  for (const auto& l : r.body) push_unique(l.negated ? g.neg : g.pos, stamp(l, k));
  for (const auto& l : r.head) push_unique(l.negated ? g.neg_head : g.head, stamp(l, k));
  return g;
}

GroundProgram tau_bounded(const TemporalProgram& p, std::size_t lambda) {
  if (lambda == 0) throw std::invalid_argument("trace length must be at least 1");
  GroundProgram g;
  const int last = static_cast<int>(lambda) - 1;
  if (uses_atom(p, kInitialAtom)) g.rules.push_back({{ga(kInitialAtom, 0)}, {}, {}, {}});
  if (uses_atom(p, kFinalAtom)) g.rules.push_back({{ga(kFinalAtom, last)}, {}, {}, {}});
  for (const auto& r : p.rules)
    if (r.cls == RuleClass::Initial) g.rules.push_back(tau_rule(r, 0));
  for (int k = 1; k <= last; ++k)
    for (const auto& r : p.rules)
      if (r.cls == RuleClass::Dynamic) g.rules.push_back(tau_rule(r, k));
  for (const auto& r : p.rules) {
    if (r.cls == RuleClass::Final) g.rules.push_back(tau_rule(r, last));
    if (r.cls == RuleClass::FulfillBox || r.cls == RuleClass::FulfillDia)
      throw std::invalid_argument("fulfillment rules must be replaced by final rules first");
  }
  return g;
}

GroundRule tau_pointwise_rule(const TemporalRule& r, int k) {
  GroundRule g = tau_rule(r, k);
  if (r.cls == RuleClass::Final) push_unique(g.neg, ga("q", k + 1));
  return g;
}

AspModule build_module(const TemporalProgram& p, int k) {
  if (k < 0) throw std::invalid_argument("negative time point");
  if (!is_present_centered(p)) throw std::invalid_argument("program is not present-centered");
  auto atoms = p.atoms();
  if (atoms.count("q")) throw std::invalid_argument("atom q is reserved for module guards");
  AspModule m;
  for (const auto& r : p.rules)
    if (r.cls == RuleClass::FulfillBox || r.cls == RuleClass::FulfillDia)
      throw std::invalid_argument("fulfillment rules must be replaced by final rules first");
  if (k == 0) {
    if (atoms.count(kInitialAtom)) m.program.rules.push_back({{ga(kInitialAtom, 0)}, {}, {}, {}});
    for (const auto& r : p.rules)
      if (r.cls == RuleClass::Initial) m.program.rules.push_back(tau_pointwise_rule(r, 0));
  } else {
    for (const auto& r : p.rules)
      if (r.cls == RuleClass::Dynamic) m.program.rules.push_back(tau_pointwise_rule(r, k));
  }
  if (atoms.count(kFinalAtom)) m.program.rules.push_back({{ga(kFinalAtom, k)}, {}, {}, {ga("q", k + 1)}});
  for (const auto& r : p.rules)
    if (r.cls == RuleClass::Final) m.program.rules.push_back(tau_pointwise_rule(r, k));
  if (k > 0) m.program.rules.push_back({{ga("q", k)}, {}, {}, {}});
  for (const auto& a : atoms) {
    m.output.insert(ga(a, k));
    if (k > 0) m.input.insert(ga(a, k - 1));
  }
  m.input.insert(ga("q", k + 1));
  if (k > 0) m.output.insert(ga("q", k));
  return m;
}

namespace {

std::vector<std::set<GroundAtom>> positive_sccs(const GroundProgram& g) {
  std::vector<GroundAtom> nodes;
  std::map<GroundAtom, int> id;
  for (const auto& a : g.atoms()) {
    id[a] = static_cast<int>(nodes.size());
    nodes.push_back(a);
  }
  std::vector<std::vector<int>> adj(nodes.size());
  for (const auto& r : g.rules)
    for (const auto& h : r.head)
      for (const auto& b : r.pos) adj[id[h]].push_back(id[b]);
  const int n = static_cast<int>(nodes.size());
  std::vector<int> index(n, -1), low(n, 0), stack;
  std::vector<char> on(n, 0);
  int counter = 0;
  std::vector<std::set<GroundAtom>> out;
  std::function<void(int)> visit = [&](int v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on[v] = 1;
    for (int w : adj[v]) {
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::set<GroundAtom> comp;
      int w;
      do {
        w = stack.back();
        stack.pop_back();
        on[w] = 0;
        comp.insert(nodes[w]);
      } while (w != v);
      out.push_back(std::move(comp));
    }
  };
  for (int v = 0; v < n; ++v)
    if (index[v] < 0) visit(v);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

CompositionVerdict compositional_check(const AspModule& m1, const AspModule& m2) {
  CompositionVerdict v;
  for (const auto& a : m1.output)
    if (m2.output.count(a)) v.witness.insert(a);
  if (!v.witness.empty()) {
    v.ok = false;
    v.reason = "shared output atoms";
    return v;
  }
  GroundProgram u = m1.program;
  u.rules.insert(u.rules.end(), m2.program.rules.begin(), m2.program.rules.end());
  for (const auto& c : positive_sccs(u)) {
    bool in1 = false, in2 = false;
    for (const auto& a : c) {
      in1 = in1 || m1.output.count(a);
      in2 = in2 || m2.output.count(a);
    }
    if (in1 && in2) {
      v.ok = false;
      v.reason = "positive loop across modules";
      v.witness = c;
      return v;
    }
  }
  return v;
}

AspModule join_modules(const std::vector<AspModule>& ms) {
  if (ms.empty()) return {};
  AspModule acc = ms[0];
  for (std::size_t i = 1; i < ms.size(); ++i) {
    const AspModule& m = ms[i];
    auto v = compositional_check(acc, m);
    if (!v.ok) {
      std::string w;
      for (const auto& a : v.witness) w += (w.empty() ? "" : ", ") + a.str();
      throw std::invalid_argument("modules are not compositional (" + v.reason + "): {" + w + "}");
    }
    AspModule j;
    j.program = acc.program;
    j.program.rules.insert(j.program.rules.end(), m.program.rules.begin(), m.program.rules.end());
    for (const auto& a : acc.input)
      if (!m.output.count(a)) j.input.insert(a);
    for (const auto& a : m.input)
      if (!acc.output.count(a)) j.input.insert(a);
    j.output = acc.output;
    j.output.insert(m.output.begin(), m.output.end());
    acc = std::move(j);
  }
  return acc;
}

namespace {

/// Checks that x is a minimal model of the reduct of g relative to x.
bool minimal_for_reduct(const GroundProgram& g, const AnswerSet& x) {
  std::vector<std::pair<std::vector<GroundAtom>, std::vector<GroundAtom>>> reduct;
  bool horn = true;
  for (const auto& r : g.rules) {
    bool drop = false;
    for (const auto& a : r.neg)
      if (x.count(a)) drop = true;
    for (const auto& a : r.neg_head)
      if (!x.count(a)) drop = true;
    for (const auto& a : r.pos)
      if (!x.count(a)) drop = true;
    if (drop) continue;
    std::vector<GroundAtom> h;
    for (const auto& a : r.head)
      if (x.count(a)) h.push_back(a);
    if (h.size() > 1) horn = false;
    reduct.emplace_back(std::move(h), r.pos);
  }
  if (horn) {
    AnswerSet least;
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& [h, b] : reduct) {
        if (h.empty() || least.count(h[0])) continue;
        bool fire = true;
        for (const auto& a : b)
          if (!least.count(a)) {
            fire = false;
            break;
          }
        if (fire) {
          least.insert(h[0]);
          changed = true;
        }
      }
    }
    return least == x;
  }
  std::map<GroundAtom, int> var;
  SatSolver s;
  for (const auto& a : x) var[a] = s.new_var();
  for (const auto& [h, b] : reduct) {
    std::vector<int> c;
    for (const auto& a : h) c.push_back(var[a]);
    for (const auto& a : b) c.push_back(-var[a]);
    s.add_clause(c);
  }
  std::vector<int> smaller;
  for (const auto& [a, v] : var) smaller.push_back(-v);
  if (smaller.empty()) return true;
  s.add_clause(smaller);
  return !s.solve();
}

}  // namespace

bool is_stable_model(const GroundProgram& g, const AnswerSet& x) {
  for (const auto& r : g.rules) {
    bool body = true;
    for (const auto& a : r.pos) body = body && x.count(a);
    for (const auto& a : r.neg) body = body && !x.count(a);
    if (!body) continue;
    bool head = false;
    for (const auto& a : r.head) head = head || x.count(a);
    for (const auto& a : r.neg_head) head = head || !x.count(a);
    if (!head) return false;
  }
  return minimal_for_reduct(g, x);
}

std::vector<AnswerSet> stable_models(const GroundProgram& g, const Budget& b) {
  const auto atoms = g.atoms();
  if (static_cast<long long>(atoms.size()) > b.solver_atoms)
    throw BudgetExceeded("ground program has " + std::to_string(atoms.size()) + " atoms, solver budget is " +
                         std::to_string(b.solver_atoms));
  std::vector<GroundAtom> list(atoms.begin(), atoms.end());
  std::map<GroundAtom, int> var;
  SatSolver s;
  for (const auto& a : list) var[a] = s.new_var();
  std::map<GroundAtom, std::vector<std::vector<int>>> support;
  for (const auto& r : g.rules) {
    std::vector<int> c;
    for (const auto& a : r.pos) c.push_back(-var[a]);
    for (const auto& a : r.neg) c.push_back(var[a]);
    for (const auto& a : r.head) c.push_back(var[a]);
    for (const auto& a : r.neg_head) c.push_back(-var[a]);
    s.add_clause(c);
    for (const auto& h : r.head) {
      std::vector<int> opt;
      for (const auto& a : r.pos) opt.push_back(var[a]);
      for (const auto& a : r.neg) opt.push_back(-var[a]);
      for (const auto& a : r.head)
        if (a != h) opt.push_back(-var[a]);
      for (const auto& a : r.neg_head) opt.push_back(var[a]);
      support[h].push_back(std::move(opt));
    }
  }
  for (const auto& a : list) s.add_support(var[a], support[a]);
  std::vector<AnswerSet> out;
  s.enumerate([&](const std::vector<char>& m) {
    AnswerSet x;
    for (const auto& a : list)
      if (m[var[a]]) x.insert(a);
    if (minimal_for_reduct(g, x)) out.push_back(std::move(x));
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::string emit_ground_text(const GroundProgram& g) {
  std::string out;
  for (const auto& r : g.rules) {
    std::string h;
    for (const auto& a : r.head) h += (h.empty() ? "" : " ; ") + a.str();
    for (const auto& a : r.neg_head) h += (h.empty() ? "not " : " ; not ") + a.str();
    std::string b;
    for (const auto& a : r.pos) b += (b.empty() ? "" : ", ") + a.str();
    for (const auto& a : r.neg) b += (b.empty() ? "not " : ", not ") + a.str();
    if (b.empty())
      out += (h.empty() ? ":-" : h) + ".\n";
    else
      out += (h.empty() ? "" : h + " ") + ":- " + b + ".\n";
  }
  return out;
}

namespace {

struct GroundParser {
  const std::string& s;
  std::size_t i = 0;

  void ws() {
    while (i < s.size()) {
      if (std::isspace(static_cast<unsigned char>(s[i]))) {
        ++i;
      } else if (s[i] == '%') {
        while (i < s.size() && s[i] != '\n') ++i;
      } else {
        break;
      }
    }
  }
  bool eat(const std::string& t) {
    ws();
    if (s.compare(i, t.size(), t) == 0) {
      i += t.size();
      return true;
    }
    return false;
  }
  bool at_not() {
    ws();
    if (s.compare(i, 3, "not") == 0 && i + 3 < s.size() && std::isspace(static_cast<unsigned char>(s[i + 3]))) {
      i += 3;
      return true;
    }
    return false;
  }
  GroundAtom atom() {
    ws();
    std::size_t st = i;
    while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
    if (st == i) throw ParseError("expected atom", st);
    GroundAtom a{s.substr(st, i - st), -1};
    if (!(std::islower(static_cast<unsigned char>(a.name[0])) || a.name[0] == '_'))
      throw ParseError("invalid atom name '" + a.name + "'", st);
    if (i < s.size() && s[i] == '(') {
      ++i;
      std::size_t ns = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (ns == i || i >= s.size() || s[i] != ')') throw ParseError("expected time index", ns);
      a.time = std::stoi(s.substr(ns, i - ns));
      ++i;
    }
    return a;
  }
};

}  // namespace

GroundProgram parse_ground_text(const std::string& text) {
  GroundProgram g;
  GroundParser p{text};
  while (true) {
    p.ws();
    if (p.i >= text.size()) break;
    GroundRule r;
    if (!p.eat(":-")) {
      do {
        if (p.at_not())
          push_unique(r.neg_head, p.atom());
        else
          push_unique(r.head, p.atom());
      } while (p.eat(";") || p.eat("|"));
      if (p.eat(".")) {
        g.rules.push_back(std::move(r));
        continue;
      }
      if (!p.eat(":-")) throw ParseError("expected ':-' or '.'", p.i);
    }
    p.ws();
    if (!p.eat(".")) {
      do {
        if (p.at_not())
          push_unique(r.neg, p.atom());
        else
          push_unique(r.pos, p.atom());
      } while (p.eat(","));
      if (!p.eat(".")) throw ParseError("expected '.'", p.i);
    }
    g.rules.push_back(std::move(r));
  }
  return g;
}

Trace answer_to_trace(const AnswerSet& x, const Alphabet& a, std::size_t lambda) {
  Trace t;
  t.states.resize(lambda);
  for (const auto& at : x)
    if (at.time >= 0 && static_cast<std::size_t>(at.time) < lambda && a.contains(at.name))
      t.states[at.time].insert(at.name);
  return t;
}

std::vector<Trace> ts_models_asp(const TemporalProgram& p, const Alphabet& a, std::size_t lambda, const Budget& b) {
  std::vector<Trace> out;
  for (const auto& x : stable_models(tau_bounded(p, lambda), b)) out.push_back(answer_to_trace(x, a, lambda));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace tasp
