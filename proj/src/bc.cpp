#include "tasp/bc.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <sstream>

namespace tasp {

namespace {

constexpr const char* kChoicePrefix = "_c_";
constexpr const char* kComplementPrefix = "_n_";

struct Tok {
  std::string text;
  std::size_t line = 0;
};

std::vector<Tok> tokenize(const std::string& s) {
  std::vector<Tok> out;
  std::size_t line = 1;
  for (std::size_t i = 0; i < s.size();) {
    char c = s[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '%') {
      while (i < s.size() && s[i] != '\n') ++i;
    } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({s.substr(i, j - i), line});
      i = j;
    } else if (std::string("=,:{}.").find(c) != std::string::npos) {
      out.push_back({std::string(1, c), line});
      ++i;
    } else {
      throw BcError("line " + std::to_string(line) + ": unexpected character '" + std::string(1, c) + "'");
    }
  }
  return out;
}

bool is_keyword(const std::string& s) {
  static const std::set<std::string> kw{"fluent", "action", "if", "after", "ifcons", "regular", "static"};
  return kw.count(s) > 0;
}

class Parser {
 public:
  explicit Parser(std::vector<Tok> toks) : t_(std::move(toks)) {}

  ActionDescription run() {
    while (i_ < t_.size()) statement();
    return d_;
  }

 private:
  std::vector<Tok> t_;
  std::size_t i_ = 0;
  ActionDescription d_;

  [[noreturn]] void fail(const std::string& msg) const {
    std::size_t line = i_ < t_.size() ? t_[i_].line : (t_.empty() ? 1 : t_.back().line);
    throw BcError("line " + std::to_string(line) + ": " + msg);
  }
  bool at(const std::string& s) const { return i_ < t_.size() && t_[i_].text == s; }
  void expect(const std::string& s) {
    if (!at(s)) fail("expected '" + s + "'");
    ++i_;
  }
  std::string ident(const char* what) {
    if (i_ >= t_.size()) fail(std::string("expected ") + what);
    const std::string& s = t_[i_].text;
    if (is_keyword(s) || !(std::isalnum(static_cast<unsigned char>(s[0])) || s[0] == '_'))
      fail(std::string("expected ") + what);
    ++i_;
    return s;
  }
  std::string name(const char* what) {
    std::string s = ident(what);
    if (!(s[0] >= 'a' && s[0] <= 'z')) fail(std::string(what) + " '" + s + "' must start with a lowercase letter");
    if (s.find("__") != std::string::npos) fail("'__' is reserved in identifiers: " + s);
    return s;
  }
  void fresh(const std::string& n) {
    if (d_.fluent(n) || d_.is_action(n)) fail("duplicate constant '" + n + "'");
  }

  void statement() {
    if (at("fluent")) {
      ++i_;
      std::vector<std::string> names{name("fluent name")};
      while (at(",")) {
        ++i_;
        names.push_back(name("fluent name"));
      }
      expect(":");
      expect("{");
      std::vector<std::string> dom{value()};
      while (at(",")) {
        ++i_;
        dom.push_back(value());
      }
      expect("}");
      bool regular = true;
      if (at("regular")) {
        ++i_;
      } else if (at("static")) {
        regular = false;
        ++i_;
      } else {
        fail("expected 'regular' or 'static'");
      }
      expect(".");
      std::set<std::string> uniq(dom.begin(), dom.end());
      if (uniq.size() != dom.size()) fail("duplicate value in domain");
      if (dom.size() < 2) fail("a domain needs at least two elements");
      for (const auto& n : names) {
        fresh(n);
        d_.fluents.push_back({n, dom, regular});
      }
      return;
    }
    if (at("action")) {
      ++i_;
      std::vector<std::string> names{name("action name")};
      while (at(",")) {
        ++i_;
        names.push_back(name("action name"));
      }
      expect(".");
      for (const auto& n : names) {
        fresh(n);
        d_.actions.push_back(n);
      }
      return;
    }
    BcLaw law;
    law.head = atom(false);
    if (at("if")) {
      ++i_;
    } else if (at("after")) {
      ++i_;
      law.dynamic = true;
      const BcFluent* f = d_.fluent(law.head.fluent);
      if (!f->regular) fail("statically determined fluent '" + f->name + "' in the head of a dynamic law");
    } else {
      fail("expected 'if' or 'after'");
    }
    law.body = list(law.dynamic);
    if (at("ifcons")) {
      ++i_;
      law.ifcons = list(false);
    }
    expect(".");
    d_.laws.push_back(std::move(law));
  }

  std::string value() {
    std::string s = ident("value");
    if (s.find("__") != std::string::npos) fail("'__' is reserved in identifiers: " + s);
    return s;
  }

  std::vector<BcAtom> list(bool actions_allowed) {
    std::vector<BcAtom> out;
    if (at(".") || at("ifcons")) return out;
    out.push_back(atom(actions_allowed));
    while (at(",")) {
      ++i_;
      out.push_back(atom(actions_allowed));
    }
    return out;
  }

  BcAtom atom(bool actions_allowed) {
    std::string n = name("constant");
    if (!at("=")) {
      if (!d_.is_action(n)) fail("'" + n + "' is not a declared action");
      if (!actions_allowed) fail("action '" + n + "' is only allowed in after-lists");
      return {n, ""};
    }
    ++i_;
    std::string v = value();
    const BcFluent* f = d_.fluent(n);
    if (!f) fail("'" + n + "' is not a declared fluent");
    if (std::find(f->domain.begin(), f->domain.end(), v) == f->domain.end())
      fail("'" + v + "' is not in the domain of " + n);
    return {n, v};
  }
};

std::string law_list(const std::vector<BcAtom>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ", ";
    s += xs[i].is_action() ? xs[i].fluent : xs[i].fluent + "=" + xs[i].value;
  }
  return s;
}

std::vector<Literal> ifcons_lits(const BcLaw& law) {
  std::vector<Literal> out;
  for (const auto& a : law.ifcons) out.push_back(negl(bc_atom_name(a)));
  return out;
}

}  // namespace

const BcFluent* ActionDescription::fluent(const std::string& name) const {
  for (const auto& f : fluents)
    if (f.name == name) return &f;
  return nullptr;
}

bool ActionDescription::is_action(const std::string& name) const {
  return std::find(actions.begin(), actions.end(), name) != actions.end();
}

ActionDescription parse_bc(const std::string& text) { return Parser(tokenize(text)).run(); }

std::string print(const ActionDescription& d) {
  std::ostringstream o;
  for (const auto& f : d.fluents) {
    o << "fluent " << f.name << " : {";
    for (std::size_t i = 0; i < f.domain.size(); ++i) o << (i ? "," : "") << f.domain[i];
    o << "} " << (f.regular ? "regular" : "static") << ".\n";
  }
  for (const auto& a : d.actions) o << "action " << a << ".\n";
  for (const auto& l : d.laws) {
    o << l.head.fluent << "=" << l.head.value << (l.dynamic ? " after" : " if");
    if (!l.body.empty()) o << " " << law_list(l.body);
    if (!l.ifcons.empty()) o << " ifcons " << law_list(l.ifcons);
    o << ".\n";
  }
  return o.str();
}

std::string bc_atom_name(const BcAtom& a) { return a.is_action() ? a.fluent : a.fluent + "__" + a.value; }

std::set<std::string> bc_fluent_atoms(const ActionDescription& d) {
  std::set<std::string> s;
  for (const auto& f : d.fluents)
    for (const auto& v : f.domain) s.insert(bc_atom_name({f.name, v}));
  return s;
}

Alphabet bc_alphabet(const ActionDescription& d) {
  std::set<std::string> s = bc_fluent_atoms(d);
  s.insert(d.actions.begin(), d.actions.end());
  return Alphabet(s);
}

TemporalProgram translate_bc(const ActionDescription& d) {
  TemporalProgram p;
  auto both = [&](const std::vector<Literal>& body, const std::vector<Literal>& head) {
    p.rules.push_back({RuleClass::Initial, body, head, "", ""});
    p.rules.push_back({RuleClass::Dynamic, body, head, "", ""});
  };
  for (const auto& l : d.laws) {
    std::vector<Literal> head{pos(bc_atom_name(l.head))};
    for (const auto& x : ifcons_lits(l)) head.push_back(x);
    std::vector<Literal> body;
    if (l.dynamic) {
      for (const auto& a : l.body) body.push_back(prevl(bc_atom_name(a)));
      p.rules.push_back({RuleClass::Dynamic, body, head, "", ""});
    } else {
      for (const auto& a : l.body) body.push_back(pos(bc_atom_name(a)));
      both(body, head);
    }
  }
  for (const auto& f : d.fluents)
    if (f.regular)
      for (const auto& v : f.domain) {
        std::string a = bc_atom_name({f.name, v});
        p.rules.push_back({RuleClass::Initial, {}, {pos(a), negl(a)}, "", ""});
      }
  for (const auto& a : d.actions) both({}, {pos(a), negl(a)});
  for (const auto& f : d.fluents) {
    std::vector<Literal> body;
    for (const auto& v : f.domain) body.push_back(negl(bc_atom_name({f.name, v})));
    both(body, {});
  }
  for (const auto& f : d.fluents)
    for (std::size_t i = 0; i < f.domain.size(); ++i)
      for (std::size_t j = i + 1; j < f.domain.size(); ++j)
        both({pos(bc_atom_name({f.name, f.domain[i]})), pos(bc_atom_name({f.name, f.domain[j]}))}, {});
  return p;
}

GroundProgram ground_nl(const ActionDescription& d, int l) {
  if (l < 0) throw std::invalid_argument("N_l needs l >= 0");
  GroundProgram g;
  std::set<GroundAtom> complements;
  auto not_not = [&](const BcAtom& a, int i, GroundRule& r) {
    GroundAtom x = ga(bc_atom_name(a), i);
    GroundAtom n = ga(kComplementPrefix + x.name, i);
    complements.insert(x);
    r.neg.push_back(n);
  };
  for (const auto& law : d.laws) {
    if (law.dynamic) {
      for (int i = 0; i < l; ++i) {
        GroundRule r;
        r.head.push_back(ga(bc_atom_name(law.head), i + 1));
        for (const auto& a : law.body) r.pos.push_back(ga(bc_atom_name(a), i));
        for (const auto& a : law.ifcons) not_not(a, i + 1, r);
        g.rules.push_back(std::move(r));
      }
    } else {
      for (int i = 0; i <= l; ++i) {
        GroundRule r;
        r.head.push_back(ga(bc_atom_name(law.head), i));
        for (const auto& a : law.body) r.pos.push_back(ga(bc_atom_name(a), i));
        for (const auto& a : law.ifcons) not_not(a, i, r);
        g.rules.push_back(std::move(r));
      }
    }
  }
  auto choice = [&](const std::string& a, int i) {
    GroundRule r;
    r.head = {ga(a, i), ga(kChoicePrefix + a, i)};
    g.rules.push_back(std::move(r));
  };
  for (const auto& f : d.fluents)
    if (f.regular)
      for (const auto& v : f.domain) choice(bc_atom_name({f.name, v}), 0);
  for (const auto& a : d.actions)
    for (int i = 0; i < l; ++i) choice(a, i);
  for (int i = 0; i <= l; ++i)
    for (const auto& f : d.fluents) {
      GroundRule ex;
      for (const auto& v : f.domain) ex.neg.push_back(ga(bc_atom_name({f.name, v}), i));
      g.rules.push_back(std::move(ex));
      for (std::size_t a = 0; a < f.domain.size(); ++a)
        for (std::size_t b = a + 1; b < f.domain.size(); ++b) {
          GroundRule un;
          un.pos = {ga(bc_atom_name({f.name, f.domain[a]}), i), ga(bc_atom_name({f.name, f.domain[b]}), i)};
          g.rules.push_back(std::move(un));
        }
    }
  for (const auto& x : complements) {
    GroundRule r;
    r.head.push_back(ga(kComplementPrefix + x.name, x.time));
    r.neg.push_back(x);
    g.rules.push_back(std::move(r));
  }
  return g;
}

Trace nl_to_trace(const AnswerSet& x, const ActionDescription& d, int l) {
  return answer_to_trace(x, bc_alphabet(d), static_cast<std::size_t>(l) + 1);
}

TransitionSystem transitions(const ActionDescription& d, const Budget& b) {
  TransitionSystem ts;
  std::set<std::string> fl = bc_fluent_atoms(d);
  auto fluents_of = [&](const State& s) {
    State o;
    for (const auto& a : s)
      if (fl.count(a)) o.insert(a);
    return o;
  };
  std::set<State> states;
  for (const auto& m : stable_models(ground_nl(d, 0), b)) states.insert(fluents_of(nl_to_trace(m, d, 0).states[0]));
  ts.states.assign(states.begin(), states.end());
  std::set<BcTransition> tr;
  for (const auto& m : stable_models(ground_nl(d, 1), b)) {
    Trace t = nl_to_trace(m, d, 1);
    State acts;
    for (const auto& a : t.states[0])
      if (d.is_action(a)) acts.insert(a);
    tr.insert({fluents_of(t.states[0]), acts, fluents_of(t.states[1])});
  }
  ts.transitions.assign(tr.begin(), tr.end());
  return ts;
}

std::set<std::vector<State>> paths(const TransitionSystem& ts, std::size_t length) {
  std::set<std::vector<State>> out;
  if (length == 0) return out;
  std::map<State, std::set<State>> succ;
  for (const auto& t : ts.transitions) succ[t.from].insert(t.to);
  std::vector<State> cur;
  std::function<void()> go = [&]() {
    if (cur.size() == length) {
      out.insert(cur);
      return;
    }
    for (const auto& n : succ[cur.back()]) {
      cur.push_back(n);
      go();
      cur.pop_back();
    }
  };
  for (const auto& s : ts.states) {
    cur = {s};
    go();
  }
  return out;
}

std::string print(const TransitionSystem& ts) {
  auto set_text = [](const State& s) {
    std::string o = "{";
    bool first = true;
    for (const auto& a : s) {
      o += (first ? "" : ",") + a;
      first = false;
    }
    return o + "}";
  };
  std::ostringstream o;
  for (const auto& s : ts.states) o << "state " << set_text(s) << "\n";
  for (const auto& t : ts.transitions)
    o << "transition " << set_text(t.from) << " " << set_text(t.actions) << " " << set_text(t.to) << "\n";
  return o.str();
}

}  // namespace tasp
