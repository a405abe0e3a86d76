#include "tasp/formula.hpp"

#include <cctype>
#include <functional>
#include <map>
#include <sstream>
#include <unordered_set>

namespace tasp {

int arity(Kind k) {
  switch (k) {
    case Kind::Atom:
    case Kind::Truth:
    case Kind::Falsum:
    case Kind::Initial:
    case Kind::Final:
      return 0;
    case Kind::Previous:
    case Kind::WeakPrevious:
    case Kind::AlwaysBefore:
    case Kind::EventuallyBefore:
    case Kind::Next:
    case Kind::WeakNext:
    case Kind::Always:
    case Kind::Eventually:
    case Kind::Not:
      return 1;
    default:
      return 2;
  }
}

bool is_base(Kind k) {
  switch (k) {
    case Kind::Atom:
    case Kind::Falsum:
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
    case Kind::Previous:
    case Kind::Since:
    case Kind::Trigger:
    case Kind::Next:
    case Kind::Until:
    case Kind::Release:
    case Kind::While:
      return true;
    default:
      return false;
  }
}

bool is_past(Kind k) {
  switch (k) {
    case Kind::Initial:
    case Kind::Previous:
    case Kind::WeakPrevious:
    case Kind::Since:
    case Kind::Trigger:
    case Kind::AlwaysBefore:
    case Kind::EventuallyBefore:
      return true;
    default:
      return false;
  }
}

bool is_future(Kind k) {
  switch (k) {
    case Kind::Final:
    case Kind::Next:
    case Kind::WeakNext:
    case Kind::Until:
    case Kind::Release:
    case Kind::While:
    case Kind::Always:
    case Kind::Eventually:
      return true;
    default:
      return false;
  }
}

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::uint64_t str_hash(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

Formula::Formula() = default;

Kind Formula::kind() const { return p_->kind; }
const std::string& Formula::name() const { return p_->name; }
const Formula& Formula::lhs() const { return p_->a; }
const Formula& Formula::rhs() const { return p_->b; }
std::size_t Formula::hash() const { return p_->hash; }
std::size_t Formula::size() const { return p_->size; }
std::size_t Formula::depth() const { return p_->depth; }

bool Formula::operator==(const Formula& o) const {
  if (p_ == o.p_) return true;
  if (!p_ || !o.p_) return false;
  if (p_->hash != o.p_->hash || p_->kind != o.p_->kind || p_->size != o.p_->size) return false;
  if (p_->name != o.p_->name) return false;
  int n = arity(p_->kind);
  if (n >= 1 && !(p_->a == o.p_->a)) return false;
  if (n >= 2 && !(p_->b == o.p_->b)) return false;
  return true;
}

bool Formula::operator<(const Formula& o) const {
  if (p_ == o.p_) return false;
  if (p_->kind != o.p_->kind) return p_->kind < o.p_->kind;
  if (p_->name != o.p_->name) return p_->name < o.p_->name;
  int n = arity(p_->kind);
  if (n >= 1) {
    if (p_->a < o.p_->a) return true;
    if (o.p_->a < p_->a) return false;
  }
  if (n >= 2) return p_->b < o.p_->b;
  return false;
}

Formula make_node(Kind k, std::string name, Formula a, Formula b) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->name = std::move(name);
  std::uint64_t h = mix(static_cast<std::uint64_t>(k) + 1, str_hash(n->name));
  int ar = arity(k);
  if (ar >= 1) {
    h = mix(h, a.hash());
    n->size += a.size();
    n->depth = a.depth() + 1;
  }
  if (ar >= 2) {
    h = mix(h, b.hash());
    n->size += b.size();
    n->depth = std::max(n->depth, b.depth() + 1);
  }
  n->hash = static_cast<std::size_t>(h);
  n->a = std::move(a);
  n->b = std::move(b);
  Formula f;
  f.p_ = std::move(n);
  return f;
}

bool valid_atom_name(const std::string& s) {
  if (s.empty() || !(s[0] >= 'a' && s[0] <= 'z')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

Formula atom(const std::string& name) { return make_node(Kind::Atom, name, {}, {}); }
Formula top() { return make_node(Kind::Truth, "", {}, {}); }
Formula bot() { return make_node(Kind::Falsum, "", {}, {}); }
Formula initial() { return make_node(Kind::Initial, "", {}, {}); }
Formula final_() { return make_node(Kind::Final, "", {}, {}); }
Formula unary(Kind k, Formula a) { return make_node(k, "", std::move(a), {}); }
Formula binary(Kind k, Formula a, Formula b) { return make_node(k, "", std::move(a), std::move(b)); }
Formula mk_and(Formula a, Formula b) { return binary(Kind::And, a, b); }
Formula mk_or(Formula a, Formula b) { return binary(Kind::Or, a, b); }
Formula implies(Formula a, Formula b) { return binary(Kind::Implies, a, b); }
Formula iff(Formula a, Formula b) { return binary(Kind::Iff, a, b); }
Formula neg(Formula a) { return unary(Kind::Not, a); }
Formula prev(Formula a) { return unary(Kind::Previous, a); }
Formula wprev(Formula a) { return unary(Kind::WeakPrevious, a); }
Formula since(Formula a, Formula b) { return binary(Kind::Since, a, b); }
Formula trigger(Formula a, Formula b) { return binary(Kind::Trigger, a, b); }
Formula always_before(Formula a) { return unary(Kind::AlwaysBefore, a); }
Formula eventually_before(Formula a) { return unary(Kind::EventuallyBefore, a); }
Formula next(Formula a) { return unary(Kind::Next, a); }
Formula wnext(Formula a) { return unary(Kind::WeakNext, a); }
Formula until(Formula a, Formula b) { return binary(Kind::Until, a, b); }
Formula release(Formula a, Formula b) { return binary(Kind::Release, a, b); }
Formula while_(Formula a, Formula b) { return binary(Kind::While, a, b); }
Formula always(Formula a) { return unary(Kind::Always, a); }
Formula eventually(Formula a) { return unary(Kind::Eventually, a); }

Formula conj(const std::vector<Formula>& fs) {
  if (fs.empty()) return top();
  Formula r = fs.back();
  for (std::size_t i = fs.size() - 1; i-- > 0;) r = mk_and(fs[i], r);
  return r;
}

Formula disj(const std::vector<Formula>& fs) {
  if (fs.empty()) return bot();
  Formula r = fs.back();
  for (std::size_t i = fs.size() - 1; i-- > 0;) r = mk_or(fs[i], r);
  return r;
}

ParseError::ParseError(const std::string& msg, std::size_t pos)
    : std::runtime_error(msg + " at position " + std::to_string(pos)), msg_(msg), pos_(pos) {}

// ---------------------------------------------------------------- printing

namespace {

const char* token_of(Kind k) {
  switch (k) {
    case Kind::Truth: return "&true";
    case Kind::Falsum: return "&false";
    case Kind::Initial: return "&initial";
    case Kind::Final: return "&final";
    case Kind::And: return "&";
    case Kind::Or: return "|";
    case Kind::Implies: return "->";
    case Kind::Iff: return "<->";
    case Kind::Not: return "~";
    case Kind::Previous: return "<";
    case Kind::WeakPrevious: return "<:";
    case Kind::AlwaysBefore: return "<*";
    case Kind::EventuallyBefore: return "<?";
    case Kind::Next: return ">";
    case Kind::WeakNext: return ">:";
    case Kind::Always: return ">*";
    case Kind::Eventually: return ">?";
    case Kind::Since: return "<?";
    case Kind::Trigger: return "<*";
    case Kind::Until: return ">?";
    case Kind::Release: return ">*";
    case Kind::While: return ">!";
    case Kind::Atom: return "";
  }
  return "";
}

void print_rec(const Formula& f, std::string& out) {
  int ar = arity(f.kind());
  if (f.kind() == Kind::Atom) {
    out += f.name();
  } else if (ar == 0) {
    out += token_of(f.kind());
  } else if (ar == 1) {
    out += '(';
    out += token_of(f.kind());
    out += ' ';
    print_rec(f.lhs(), out);
    out += ')';
  } else {
    out += '(';
    print_rec(f.lhs(), out);
    out += ' ';
    out += token_of(f.kind());
    out += ' ';
    print_rec(f.rhs(), out);
    out += ')';
  }
}

}  // namespace

std::string print(const Formula& f) {
  std::string out;
  print_rec(f, out);
  return out;
}

// ----------------------------------------------------------------- parsing

namespace {

enum class Tok {
  Ident,
  True,
  False,
  Initial,
  Final,
  LParen,
  RParen,
  Tilde,
  And,
  Or,
  Arrow,
  DArrow,
  Lt,
  LtColon,
  LtStar,
  LtQ,
  Gt,
  GtColon,
  GtStar,
  GtQ,
  GtBang,
  End
};

struct Token {
  Tok tok;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto starts = [&](const char* p) { return s.compare(i, std::char_traits<char>::length(p), p) == 0; };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '%') {
      while (i < s.size() && s[i] != '\n') ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      std::string id = s.substr(start, i - start);
      if (!valid_atom_name(id)) throw ParseError("invalid atom name '" + id + "'", start);
      out.push_back({Tok::Ident, id, start});
      continue;
    }
    if (c == '&') {
      std::size_t j = i + 1;
      while (j < s.size() && std::isalpha(static_cast<unsigned char>(s[j]))) ++j;
      std::string w = s.substr(i + 1, j - i - 1);
      if (w == "true") { out.push_back({Tok::True, "", start}); i = j; continue; }
      if (w == "false") { out.push_back({Tok::False, "", start}); i = j; continue; }
      if (w == "initial") { out.push_back({Tok::Initial, "", start}); i = j; continue; }
      if (w == "final") { out.push_back({Tok::Final, "", start}); i = j; continue; }
      out.push_back({Tok::And, "", start});
      ++i;
      continue;
    }
    if (starts("<->")) { out.push_back({Tok::DArrow, "", start}); i += 3; continue; }
    if (starts("->")) { out.push_back({Tok::Arrow, "", start}); i += 2; continue; }
    if (starts("<:")) { out.push_back({Tok::LtColon, "", start}); i += 2; continue; }
    if (starts("<*")) { out.push_back({Tok::LtStar, "", start}); i += 2; continue; }
    if (starts("<?")) { out.push_back({Tok::LtQ, "", start}); i += 2; continue; }
    if (starts(">:")) { out.push_back({Tok::GtColon, "", start}); i += 2; continue; }
    if (starts(">*")) { out.push_back({Tok::GtStar, "", start}); i += 2; continue; }
    if (starts(">?")) { out.push_back({Tok::GtQ, "", start}); i += 2; continue; }
    if (starts(">!")) { out.push_back({Tok::GtBang, "", start}); i += 2; continue; }
    switch (c) {
      case '<': out.push_back({Tok::Lt, "", start}); break;
      case '>': out.push_back({Tok::Gt, "", start}); break;
      case '(': out.push_back({Tok::LParen, "", start}); break;
      case ')': out.push_back({Tok::RParen, "", start}); break;
      case '~': out.push_back({Tok::Tilde, "", start}); break;
      case '|': out.push_back({Tok::Or, "", start}); break;
      default: throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
    ++i;
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, const std::vector<std::string>* alphabet)
      : toks_(std::move(toks)), alphabet_(alphabet) {}

  Formula parse_all() {
    Formula f = parse_iff();
    if (peek().tok != Tok::End) throw ParseError("unexpected token", peek().pos);
    return f;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  Token take() { return toks_[i_++]; }

  Formula parse_iff() {
    Formula l = parse_imp();
    while (peek().tok == Tok::DArrow) {
      take();
      l = iff(l, parse_imp());
    }
    return l;
  }

  Formula parse_imp() {
    Formula l = parse_or();
    if (peek().tok == Tok::Arrow) {
      take();
      return implies(l, parse_imp());
    }
    return l;
  }

  Formula parse_or() {
    Formula l = parse_and();
    while (peek().tok == Tok::Or) {
      take();
      l = mk_or(l, parse_and());
    }
    return l;
  }

  Formula parse_and() {
    Formula l = parse_temporal();
    while (peek().tok == Tok::And) {
      take();
      l = mk_and(l, parse_temporal());
    }
    return l;
  }

  static bool binary_temporal(Tok t, Kind& k) {
    switch (t) {
      case Tok::GtQ: k = Kind::Until; return true;
      case Tok::GtStar: k = Kind::Release; return true;
      case Tok::LtQ: k = Kind::Since; return true;
      case Tok::LtStar: k = Kind::Trigger; return true;
      case Tok::GtBang: k = Kind::While; return true;
      default: return false;
    }
  }

  Formula parse_temporal() {
    Formula l = parse_unary();
    Kind k;
    if (binary_temporal(peek().tok, k)) {
      take();
      return binary(k, l, parse_temporal());
    }
    return l;
  }

  Formula parse_unary() {
    const Token& t = peek();
    Kind k;
    switch (t.tok) {
      case Tok::Tilde: k = Kind::Not; break;
      case Tok::Lt: k = Kind::Previous; break;
      case Tok::LtColon: k = Kind::WeakPrevious; break;
      case Tok::LtStar: k = Kind::AlwaysBefore; break;
      case Tok::LtQ: k = Kind::EventuallyBefore; break;
      case Tok::Gt: k = Kind::Next; break;
      case Tok::GtColon: k = Kind::WeakNext; break;
      case Tok::GtStar: k = Kind::Always; break;
      case Tok::GtQ: k = Kind::Eventually; break;
      default: return parse_primary();
    }
    take();
    return unary(k, parse_unary());
  }

  Formula parse_primary() {
    Token t = take();
    switch (t.tok) {
      case Tok::Ident:
        if (alphabet_) {
          bool found = false;
          for (const auto& a : *alphabet_) found = found || a == t.text;
          if (!found) throw ParseError("unknown atom '" + t.text + "'", t.pos);
        }
        return atom(t.text);
      case Tok::True: return top();
      case Tok::False: return bot();
      case Tok::Initial: return initial();
      case Tok::Final: return final_();
      case Tok::LParen: {
        Formula f = parse_iff();
        if (peek().tok != Tok::RParen) throw ParseError("expected ')'", peek().pos);
        take();
        return f;
      }
      case Tok::End: throw ParseError("unexpected end of input", t.pos);
      default: throw ParseError("unexpected token", t.pos);
    }
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  const std::vector<std::string>* alphabet_;
};

}  // namespace

Formula parse(const std::string& text, const std::vector<std::string>* alphabet) {
  Parser p(lex(text), alphabet);
  return p.parse_all();
}

std::vector<Formula> parse_theory(const std::string& text) {
  std::string clean;
  bool comment = false;
  for (char c : text) {
    if (c == '%') comment = true;
    if (c == '\n') comment = false;
    clean += comment ? ' ' : c;
  }
  std::vector<Formula> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= clean.size(); ++i) {
    if (i == clean.size() || clean[i] == '.') {
      std::string part = clean.substr(start, i - start);
      bool blank = true;
      for (char c : part) blank = blank && std::isspace(static_cast<unsigned char>(c));
      if (!blank) {
        try {
          out.push_back(parse(part));
        } catch (const ParseError& e) {
          throw ParseError(std::string("in theory item ") + std::to_string(out.size() + 1) + ": " + e.message(),
                           start + e.position());
        }
      }
      start = i + 1;
    }
  }
  return out;
}

// -------------------------------------------------------------- rewriting

Formula expand_derived(const Formula& f) {
  switch (f.kind()) {
    case Kind::Atom:
    case Kind::Falsum:
      return f;
    case Kind::Truth:
      return implies(bot(), bot());
    case Kind::Initial:
      return implies(prev(expand_derived(top())), bot());
    case Kind::Final:
      return implies(next(expand_derived(top())), bot());
    case Kind::Not:
      return implies(expand_derived(f.lhs()), bot());
    case Kind::Iff: {
      Formula a = expand_derived(f.lhs()), b = expand_derived(f.rhs());
      return mk_and(implies(a, b), implies(b, a));
    }
    case Kind::WeakPrevious:
      return mk_or(prev(expand_derived(f.lhs())), expand_derived(initial()));
    case Kind::WeakNext:
      return mk_or(next(expand_derived(f.lhs())), expand_derived(final_()));
    case Kind::AlwaysBefore:
      return trigger(bot(), expand_derived(f.lhs()));
    case Kind::EventuallyBefore:
      return since(expand_derived(top()), expand_derived(f.lhs()));
    case Kind::Always:
      return release(bot(), expand_derived(f.lhs()));
    case Kind::Eventually:
      return until(expand_derived(top()), expand_derived(f.lhs()));
    default:
      break;
  }
  if (arity(f.kind()) == 1) return unary(f.kind(), expand_derived(f.lhs()));
  return binary(f.kind(), expand_derived(f.lhs()), expand_derived(f.rhs()));
}

std::vector<Formula> subformulas(const Formula& f) {
  std::vector<Formula> out;
  std::set<Formula> seen;
  std::function<void(const Formula&)> rec = [&](const Formula& g) {
    if (seen.count(g)) return;
    int ar = arity(g.kind());
    if (ar >= 1) rec(g.lhs());
    if (ar >= 2) rec(g.rhs());
    if (seen.insert(g).second) out.push_back(g);
  };
  rec(f);
  return out;
}

std::set<std::string> atoms_of(const Formula& f) {
  std::set<std::string> out;
  std::function<void(const Formula&)> rec = [&](const Formula& g) {
    if (g.kind() == Kind::Atom) out.insert(g.name());
    int ar = arity(g.kind());
    if (ar >= 1) rec(g.lhs());
    if (ar >= 2) rec(g.rhs());
  };
  rec(f);
  return out;
}

std::set<std::string> atoms_of(const std::vector<Formula>& fs) {
  std::set<std::string> out;
  for (const auto& f : fs) {
    auto s = atoms_of(f);
    out.insert(s.begin(), s.end());
  }
  return out;
}

bool is_implication_free(const Formula& f) {
  switch (f.kind()) {
    case Kind::Implies:
    case Kind::Not:
    case Kind::Iff:
    case Kind::While:
    case Kind::Initial:
    case Kind::Final:
      return false;
    default:
      break;
  }
  int ar = arity(f.kind());
  if (ar >= 1 && !is_implication_free(f.lhs())) return false;
  if (ar >= 2 && !is_implication_free(f.rhs())) return false;
  return true;
}

Formula dual_map(const Formula& f) {
  static const std::map<Kind, Kind> table = {
      {Kind::And, Kind::Or},         {Kind::Or, Kind::And},
      {Kind::Truth, Kind::Falsum},   {Kind::Falsum, Kind::Truth},
      {Kind::Until, Kind::Release},  {Kind::Release, Kind::Until},
      {Kind::Next, Kind::WeakNext},  {Kind::WeakNext, Kind::Next},
      {Kind::Always, Kind::Eventually}, {Kind::Eventually, Kind::Always},
      {Kind::Since, Kind::Trigger},  {Kind::Trigger, Kind::Since},
      {Kind::Previous, Kind::WeakPrevious}, {Kind::WeakPrevious, Kind::Previous},
      {Kind::AlwaysBefore, Kind::EventuallyBefore}, {Kind::EventuallyBefore, Kind::AlwaysBefore},
  };
  if (f.kind() == Kind::Atom) return f;
  auto it = table.find(f.kind());
  if (it == table.end())
    throw std::invalid_argument("dual_map: formula is not implication-free: " + print(f));
  int ar = arity(f.kind());
  if (ar == 0) return make_node(it->second, "", {}, {});
  if (ar == 1) return unary(it->second, dual_map(f.lhs()));
  return binary(it->second, dual_map(f.lhs()), dual_map(f.rhs()));
}

Formula swap_time_map(const Formula& f) {
  static const std::map<Kind, Kind> table = {
      {Kind::Until, Kind::Since},         {Kind::Since, Kind::Until},
      {Kind::Release, Kind::Trigger},     {Kind::Trigger, Kind::Release},
      {Kind::Next, Kind::Previous},       {Kind::Previous, Kind::Next},
      {Kind::WeakNext, Kind::WeakPrevious}, {Kind::WeakPrevious, Kind::WeakNext},
      {Kind::Always, Kind::AlwaysBefore}, {Kind::AlwaysBefore, Kind::Always},
      {Kind::Eventually, Kind::EventuallyBefore}, {Kind::EventuallyBefore, Kind::Eventually},
      {Kind::Final, Kind::Initial},       {Kind::Initial, Kind::Final},
  };
  if (f.kind() == Kind::While)
    throw std::invalid_argument("swap_time_map: while has no past counterpart");
  Kind k = f.kind();
  auto it = table.find(k);
  if (it != table.end()) k = it->second;
  int ar = arity(f.kind());
  if (ar == 0) return f.kind() == Kind::Atom ? f : make_node(k, "", {}, {});
  if (ar == 1) return unary(k, swap_time_map(f.lhs()));
  return binary(k, swap_time_map(f.lhs()), swap_time_map(f.rhs()));
}

Formula substitute(const Formula& f, const std::vector<std::pair<std::string, Formula>>& sub) {
  if (f.kind() == Kind::Atom) {
    for (const auto& [n, g] : sub)
      if (n == f.name()) return g;
    return f;
  }
  int ar = arity(f.kind());
  if (ar == 0) return f;
  if (ar == 1) return unary(f.kind(), substitute(f.lhs(), sub));
  return binary(f.kind(), substitute(f.lhs(), sub), substitute(f.rhs(), sub));
}

}  // namespace tasp
