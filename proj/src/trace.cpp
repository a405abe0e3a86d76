#include "tasp/trace.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <json.hpp>

namespace tasp {

Alphabet::Alphabet(std::initializer_list<std::string> atoms) : Alphabet(std::vector<std::string>(atoms)) {}

Alphabet::Alphabet(const std::set<std::string>& atoms) : atoms_(atoms.begin(), atoms.end()) {}

Alphabet::Alphabet(const std::vector<std::string>& atoms) {
  std::set<std::string> s(atoms.begin(), atoms.end());
  if (s.size() != atoms.size()) throw std::invalid_argument("alphabet contains duplicate atoms");
  atoms_.assign(s.begin(), s.end());
}

int Alphabet::index_of(const std::string& a) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), a);
  if (it == atoms_.end() || *it != a) return -1;
  return static_cast<int>(it - atoms_.begin());
}

Alphabet Alphabet::merged(const Alphabet& o) const {
  std::set<std::string> s(atoms_.begin(), atoms_.end());
  s.insert(o.atoms_.begin(), o.atoms_.end());
  return Alphabet(s);
}

bool HTTrace::valid() const {
  if (h.length() != t.length()) return false;
  for (std::size_t i = 0; i < t.length(); ++i)
    if (!std::includes(t.states[i].begin(), t.states[i].end(), h.states[i].begin(), h.states[i].end()))
      return false;
  return true;
}

const char* to_string(HtOrder o) {
  switch (o) {
    case HtOrder::Equal: return "equal";
    case HtOrder::StrictlyLess: return "strictly-less";
    case HtOrder::StrictlyGreater: return "strictly-greater";
    case HtOrder::Incomparable: return "incomparable";
    case HtOrder::DifferentThere: return "different-length-or-there";
  }
  return "";
}

HtOrder ht_compare(const HTTrace& a, const HTTrace& b) {
  if (a.length() != b.length() || a.h.length() != b.h.length() || !(a.t == b.t)) return HtOrder::DifferentThere;
  bool le = true, ge = true;
  for (std::size_t i = 0; i < a.h.length(); ++i) {
    const auto& x = a.h.states[i];
    const auto& y = b.h.states[i];
    le = le && std::includes(y.begin(), y.end(), x.begin(), x.end());
    ge = ge && std::includes(x.begin(), x.end(), y.begin(), y.end());
  }
  if (le && ge) return HtOrder::Equal;
  if (le) return HtOrder::StrictlyLess;
  if (ge) return HtOrder::StrictlyGreater;
  return HtOrder::Incomparable;
}

Budget Budget::parse(const std::string& spec) {
  Budget b;
  if (spec.empty()) return b;
  bool digits = std::all_of(spec.begin(), spec.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  if (digits) {
    b.trace_slots = std::stoi(spec);
    return b;
  }
  std::size_t start = 0;
  while (start <= spec.size()) {
    std::size_t end = spec.find(',', start);
    if (end == std::string::npos) end = spec.size();
    std::string item = spec.substr(start, end - start);
    auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("malformed budget item '" + item + "'");
    std::string key = item.substr(0, eq);
    int value = std::stoi(item.substr(eq + 1));
    if (key == "traces") b.trace_slots = value;
    else if (key == "ht") b.ht_slots = value;
    else if (key == "solver") b.solver_atoms = value;
    else if (key == "states") b.automaton_states = value;
    else throw std::invalid_argument("unknown budget key '" + key + "'");
    start = end + 1;
  }
  return b;
}

Budget Budget::from_env() {
  const char* v = std::getenv("TEMPOASP_BUDGET");
  return v ? parse(v) : Budget{};
}

MaskTrace to_mask(const Trace& t, const Alphabet& a) {
  MaskTrace m(t.length(), 0);
  for (std::size_t i = 0; i < t.length(); ++i)
    for (const auto& x : t.states[i]) {
      int idx = a.index_of(x);
      if (idx < 0) throw std::invalid_argument("atom '" + x + "' not in alphabet");
      m[i] |= 1u << idx;
    }
  return m;
}

Trace from_mask(const MaskTrace& m, const Alphabet& a) {
  Trace t;
  t.states.resize(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (m[i] >> j & 1u) t.states[i].insert(a.atoms()[j]);
  return t;
}

namespace {

void check_slots(std::size_t n, std::size_t lambda, int limit, const char* what) {
  if (n > 30) throw BudgetExceeded("alphabet too large for bitmask enumeration");
  if (static_cast<long long>(n) * static_cast<long long>(lambda) > limit)
    throw BudgetExceeded(std::string(what) + " enumeration needs " + std::to_string(n * lambda) +
                         " atom-slots, budget is " + std::to_string(limit));
}

}  // namespace

void for_each_trace(const Alphabet& a, std::size_t lambda, const std::function<void(const MaskTrace&)>& fn,
                    const Budget& b) {
  check_slots(a.size(), lambda, b.trace_slots, "trace");
  const std::uint32_t full = a.size() == 32 ? 0xffffffffu : ((1u << a.size()) - 1);
  MaskTrace m(lambda, 0);
  while (true) {
    fn(m);
    std::size_t i = lambda;
    while (i > 0) {
      --i;
      if (m[i] < full) {
        ++m[i];
        for (std::size_t j = i + 1; j < lambda; ++j) m[j] = 0;
        break;
      }
      if (i == 0) return;
    }
    if (lambda == 0) return;
  }
}

void for_each_ht_trace(const Alphabet& a, std::size_t lambda,
                       const std::function<void(const MaskTrace&, const MaskTrace&)>& fn, const Budget& b) {
  check_slots(a.size(), lambda, b.ht_slots, "HT-trace");
  Budget unlimited = b;
  unlimited.trace_slots = b.ht_slots;
  for_each_trace(
      a, lambda,
      [&](const MaskTrace& t) {
        MaskTrace h(lambda, 0);
        while (true) {
          fn(h, t);
          std::size_t i = lambda;
          bool done = true;
          while (i > 0) {
            --i;
            if (h[i] != t[i]) {
              h[i] = (h[i] - t[i]) & t[i];
              for (std::size_t j = i + 1; j < lambda; ++j) h[j] = 0;
              done = false;
              break;
            }
          }
          if (done) return;
        }
      },
      unlimited);
}

std::vector<Trace> enumerate_traces(const Alphabet& a, std::size_t lambda, const Budget& b) {
  std::vector<Trace> out;
  for_each_trace(a, lambda, [&](const MaskTrace& m) { out.push_back(from_mask(m, a)); }, b);
  return out;
}

std::vector<HTTrace> enumerate_ht_traces(const Alphabet& a, std::size_t lambda, const Budget& b) {
  std::vector<HTTrace> out;
  for_each_ht_trace(
      a, lambda, [&](const MaskTrace& h, const MaskTrace& t) { out.push_back({from_mask(h, a), from_mask(t, a)}); },
      b);
  return out;
}

namespace {

nlohmann::json states_json(const Trace& t) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& s : t.states) arr.push_back(std::vector<std::string>(s.begin(), s.end()));
  return arr;
}

Trace states_from(const nlohmann::json& arr) {
  if (!arr.is_array()) throw std::invalid_argument("trace states must be an array");
  Trace t;
  for (const auto& s : arr) {
    if (!s.is_array()) throw std::invalid_argument("trace state must be an array of atoms");
    State st;
    for (const auto& x : s) st.insert(x.get<std::string>());
    t.states.push_back(st);
  }
  return t;
}

}  // namespace

std::string trace_to_json(const Trace& t) {
  nlohmann::json j;
  j["states"] = states_json(t);
  return j.dump();
}

std::string ht_trace_to_json(const HTTrace& m) {
  nlohmann::ordered_json j;
  j["h"] = states_json(m.h);
  j["t"] = states_json(m.t);
  return j.dump();
}

Trace trace_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  if (!j.contains("states")) throw std::invalid_argument("trace document lacks 'states'");
  return states_from(j["states"]);
}

HTTrace ht_trace_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  if (!j.contains("h") || !j.contains("t")) throw std::invalid_argument("HT-trace document lacks 'h' or 't'");
  HTTrace m{states_from(j["h"]), states_from(j["t"])};
  if (!m.valid()) throw std::invalid_argument("HT-trace violates H <= T");
  return m;
}

Trace parse_trace_shorthand(const std::string& text) {
  Trace t;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  while (i < text.size()) {
    if (text[i] != '{') throw std::invalid_argument("expected '{' in trace at position " + std::to_string(i));
    ++i;
    State s;
    std::string cur;
    while (i < text.size() && text[i] != '}') {
      char c = text[i++];
      if (c == ',') {
        if (!cur.empty()) s.insert(cur);
        cur.clear();
      } else if (!std::isspace(static_cast<unsigned char>(c))) {
        cur += c;
      }
    }
    if (i >= text.size()) throw std::invalid_argument("unterminated state in trace");
    ++i;
    if (!cur.empty()) s.insert(cur);
    t.states.push_back(s);
    skip();
    if (i < text.size() && text[i] == '.') ++i;
    skip();
  }
  return t;
}

std::string trace_to_shorthand(const Trace& t) {
  std::string out;
  for (std::size_t i = 0; i < t.length(); ++i) {
    if (i) out += ' ';
    out += '{';
    bool first = true;
    for (const auto& a : t.states[i]) {
      if (!first) out += ',';
      out += a;
      first = false;
    }
    out += '}';
  }
  return out;
}

std::string ht_trace_to_shorthand(const HTTrace& m) {
  return "H=" + trace_to_shorthand(m.h) + " T=" + trace_to_shorthand(m.t);
}

}  // namespace tasp
