#include "tasp/sat.hpp"

#include <cstdlib>
#include <stdexcept>

namespace tasp {

SatSolver::SatSolver(int num_vars) : n_(num_vars) {
  clause_occ_.resize(n_ + 1);
  support_occ_.resize(n_ + 1);
}

int SatSolver::new_var() {
  ++n_;
  clause_occ_.emplace_back();
  support_occ_.emplace_back();
  return n_;
}

void SatSolver::add_clause(std::vector<int> lits) {
  std::vector<int> c;
  for (int l : lits) {
    if (l == 0 || std::abs(l) > n_) throw std::out_of_range("literal outside variable range");
    bool dup = false, taut = false;
    for (int x : c) {
      if (x == l) dup = true;
      if (x == -l) taut = true;
    }
    if (taut) return;
    if (!dup) c.push_back(l);
  }
  if (c.empty()) trivially_false_ = true;
  const int idx = static_cast<int>(clauses_.size());
  for (int l : c) clause_occ_[std::abs(l)].push_back(idx);
  clauses_.push_back(std::move(c));
}

void SatSolver::add_support(int var, std::vector<std::vector<int>> options) {
  if (var <= 0 || var > n_) throw std::out_of_range("support variable outside range");
  const int idx = static_cast<int>(supports_.size());
  support_occ_[var].push_back(idx);
  for (const auto& o : options)
    for (int l : o) {
      if (l == 0 || std::abs(l) > n_) throw std::out_of_range("literal outside variable range");
      auto& occ = support_occ_[std::abs(l)];
      if (occ.empty() || occ.back() != idx) occ.push_back(idx);
    }
  supports_.push_back({var, std::move(options)});
}

int SatSolver::value(int lit) const {
  signed char v = val_[std::abs(lit)];
  if (v < 0) return -1;
  return lit > 0 ? v : 1 - v;
}

bool SatSolver::assign(int lit) {
  int v = value(lit);
  if (v == 1) return true;
  if (v == 0) return false;
  val_[std::abs(lit)] = lit > 0 ? 1 : 0;
  trail_.push_back(lit);
  return true;
}

bool SatSolver::propagate() {
  while (qhead_ < trail_.size()) {
    const int var = std::abs(trail_[qhead_++]);
    for (int ci : clause_occ_[var]) {
      const auto& c = clauses_[ci];
      int open = 0, last = 0;
      bool sat = false;
      for (int l : c) {
        int v = value(l);
        if (v == 1) {
          sat = true;
          break;
        }
        if (v < 0) {
          ++open;
          last = l;
        }
      }
      if (sat) continue;
      if (open == 0) return false;
      if (open == 1 && !assign(last)) return false;
    }
    for (int si : support_occ_[var]) {
      const auto& s = supports_[si];
      const int hv = value(s.var);
      if (hv == 0) continue;
      int viable = 0;
      const std::vector<int>* only = nullptr;
      for (const auto& o : s.options) {
        bool dead = false;
        for (int l : o)
          if (value(l) == 0) {
            dead = true;
            break;
          }
        if (!dead) {
          ++viable;
          only = &o;
        }
      }
      if (viable == 0) {
        if (hv == 1) return false;
        if (!assign(-s.var)) return false;
      } else if (viable == 1 && hv == 1) {
        for (int l : *only)
          if (!assign(l)) return false;
      }
    }
  }
  return true;
}

bool SatSolver::search(const std::function<bool(const std::vector<char>&)>& fn, int next, std::uint64_t& count,
                       bool& stop) {
  if (!propagate()) return false;
  while (next <= n_ && val_[next] >= 0) ++next;
  if (next > n_) {
    ++count;
    std::vector<char> m(n_ + 1, 0);
    for (int i = 1; i <= n_; ++i) m[i] = static_cast<char>(val_[i]);
    if (!fn(m)) stop = true;
    return true;
  }
  for (int lit : {-next, next}) {
    const std::size_t mark = trail_.size();
    assign(lit);
    search(fn, next + 1, count, stop);
    while (trail_.size() > mark) {
      val_[std::abs(trail_.back())] = -1;
      trail_.pop_back();
    }
    qhead_ = mark;
    if (stop) return true;
  }
  return true;
}

std::uint64_t SatSolver::enumerate(const std::function<bool(const std::vector<char>&)>& fn,
                                   const std::vector<int>& assumptions) {
  std::uint64_t count = 0;
  if (trivially_false_) return 0;
  val_.assign(n_ + 1, -1);
  trail_.clear();
  qhead_ = 0;
  for (int l : assumptions)
    if (!assign(l)) return 0;
  for (const auto& c : clauses_) {
    if (c.size() == 1 && !assign(c[0])) return 0;
  }
  for (const auto& s : supports_) {
    bool any = false;
    for (const auto& o : s.options) {
      bool dead = false;
      for (int l : o)
        if (value(l) == 0) dead = true;
      if (!dead) any = true;
    }
    if (!any && !assign(-s.var)) return 0;
  }
  bool stop = false;
  search(fn, 1, count, stop);
  return count;
}

bool SatSolver::solve(std::vector<char>* model, const std::vector<int>& assumptions) {
  bool found = false;
  enumerate(
      [&](const std::vector<char>& m) {
        found = true;
        if (model) *model = m;
        return false;
      },
      assumptions);
  return found;
}

}  // namespace tasp
