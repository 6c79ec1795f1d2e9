#include "emmbmc/sat.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>
#include <string>

namespace emmbmc::sat {

namespace {

double luby(double y, int x) {
  int size = 1, seq = 0;
  while (size < x + 1) {
    seq++;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    seq--;
    x = x % size;
  }
  double r = 1;
  for (int i = 0; i < seq; ++i) r *= y;
  return r;
}

enum class SearchResult { Sat, Unsat, Restart, Budget };

}  // namespace

Solver::Solver() = default;

Var Solver::new_var() {
  Var v = static_cast<Var>(assigns_.size());
  assigns_.push_back(kUndef);
  polarity_.push_back(1);
  level_.push_back(0);
  reason_.push_back(kNoReason);
  activity_.push_back(0.0);
  seen_.push_back(0);
  heap_index_.push_back(-1);
  watches_.emplace_back();
  watches_.emplace_back();
  heap_insert(v);
  return v;
}

Solver::CRef Solver::alloc_clause(std::span<const Lit> lits, bool learnt) {
  CRef c = static_cast<CRef>(arena_.size());
  arena_.push_back((static_cast<std::uint32_t>(lits.size()) << 2) | (learnt ? 1u : 0u));
  arena_.push_back(0);
  float act = 0.0f;
  std::uint32_t bits;
  std::memcpy(&bits, &act, sizeof bits);
  arena_.push_back(bits);
  for (Lit l : lits) arena_.push_back(l.code);
  return c;
}

void Solver::attach(CRef c) {
  const Lit* lits = clause_lits(c);
  watches_[lits[0].code].push_back({c, lits[1]});
  watches_[lits[1].code].push_back({c, lits[0]});
}

bool Solver::locked(CRef c) const {
  const Lit* lits = clause_lits(c);
  return reason_[lits[0].var()] == c && value(lits[0]) == kTrue;
}

void Solver::remove_clause(CRef c) {
  arena_[c] |= 2u;
  wasted_ += clause_size(c) + 3;
}

bool Solver::add_clause(std::span<const Lit> input) {
  for (Lit l : input) {
    if (l.var() >= num_vars()) {
      throw std::out_of_range("clause references unallocated variable " +
                              std::to_string(l.var()));
    }
  }
  if (!ok_) return false;
  cancel_until(0);

  std::vector<Lit> lits(input.begin(), input.end());
  std::sort(lits.begin(), lits.end());
  std::size_t j = 0;
  Lit prev{0xffffffffu};
  for (Lit l : lits) {
    if (value(l) == kTrue || l == ~prev) return true;
    if (value(l) != kFalse && l != prev) {
      lits[j++] = l;
      prev = l;
    }
  }
  lits.resize(j);

  if (lits.empty()) {
    ok_ = false;
    return false;
  }
  if (lits.size() == 1) {
    enqueue(lits[0], kNoReason);
    if (propagate() != kNoReason) ok_ = false;
    return ok_;
  }
  CRef c = alloc_clause(lits, false);
  clauses_.push_back(c);
  attach(c);
  return true;
}

void Solver::enqueue(Lit l, CRef reason) {
  Var v = l.var();
  assigns_[v] = l.negated() ? kFalse : kTrue;
  level_[v] = decision_level();
  reason_[v] = reason;
  trail_.push_back(l);
}

Solver::CRef Solver::propagate() {
  CRef confl = kNoReason;
  while (qhead_ < trail_.size()) {
    Lit p = trail_[qhead_++];
    Lit false_lit = ~p;
    std::vector<Watcher>& ws = watches_[false_lit.code];
    stats_.propagations++;
    std::size_t i = 0, j = 0;
    const std::size_t n = ws.size();
    while (i < n) {
      Watcher w = ws[i];
      if (value(w.blocker) == kTrue) {
        ws[j++] = ws[i++];
        continue;
      }
      CRef c = w.cref;
      Lit* lits = clause_lits(c);
      if (lits[0] == false_lit) std::swap(lits[0], lits[1]);
      ++i;
      Lit first = lits[0];
      Watcher nw{c, first};
      if (first != w.blocker && value(first) == kTrue) {
        ws[j++] = nw;
        continue;
      }
      const std::uint32_t sz = clause_size(c);
      bool moved = false;
      for (std::uint32_t k = 2; k < sz; ++k) {
        if (value(lits[k]) != kFalse) {
          lits[1] = lits[k];
          lits[k] = false_lit;
          watches_[lits[1].code].push_back(nw);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = nw;
      if (value(first) == kFalse) {
        confl = c;
        qhead_ = trail_.size();
        while (i < n) ws[j++] = ws[i++];
      } else {
        enqueue(first, c);
      }
    }
    ws.resize(j);
    if (confl != kNoReason) break;
  }
  return confl;
}

void Solver::analyze(CRef confl, std::vector<Lit>& out, int& backtrack_level,
                     std::uint32_t& lbd) {
  int path_count = 0;
  Lit p{0xffffffffu};
  bool first = true;
  out.clear();
  out.push_back(Lit{});
  int index = static_cast<int>(trail_.size()) - 1;

  do {
    if (clause_learnt(confl)) clause_bump(confl);
    const Lit* lits = clause_lits(confl);
    const std::uint32_t sz = clause_size(confl);
    for (std::uint32_t k = first ? 0 : 1; k < sz; ++k) {
      Lit q = lits[k];
      Var v = q.var();
      if (!seen_[v] && level_[v] > 0) {
        var_bump(v);
        seen_[v] = 1;
        if (level_[v] >= decision_level()) {
          path_count++;
        } else {
          out.push_back(q);
        }
      }
    }
    while (!seen_[trail_[index--].var()]) {
    }
    p = trail_[index + 1];
    confl = reason_[p.var()];
    seen_[p.var()] = 0;
    path_count--;
    first = false;
  } while (path_count > 0);
  out[0] = ~p;

  analyze_toclear_ = out;
  std::uint32_t abstract = 0;
  for (std::size_t i = 1; i < out.size(); ++i) abstract |= abstract_level(out[i].var());
  std::size_t j = 1;
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (reason_[out[i].var()] == kNoReason || !lit_redundant(out[i], abstract)) {
      out[j++] = out[i];
    }
  }
  out.resize(j);
  for (Lit l : analyze_toclear_) seen_[l.var()] = 0;

  if (out.size() == 1) {
    backtrack_level = 0;
  } else {
    std::size_t max_i = 1;
    for (std::size_t i = 2; i < out.size(); ++i) {
      if (level_[out[i].var()] > level_[out[max_i].var()]) max_i = i;
    }
    std::swap(out[1], out[max_i]);
    backtrack_level = level_[out[1].var()];
  }

  ++stamp_;
  if (level_stamp_.size() < static_cast<std::size_t>(decision_level()) + 1) {
    level_stamp_.resize(decision_level() + 1, 0);
  }
  lbd = 0;
  for (Lit l : out) {
    int lv = level_[l.var()];
    if (level_stamp_[lv] != stamp_) {
      level_stamp_[lv] = stamp_;
      lbd++;
    }
  }
}

bool Solver::lit_redundant(Lit p, std::uint32_t abstract_levels) {
  analyze_stack_.clear();
  analyze_stack_.push_back(p);
  const std::size_t top = analyze_toclear_.size();
  while (!analyze_stack_.empty()) {
    Lit q = analyze_stack_.back();
    analyze_stack_.pop_back();
    CRef c = reason_[q.var()];
    const Lit* lits = clause_lits(c);
    const std::uint32_t sz = clause_size(c);
    for (std::uint32_t k = 1; k < sz; ++k) {
      Lit l = lits[k];
      Var v = l.var();
      if (!seen_[v] && level_[v] > 0) {
        if (reason_[v] != kNoReason && (abstract_level(v) & abstract_levels) != 0) {
          seen_[v] = 1;
          analyze_stack_.push_back(l);
          analyze_toclear_.push_back(l);
        } else {
          for (std::size_t i = top; i < analyze_toclear_.size(); ++i) {
            seen_[analyze_toclear_[i].var()] = 0;
          }
          analyze_toclear_.resize(top);
          return false;
        }
      }
    }
  }
  return true;
}

void Solver::analyze_final(Lit failed) {
  core_.clear();
  core_.push_back(failed);
  if (decision_level() == 0) return;
  seen_[failed.var()] = 1;
  for (int i = static_cast<int>(trail_.size()) - 1; i >= trail_lim_[0]; --i) {
    Var x = trail_[i].var();
    if (!seen_[x]) continue;
    if (reason_[x] == kNoReason) {
      if (trail_[i] != failed) core_.push_back(trail_[i]);
    } else {
      const Lit* lits = clause_lits(reason_[x]);
      const std::uint32_t sz = clause_size(reason_[x]);
      for (std::uint32_t k = 1; k < sz; ++k) {
        if (level_[lits[k].var()] > 0) seen_[lits[k].var()] = 1;
      }
    }
    seen_[x] = 0;
  }
  seen_[failed.var()] = 0;
  std::sort(core_.begin(), core_.end());
  core_.erase(std::unique(core_.begin(), core_.end()), core_.end());
}

void Solver::cancel_until(int level) {
  if (decision_level() <= level) return;
  for (int i = static_cast<int>(trail_.size()) - 1; i >= trail_lim_[level]; --i) {
    Var v = trail_[i].var();
    assigns_[v] = kUndef;
    polarity_[v] = trail_[i].negated() ? 1 : 0;
    reason_[v] = kNoReason;
    if (!heap_contains(v)) heap_insert(v);
  }
  trail_.resize(trail_lim_[level]);
  trail_lim_.resize(level);
  qhead_ = trail_.size();
}

Lit Solver::pick_branch() {
  while (!heap_.empty()) {
    Var v = heap_pop();
    if (assigns_[v] == kUndef) {
      stats_.decisions++;
      return make_lit(v, polarity_[v] != 0);
    }
  }
  return Lit{0xffffffffu};
}

void Solver::var_bump(Var v) {
  activity_[v] += var_inc_;
  if (activity_[v] > 1e100) {
    for (double& a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }
  if (heap_contains(v)) heap_up(static_cast<std::size_t>(heap_index_[v]));
}

void Solver::clause_bump(CRef c) {
  float& a = clause_activity(c);
  a += static_cast<float>(cla_inc_);
  if (a > 1e20f) {
    for (CRef l : learnts_) clause_activity(l) *= 1e-20f;
    cla_inc_ *= 1e-20;
  }
}

void Solver::heap_insert(Var v) {
  heap_index_[v] = static_cast<int>(heap_.size());
  heap_.push_back(v);
  heap_up(heap_.size() - 1);
}

void Solver::heap_up(std::size_t i) {
  Var v = heap_[i];
  while (i > 0) {
    std::size_t parent = (i - 1) >> 1;
    if (activity_[heap_[parent]] >= activity_[v]) break;
    heap_[i] = heap_[parent];
    heap_index_[heap_[i]] = static_cast<int>(i);
    i = parent;
  }
  heap_[i] = v;
  heap_index_[v] = static_cast<int>(i);
}

void Solver::heap_down(std::size_t i) {
  Var v = heap_[i];
  const std::size_t n = heap_.size();
  for (;;) {
    std::size_t child = 2 * i + 1;
    if (child >= n) break;
    if (child + 1 < n && activity_[heap_[child + 1]] > activity_[heap_[child]]) child++;
    if (activity_[heap_[child]] <= activity_[v]) break;
    heap_[i] = heap_[child];
    heap_index_[heap_[i]] = static_cast<int>(i);
    i = child;
  }
  heap_[i] = v;
  heap_index_[v] = static_cast<int>(i);
}

Var Solver::heap_pop() {
  Var top = heap_[0];
  heap_index_[top] = -1;
  Var last = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_[0] = last;
    heap_index_[last] = 0;
    heap_down(0);
  }
  return top;
}

void Solver::reduce_db() {
  std::sort(learnts_.begin(), learnts_.end(), [this](CRef a, CRef b) {
    bool a_glue = clause_lbd(a) <= 2, b_glue = clause_lbd(b) <= 2;
    if (a_glue != b_glue) return !a_glue;
    return clause_activity(a) < clause_activity(b);
  });
  const std::size_t half = learnts_.size() / 2;
  std::size_t j = 0;
  for (std::size_t i = 0; i < learnts_.size(); ++i) {
    CRef c = learnts_[i];
    if (i < half && clause_lbd(c) > 2 && clause_size(c) > 2 && !locked(c)) {
      remove_clause(c);
    } else {
      learnts_[j++] = c;
    }
  }
  learnts_.resize(j);
  for (auto& ws : watches_) {
    std::erase_if(ws, [this](const Watcher& w) { return clause_deleted(w.cref); });
  }
  if (wasted_ * 2 > arena_.size()) garbage_collect();
}

void Solver::garbage_collect() {
  std::vector<std::uint32_t> fresh;
  fresh.reserve(arena_.size() - wasted_);
  auto move = [&](CRef c) {
    CRef nc = static_cast<CRef>(fresh.size());
    const std::uint32_t words = clause_size(c) + 3;
    fresh.insert(fresh.end(), arena_.begin() + c, arena_.begin() + c + words);
    return nc;
  };
  std::vector<std::pair<CRef, CRef>> relocation;
  relocation.reserve(clauses_.size() + learnts_.size());
  for (CRef& c : clauses_) {
    CRef nc = move(c);
    relocation.emplace_back(c, nc);
    c = nc;
  }
  for (CRef& c : learnts_) {
    CRef nc = move(c);
    relocation.emplace_back(c, nc);
    c = nc;
  }
  std::sort(relocation.begin(), relocation.end());
  auto remap = [&](CRef c) {
    auto it = std::lower_bound(relocation.begin(), relocation.end(),
                               std::make_pair(c, CRef{0}));
    return it->second;
  };
  for (auto& ws : watches_) {
    for (Watcher& w : ws) w.cref = remap(w.cref);
  }
  for (Lit l : trail_) {
    CRef& r = reason_[l.var()];
    if (r != kNoReason) r = remap(r);
  }
  arena_ = std::move(fresh);
  wasted_ = 0;
}

Status Solver::solve(std::span<const Lit> assumptions, const Budget& budget) {
  stats_.solves++;
  model_.clear();
  core_.clear();
  for (Lit l : assumptions) {
    if (l.var() >= num_vars()) {
      throw std::out_of_range("assumption references unallocated variable " +
                              std::to_string(l.var()));
    }
  }
  if (!ok_) return Status::Unsat;

  max_learnts_ = std::max(static_cast<double>(clauses_.size()) / 3.0, 4000.0);
  std::int64_t conflicts_left =
      budget.conflicts < 0 ? std::numeric_limits<std::int64_t>::max() : budget.conflicts;

  Status result = Status::Unknown;
  for (int restart = 0;; ++restart) {
    const auto limit = static_cast<std::int64_t>(luby(2.0, restart) * 100.0);
    // Inline search loop; restarts and budget checks happen between conflicts.
    SearchResult sr = SearchResult::Restart;
    std::int64_t conflict_count = 0;
    for (;;) {
      CRef confl = propagate();
      if (confl != kNoReason) {
        stats_.conflicts++;
        conflict_count++;
        conflicts_left--;
        if (decision_level() == 0) {
          ok_ = false;
          sr = SearchResult::Unsat;
          break;
        }
        std::vector<Lit> learnt;
        int bt = 0;
        std::uint32_t lbd = 0;
        analyze(confl, learnt, bt, lbd);
        cancel_until(bt);
        if (learnt.size() == 1) {
          enqueue(learnt[0], kNoReason);
        } else {
          CRef c = alloc_clause(learnt, true);
          clause_lbd(c) = lbd;
          learnts_.push_back(c);
          attach(c);
          clause_bump(c);
          enqueue(learnt[0], c);
        }
        var_decay();
        clause_decay();
        continue;
      }
      if (conflict_count >= limit) {
        sr = SearchResult::Restart;
        break;
      }
      if (conflicts_left <= 0) {
        sr = SearchResult::Budget;
        break;
      }
      if ((stats_.conflicts & 63u) == 0 && budget.deadline != Budget{}.deadline &&
          std::chrono::steady_clock::now() > budget.deadline) {
        sr = SearchResult::Budget;
        break;
      }
      if (static_cast<double>(learnts_.size()) >= max_learnts_ + trail_.size()) {
        reduce_db();
        max_learnts_ *= 1.1;
      }

      Lit next{0xffffffffu};
      bool failed = false;
      while (static_cast<std::size_t>(decision_level()) < assumptions.size()) {
        Lit p = assumptions[decision_level()];
        if (value(p) == kTrue) {
          trail_lim_.push_back(static_cast<int>(trail_.size()));
        } else if (value(p) == kFalse) {
          analyze_final(p);
          failed = true;
          break;
        } else {
          next = p;
          break;
        }
      }
      if (failed) {
        sr = SearchResult::Unsat;
        break;
      }
      if (next.code == 0xffffffffu) {
        next = pick_branch();
        if (next.code == 0xffffffffu) {
          sr = SearchResult::Sat;
          break;
        }
      }
      trail_lim_.push_back(static_cast<int>(trail_.size()));
      enqueue(next, kNoReason);
    }

    if (sr == SearchResult::Sat) {
      model_.assign(assigns_.begin(), assigns_.end());
      result = Status::Sat;
      break;
    }
    if (sr == SearchResult::Unsat) {
      result = Status::Unsat;
      break;
    }
    if (sr == SearchResult::Budget) {
      result = Status::Unknown;
      break;
    }
    stats_.restarts++;
    cancel_until(0);
  }
  cancel_until(0);
  return result;
}

bool Solver::model_value(Lit l) const {
  Var v = l.var();
  bool val = v < model_.size() && model_[v] == kTrue;
  return l.negated() ? !val : val;
}

}  // namespace emmbmc::sat
