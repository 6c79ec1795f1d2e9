#pragma once

#include <chrono>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace emmbmc::sat {

using Var = std::uint32_t;

/// A literal is a variable with a polarity, packed as 2*var + negated.
struct Lit {
  std::uint32_t code = 0;

  constexpr Var var() const { return code >> 1; }
  constexpr bool negated() const { return (code & 1u) != 0; }
  constexpr Lit operator~() const { return Lit{code ^ 1u}; }
  friend constexpr bool operator==(Lit, Lit) = default;
  friend constexpr auto operator<=>(Lit, Lit) = default;
};

constexpr Lit make_lit(Var v, bool negated = false) {
  return Lit{(v << 1) | (negated ? 1u : 0u)};
}

enum class Status { Sat, Unsat, Unknown };

struct Budget {
  /// Conflicts allowed in one solve call; negative means unlimited.
  std::int64_t conflicts = -1;
  /// Absolute deadline; time_point::max() means none.
  std::chrono::steady_clock::time_point deadline =
      std::chrono::steady_clock::time_point::max();
};

struct SolverStats {
  std::uint64_t solves = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t restarts = 0;
};

// Incremental CDCL solver: two watched literals, VSIDS, phase saving,
// Luby restarts, learnt clause reduction, and assumption cores in the
// style of MiniSat's analyzeFinal.
class Solver {
 public:
  Solver();

  Var new_var();
  std::size_t num_vars() const { return assigns_.size(); }
  std::size_t num_clauses() const { return clauses_.size(); }

  /// Adds a permanent clause. Returns false once the formula is
  /// unsatisfiable without assumptions. Throws std::out_of_range on an
  /// unallocated variable.
  bool add_clause(std::span<const Lit> lits);

  Status solve(std::span<const Lit> assumptions, const Budget& budget = {});

  /// Model value after Sat. Variables never touched by search read false.
  bool model_value(Lit l) const;
  bool model_value(Var v) const { return model_value(make_lit(v)); }

  /// After Unsat: assumption literals sufficient for unsatisfiability.
  const std::vector<Lit>& core() const { return core_; }

  /// True once the clause set alone is unsatisfiable.
  bool inconsistent() const { return !ok_; }

  const SolverStats& stats() const { return stats_; }

 private:
  using CRef = std::uint32_t;
  static constexpr CRef kNoReason = std::numeric_limits<CRef>::max();

  // lbool: 0 = true, 1 = false, 2 = undefined.
  static constexpr std::uint8_t kTrue = 0, kFalse = 1, kUndef = 2;

  struct Watcher {
    CRef cref;
    Lit blocker;
  };

  // Clause arena layout: [header][lbd][activity bits][lits...]
  // header = size << 2 | deleted << 1 | learnt
  std::uint32_t clause_size(CRef c) const { return arena_[c] >> 2; }
  bool clause_learnt(CRef c) const { return (arena_[c] & 1u) != 0; }
  bool clause_deleted(CRef c) const { return (arena_[c] & 2u) != 0; }
  Lit* clause_lits(CRef c) { return reinterpret_cast<Lit*>(&arena_[c + 3]); }
  const Lit* clause_lits(CRef c) const {
    return reinterpret_cast<const Lit*>(&arena_[c + 3]);
  }
  float& clause_activity(CRef c) {
    return *reinterpret_cast<float*>(&arena_[c + 2]);
  }
  std::uint32_t& clause_lbd(CRef c) { return arena_[c + 1]; }

  CRef alloc_clause(std::span<const Lit> lits, bool learnt);
  void attach(CRef c);
  void remove_clause(CRef c);
  bool locked(CRef c) const;

  std::uint8_t value(Lit l) const {
    std::uint8_t a = assigns_[l.var()];
    return a == kUndef ? kUndef : static_cast<std::uint8_t>(a ^ (l.negated() ? 1 : 0));
  }
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }
  void enqueue(Lit l, CRef reason);
  CRef propagate();
  void analyze(CRef conflict, std::vector<Lit>& learnt, int& backtrack_level,
               std::uint32_t& lbd);
  bool lit_redundant(Lit l, std::uint32_t abstract_levels);
  std::uint32_t abstract_level(Var v) const {
    return 1u << (static_cast<std::uint32_t>(level_[v]) & 31u);
  }
  void analyze_final(Lit failed);
  void cancel_until(int level);
  Lit pick_branch();
  void reduce_db();
  void garbage_collect();

  void var_bump(Var v);
  void var_decay() { var_inc_ /= 0.95; }
  void clause_bump(CRef c);
  void clause_decay() { cla_inc_ /= 0.999; }

  // VSIDS heap
  void heap_insert(Var v);
  void heap_up(std::size_t i);
  void heap_down(std::size_t i);
  Var heap_pop();
  bool heap_contains(Var v) const { return heap_index_[v] >= 0; }

  std::vector<std::uint32_t> arena_;
  std::size_t wasted_ = 0;
  std::vector<CRef> clauses_;
  std::vector<CRef> learnts_;
  std::vector<std::vector<Watcher>> watches_;

  std::vector<std::uint8_t> assigns_;
  std::vector<std::uint8_t> polarity_;
  std::vector<int> level_;
  std::vector<CRef> reason_;
  std::vector<Lit> trail_;
  std::vector<int> trail_lim_;
  std::size_t qhead_ = 0;

  std::vector<double> activity_;
  double var_inc_ = 1.0;
  double cla_inc_ = 1.0;
  std::vector<Var> heap_;
  std::vector<int> heap_index_;

  std::vector<std::uint8_t> seen_;
  std::vector<Lit> analyze_stack_;
  std::vector<Lit> analyze_toclear_;
  std::vector<std::uint32_t> level_stamp_;
  std::uint32_t stamp_ = 0;

  std::vector<std::uint8_t> model_;
  std::vector<Lit> core_;
  bool ok_ = true;
  double max_learnts_ = 0;

  SolverStats stats_;
};

}  // namespace emmbmc::sat
