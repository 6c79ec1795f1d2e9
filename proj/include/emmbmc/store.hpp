#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "emmbmc/sat.hpp"

namespace emmbmc {

using sat::Lit;

enum class Category : std::uint8_t {
  AddressCompare,
  Exclusivity,
  ReadData,
  InitConsistency,
  InitState,
  Transition,
  LoopFree,
  Property,
  ReadDisabled,
};

inline constexpr std::size_t kNumCategories = 9;

std::string_view category_name(Category c);

struct CategoryCounts {
  std::array<std::uint64_t, kNumCategories> clauses{};
  std::array<std::uint64_t, kNumCategories> gates{};

  std::uint64_t clauses_in(Category c) const { return clauses[static_cast<std::size_t>(c)]; }
  std::uint64_t gates_in(Category c) const { return gates[static_cast<std::size_t>(c)]; }
  std::uint64_t total_clauses() const;
  std::uint64_t total_gates() const;
  CategoryCounts operator-(const CategoryCounts& rhs) const;
};

struct SolveResult {
  sat::Status status = sat::Status::Unknown;
  /// On Unsat: subset of the assumptions sufficient for unsatisfiability.
  std::vector<Lit> core;
};

// Hybrid constraint store: 2-input AND gates and CNF clauses, counted
// separately per category. Gates are lowered to the three-clause AND
// encoding inside the solver, but only count as gates.
class ConstraintStore {
 public:
  explicit ConstraintStore(bool record_clauses = false);

  Lit new_var();
  Lit true_lit() const { return true_; }
  Lit false_lit() const { return ~true_; }
  std::size_t num_vars() const { return solver_.num_vars(); }

  void add_clause(std::span<const Lit> lits);
  void add_clause(std::initializer_list<Lit> lits) {
    add_clause(std::span<const Lit>(lits.begin(), lits.size()));
  }
  /// out <-> a & b
  void add_and(Lit out, Lit a, Lit b);
  /// Fresh output variable constrained to a & b.
  Lit make_and(Lit a, Lit b);

  Category category() const { return active_; }
  void set_category(Category c) { active_ = c; }

  const CategoryCounts& counts() const { return counts_; }

  SolveResult solve(std::span<const Lit> assumptions, const sat::Budget& budget = {});
  bool value(Lit l) const { return solver_.model_value(l); }

  /// DIMACS of every clause added so far plus the assumptions as units.
  /// Requires the store to have been created with record_clauses.
  void write_dimacs(std::ostream& os, std::span<const Lit> assumptions) const;
  bool recording() const { return record_; }

  const sat::SolverStats& solver_stats() const { return solver_.stats(); }

 private:
  void emit(std::span<const Lit> lits);

  sat::Solver solver_;
  Lit true_;
  Category active_ = Category::Transition;
  CategoryCounts counts_;
  bool record_;
  std::vector<std::vector<Lit>> recorded_;
};

// Sets the active category for the lifetime of the guard.
class CategoryScope {
 public:
  CategoryScope(ConstraintStore& store, Category c) : store_(store), saved_(store.category()) {
    store_.set_category(c);
  }
  ~CategoryScope() { store_.set_category(saved_); }
  CategoryScope(const CategoryScope&) = delete;
  CategoryScope& operator=(const CategoryScope&) = delete;

 private:
  ConstraintStore& store_;
  Category saved_;
};

}  // namespace emmbmc
