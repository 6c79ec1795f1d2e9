#include "emmbmc/store.hpp"

#include <ostream>

namespace emmbmc {

std::string_view category_name(Category c) {
  switch (c) {
    case Category::AddressCompare: return "address-compare";
    case Category::Exclusivity: return "exclusivity";
    case Category::ReadData: return "read-data";
    case Category::InitConsistency: return "init-consistency";
    case Category::InitState: return "init-state";
    case Category::Transition: return "transition";
    case Category::LoopFree: return "loop-free";
    case Category::Property: return "property";
    case Category::ReadDisabled: return "read-disabled";
  }
  return "?";
}

std::uint64_t CategoryCounts::total_clauses() const {
  std::uint64_t t = 0;
  for (auto c : clauses) t += c;
  return t;
}

std::uint64_t CategoryCounts::total_gates() const {
  std::uint64_t t = 0;
  for (auto g : gates) t += g;
  return t;
}

CategoryCounts CategoryCounts::operator-(const CategoryCounts& rhs) const {
  CategoryCounts d;
  for (std::size_t i = 0; i < kNumCategories; ++i) {
    d.clauses[i] = clauses[i] - rhs.clauses[i];
    d.gates[i] = gates[i] - rhs.gates[i];
  }
  return d;
}

ConstraintStore::ConstraintStore(bool record_clauses) : record_(record_clauses) {
  true_ = sat::make_lit(solver_.new_var());
  const Lit unit[] = {true_};
  emit(unit);
}

Lit ConstraintStore::new_var() { return sat::make_lit(solver_.new_var()); }

void ConstraintStore::emit(std::span<const Lit> lits) {
  solver_.add_clause(lits);
  if (record_) recorded_.emplace_back(lits.begin(), lits.end());
}

void ConstraintStore::add_clause(std::span<const Lit> lits) {
  emit(lits);
  counts_.clauses[static_cast<std::size_t>(active_)]++;
}

void ConstraintStore::add_and(Lit out, Lit a, Lit b) {
  const Lit c1[] = {~out, a};
  const Lit c2[] = {~out, b};
  const Lit c3[] = {out, ~a, ~b};
  emit(c1);
  emit(c2);
  emit(c3);
  counts_.gates[static_cast<std::size_t>(active_)]++;
}

Lit ConstraintStore::make_and(Lit a, Lit b) {
  Lit out = new_var();
  add_and(out, a, b);
  return out;
}

SolveResult ConstraintStore::solve(std::span<const Lit> assumptions, const sat::Budget& budget) {
  SolveResult r;
  r.status = solver_.solve(assumptions, budget);
  if (r.status == sat::Status::Unsat) r.core = solver_.core();
  return r;
}

void ConstraintStore::write_dimacs(std::ostream& os, std::span<const Lit> assumptions) const {
  os << "p cnf " << solver_.num_vars() << ' ' << recorded_.size() + assumptions.size() << '\n';
  auto put = [&os](Lit l) {
    os << (l.negated() ? "-" : "") << (l.var() + 1) << ' ';
  };
  for (const auto& clause : recorded_) {
    for (Lit l : clause) put(l);
    os << "0\n";
  }
  for (Lit l : assumptions) {
    put(l);
    os << "0\n";
  }
}

}  // namespace emmbmc
