#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "emmbmc/design.hpp"
#include "emmbmc/explicit_model.hpp"
#include "emmbmc/sat.hpp"
#include "emmbmc/store.hpp"
#include "emmbmc/witness.hpp"

namespace emmbmc {

enum class EngineKind { Emm, Explicit };
enum class VerdictKind { CE, Proof, NoCE, Unknown };
enum class ProofMethod { None, ForwardDiameter, BackwardInduction };
enum class QueryKind { Forward, Backward, Falsify, Minimize };

std::string_view engine_name(EngineKind e);
std::string_view verdict_name(VerdictKind v);
std::string_view proof_method_name(ProofMethod m);
std::string_view query_name(QueryKind q);

struct CheckOptions {
  EngineKind engine = EngineKind::Emm;
  std::size_t bound = 20;
  bool prove = false;
  bool forward_check = true;
  bool backward_check = true;

  bool pba = false;
  /// Stop once the latch reasons are unchanged over this many depths.
  std::optional<unsigned> stop_when_stable;
  bool core_minimize = false;

  bool exclusivity = true;
  bool init_consistency = true;
  bool re0_zero = false;
  bool fault_drop_chaining = false;
  /// Loop-freedom over latches only, ignoring memory writes.
  bool lfp_latches_only = false;
  /// Per memory / read port modeling masks (EMM engine); empty = all.
  std::vector<bool> memories;
  std::vector<std::vector<bool>> read_ports;

  unsigned explicit_cap = kDefaultExplicitCap;
  /// Per query; negative means unlimited.
  std::int64_t conflict_budget = -1;
  /// Whole check; zero means unlimited.
  double time_budget_s = 0;
  /// Write the CNF of the last query here when non-empty.
  std::string dump_cnf;
};

struct QueryRecord {
  std::size_t depth = 0;
  QueryKind kind = QueryKind::Falsify;
  sat::Status status = sat::Status::Unknown;
  double seconds = 0;
};

struct DepthStats {
  std::size_t depth = 0;
  double solve_seconds = 0;
  /// Cumulative counts after encoding this depth.
  CategoryCounts counts;
  std::size_t vars = 0;
  std::size_t latch_reasons = 0;
};

struct Verdict {
  VerdictKind kind = VerdictKind::NoCE;
  std::size_t depth = 0;
  ProofMethod method = ProofMethod::None;
  std::optional<Witness> witness;
  /// Latch reasons accumulated so far (names), when PBA is on.
  std::set<std::string> latch_reasons;
  /// Set when a stability stop ended the run.
  bool stable = false;
  std::vector<DepthStats> stats;
  std::vector<QueryRecord> queries;
  std::string property;
  EngineKind engine = EngineKind::Emm;
};

/// Bounded check of one property up to options.bound.
Verdict check(const Design& design, std::string_view property, const CheckOptions& options);

}  // namespace emmbmc
