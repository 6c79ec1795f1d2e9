#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "emmbmc/design.hpp"
#include "emmbmc/engine.hpp"
#include "emmbmc/unroller.hpp"

namespace emmbmc {

/// Latches whose guard literal appears in an assumption core.
std::set<NodeId> get_latch_reasons(const Unroller& unroller, std::span<const Lit> core);

enum class ConeMode {
  /// Fan-in of the port signals through gates, stopping at latches.
  Combinational,
  /// Fan-in through gates, latch next-state functions and other memories.
  Transitive,
};

enum class PortGranularity { Memory, ReadPort };

struct RelevanceOptions {
  ConeMode cone = ConeMode::Combinational;
  PortGranularity granularity = PortGranularity::Memory;
};

struct MemoryDecision {
  std::string memory;
  bool keep = true;
  std::vector<bool> keep_read_port;
  /// Control latches of the whole memory.
  std::set<std::string> control;
};

/// Latches in the fan-in of the given signals.
std::set<NodeId> control_latches(const Design& design, const std::vector<NodeId>& roots,
                                 ConeMode mode);

/// Keep a memory (or read port) iff one of its control latches is a reason.
std::vector<MemoryDecision> memory_relevance(const Design& design,
                                             const std::set<std::string>& reasons,
                                             const RelevanceOptions& options = {});

struct Abstraction {
  Design model;
  std::set<std::string> kept_latches;
  std::vector<MemoryDecision> memories;
  std::size_t original_latches = 0, original_latch_bits = 0;
  std::size_t kept_latch_bits = 0;
};

/// Non-reason latches become inputs of equal width; dropped memories and
/// read ports leave their read data as inputs.
Abstraction abstract_model(const Design& design, const std::set<std::string>& reasons,
                           const std::vector<MemoryDecision>& memories);

struct StableResult {
  /// The falsification run that accumulated the reasons.
  Verdict run;
  /// Present unless the run found a CE or ran out of budget.
  std::optional<Abstraction> abstraction;
};

/// Accumulates latch reasons until they are unchanged over `stability`
/// depths (or the bound is hit) and builds the abstract model.
StableResult stable_abstraction(const Design& design, std::string_view property,
                                unsigned stability, std::size_t bound,
                                const CheckOptions& base = {},
                                const RelevanceOptions& relevance = {});

/// Re-runs stable_abstraction on its own output up to `rounds` extra times
/// or until the model stops shrinking.
StableResult iterate_abstraction(const Design& design, std::string_view property,
                                 unsigned stability, std::size_t bound, unsigned rounds,
                                 const CheckOptions& base = {},
                                 const RelevanceOptions& relevance = {});

}  // namespace emmbmc
