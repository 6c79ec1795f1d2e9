#pragma once

#include <optional>
#include <string>

#include "emmbmc/design.hpp"
#include "emmbmc/engine.hpp"
#include "emmbmc/pba.hpp"

namespace emmbmc {

/// Name of the property added by with_write_invariant.
std::string write_invariant_name(const std::string& memory);

/// Copy of the design with an extra property asserting, for every write
/// port of `memory`, that the port is disabled or writes zero.
Design with_write_invariant(const Design& design, const std::string& memory);

/// Removes zero-init `memory` and defines each of its read-data signals as
/// mux(re, 0, <rd>__free): enabled reads return zero, disabled reads stay
/// unconstrained. Valid once the write invariant is proved.
Design rewrite_zero_reads(const Design& design, const std::string& memory);

struct InvariantOptions {
  std::size_t bound = 20;
  unsigned stability = 10;
  CheckOptions base;
};

struct InvariantResult {
  Verdict invariant;
  std::optional<Design> rewritten;
  std::optional<StableResult> abstraction;
  std::optional<Verdict> target;
};

/// Proves the write invariant of `memory`; on PROOF and a non-empty target,
/// rewrites the reads, abstracts and proves the target on the reduced model.
InvariantResult invariant_check(const Design& design, const std::string& memory,
                                const std::string& target, const InvariantOptions& options);

}  // namespace emmbmc
