#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "emmbmc/engine.hpp"
#include "emmbmc/generators.hpp"

namespace emmbmc {

struct FuzzOptions {
  std::uint64_t seed = 1;
  std::size_t count = 500;
  RandomCaps caps;
  std::size_t bound = 6;
  /// Also run the EMM engine without exclusive selectors.
  bool exclusivity_ab = false;
  /// Mutation check of the harness: EMM runs drop selector chaining.
  bool fault_drop_chaining = false;
  /// Where to write the design of each divergent case; empty = nowhere.
  std::string reproducer_dir;
};

struct FuzzCase {
  std::uint64_t seed = 0;
  std::string emm, expl, no_exclusivity;  // "CE@d" or "NO_CE"
  bool agree = true;
  bool exclusivity_agree = true;
  unsigned replays = 0, replay_failures = 0;
  std::string detail;
  double emm_seconds = 0, explicit_seconds = 0, no_exclusivity_seconds = 0;
};

struct FuzzReport {
  FuzzOptions options;
  std::vector<FuzzCase> cases;
  std::size_t divergences = 0;
  std::size_t exclusivity_divergences = 0;
  std::size_t counterexamples = 0;
  std::size_t replays = 0, replay_failures = 0;

  /// Deterministic summary (no timings).
  std::string text() const;
};

/// Seed of the index-th design of a run.
std::uint64_t fuzz_design_seed(std::uint64_t seed, std::size_t index);

/// Compact verdict label: "CE@d", "NO_CE", "PROOF@d" or "UNKNOWN@d".
std::string verdict_label(const Verdict& v);

FuzzReport fuzz(const FuzzOptions& options);

}  // namespace emmbmc
