#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "emmbmc/engine.hpp"

namespace emmbmc {

// One manifest line: `file prop expected depth [explicit-infeasible]`.
// For CE the depth is the first CE depth, for NO_CE the bound, and for
// PROOF the bound within which the EMM engine must find the proof.
struct CorpusEntry {
  std::string file, prop;
  VerdictKind expected = VerdictKind::NoCE;
  std::size_t depth = 0;
  bool explicit_infeasible = false;
  int line = 0;
};

std::vector<CorpusEntry> parse_manifest(std::string_view text);
std::string format_entry(const CorpusEntry& e);

struct CorpusOptions {
  double time_budget_s = 300;
  unsigned explicit_cap = kDefaultExplicitCap;
  /// Explicit CE search for a PROOF entry runs to this multiple of the
  /// proof depth.
  unsigned confirm_factor = 2;
};

struct EntryResult {
  CorpusEntry entry;
  bool pass = false;
  bool budget_exhausted = false;
  std::string emm, expl;  // verdict labels; expl empty when skipped
  std::string detail;
  ProofMethod method = ProofMethod::None;
  std::size_t proof_depth = 0;
};

EntryResult verify_entry(const std::string& dir, const CorpusEntry& entry,
                         const CorpusOptions& options = {});

/// Verifies every entry of `<dir>/manifest.txt`.
std::vector<EntryResult> corpus_verify(const std::string& dir, const CorpusOptions& options = {});

/// Regenerates the corpus: design files plus a manifest whose expected
/// verdicts come from running the engines. Returns the manifest text.
std::string build_corpus(const std::string& dir, std::size_t random_designs = 24,
                         std::uint64_t seed = 7);

}  // namespace emmbmc
