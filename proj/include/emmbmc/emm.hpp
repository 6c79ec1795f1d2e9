#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "emmbmc/store.hpp"
#include "emmbmc/unroller.hpp"

namespace emmbmc {

struct PredictedCounts {
  std::uint64_t clauses = 0;
  std::uint64_t gates = 0;
};

/// Clauses and gates added at depth k for one memory, excluding
/// initial-state consistency: ((4m+2n+1)kW + 2n+1)R clauses, 3kWR gates.
PredictedCounts predicted_counts(std::uint64_t m, std::uint64_t n, std::uint64_t w,
                                 std::uint64_t r, std::uint64_t k);

struct EmmOptions {
  /// Chain exclusive valid-read signals; off uses direct implications.
  bool exclusivity = true;
  /// Constrain equal unwritten reads to equal initial words.
  bool init_consistency = true;
  /// Model every memory with symbolic initial words; zero-init memories
  /// then pin those words to zero under the init literal only.
  bool symbolic_init = false;
  /// Force RD to 0 when the read is disabled.
  bool re0_zero = false;
  /// Fault injection: drop the chaining of exclusive signals.
  bool fault_drop_chaining = false;
  /// Per memory / per read port; empty means everything is modeled.
  std::vector<bool> memories;
  std::vector<std::vector<bool>> read_ports;
};

// Per-read bookkeeping kept for later frames and tests.
struct EmmRead {
  std::size_t frame = 0;
  unsigned port = 0;
  Lit re;
  std::vector<Lit> addr, rd;
  /// Fall-through literal: enabled and no prior matching write.
  Lit ps0;
  std::vector<Lit> init_word;
  /// Exclusive selectors in generation order, (frame j, write port w).
  struct Source {
    std::size_t frame;
    unsigned port;
    Lit e, s, sel;
  };
  std::vector<Source> sources;
};

// Emits the memory constraints for each new frame of an unrolling.
class EmmEncoder {
 public:
  EmmEncoder(Unroller& unroller, EmmOptions options = {});

  /// Encodes all memories at frame k; frames must be encoded in order.
  void encode(std::size_t k);

  bool modeled(std::size_t mem) const;
  bool modeled(std::size_t mem, std::size_t port) const;
  const std::vector<EmmRead>& reads(std::size_t mem) const { return reads_.at(mem); }

  /// Address comparator: 4m+1 clauses, returned literal holds iff a == b.
  Lit addr_equal(const std::vector<Lit>& a, const std::vector<Lit>& b);

 private:
  void encode_read(std::size_t mem, unsigned port, std::size_t k);
  void encode_read_direct(std::size_t mem, unsigned port, std::size_t k, EmmRead& rd);
  void equal_under(std::vector<Lit> guard, const std::vector<Lit>& x,
                   const std::vector<Lit>& y);
  void init_consistency(std::size_t mem, const EmmRead& rd);

  Unroller& u_;
  ConstraintStore& store_;
  EmmOptions opt_;
  std::vector<std::vector<EmmRead>> reads_;
};

/// Encodes frames 0..bound (no solving) and returns the cumulative counts
/// after each frame. Memories get symbolic initial words when `prove`.
std::vector<CategoryCounts> encoding_counts(const Design& design, std::string_view property,
                                            std::size_t bound, const EmmOptions& options = {});

}  // namespace emmbmc
