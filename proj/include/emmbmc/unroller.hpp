#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "emmbmc/bitblast.hpp"
#include "emmbmc/design.hpp"
#include "emmbmc/store.hpp"

namespace emmbmc {

struct UnrollOptions {
  /// Guard every latch's init and transition constraints with its own
  /// assumption literal (needed for latch reasons).
  bool latch_guards = false;
  /// Treat two frames as distinct states when a write to a modeled memory
  /// happened in between. Without it the state vector is latches only.
  bool memory_aware_lfp = true;
  /// Memories whose writes count for memory-aware loop-freedom; empty
  /// means all.
  std::vector<bool> modeled_memories;
};

/// Latches in the transitive fan-in of `root`, following latch next-state
/// functions and memory ports (reads pull in all write ports).
std::vector<NodeId> cone_latches(const Design& design, NodeId root);

// Time-frame expansion of a bit-blasted design into one constraint store.
// Frame 0 latches are fresh variables tied to their init values under the
// assumption literal I; later frames chain from the previous next-state.
class Unroller {
 public:
  Unroller(const Design& design, const BitNetlist& net, ConstraintStore& store,
           NodeId property, UnrollOptions options = {});

  /// Encodes frame depth() and returns its index.
  std::size_t unroll();
  std::size_t depth() const { return frames_.size(); }

  Lit init() const { return init_; }
  Lit property(std::size_t k) const { return props_.at(k); }
  /// P^0 & ... & P^{i-1}; constant true for i = 0.
  Lit cp(std::size_t i) const { return cps_.at(i); }
  /// Loop-free path literal over frames 0..i. Requires i < depth().
  Lit loop_free(std::size_t i);

  Lit lit(std::size_t k, AigLit a) const {
    Lit l = frames_.at(k)[a.var()];
    return a.complemented() ? ~l : l;
  }
  std::vector<Lit> lits(std::size_t k, const std::vector<AigLit>& v) const;
  std::vector<Lit> word(std::size_t k, NodeId node) const { return lits(k, net_.bits[node]); }

  /// Word value of a node in the last model.
  std::uint64_t value(std::size_t k, NodeId node) const;

  /// Latch guard literals (empty unless latch_guards).
  const std::vector<Lit>& guards() const { return guards_; }
  /// Latch node owning a guard literal.
  std::optional<NodeId> guard_latch(Lit guard) const;
  const std::vector<NodeId>& state_latches() const { return state_latches_; }

  const Design& design() const { return design_; }
  const BitNetlist& net() const { return net_; }
  ConstraintStore& store() { return store_; }

 private:
  Lit fold_and(Lit a, Lit b);
  Lit distinct(std::size_t a, std::size_t b);

  const Design& design_;
  const BitNetlist& net_;
  ConstraintStore& store_;
  NodeId property_;
  UnrollOptions opt_;
  Lit init_;
  std::vector<std::vector<Lit>> frames_;
  std::vector<Lit> props_;
  std::vector<Lit> cps_;
  std::vector<Lit> lfp_;
  std::vector<std::vector<Lit>> writes_;  // write enables per frame
  std::vector<Lit> guards_;
  std::unordered_map<std::uint32_t, NodeId> guard_owner_;
  std::unordered_map<NodeId, Lit> guard_of_;
  std::vector<NodeId> state_latches_;
  std::vector<std::uint32_t> state_vars_;
};

}  // namespace emmbmc
