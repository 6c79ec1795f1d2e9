#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "emmbmc/design.hpp"

namespace emmbmc {

using ReadFn = std::function<std::uint64_t(std::size_t mem, std::size_t port, bool en,
                                           std::uint64_t addr)>;

/// Word-level values of every node for one clock cycle. Inputs and latches
/// come from the vectors (indexed by NodeId); read-port outputs from `read`.
std::vector<std::uint64_t> evaluate_frame(const Design& design,
                                          const std::vector<std::uint64_t>& leaves,
                                          const ReadFn& read);

std::uint64_t eval_gate(const Node& node, const std::vector<std::uint64_t>& values,
                        const Design& design);

/// Latch values at frame 0; unknown init bits are taken from `x_values`.
std::vector<std::uint64_t> initial_latches(const Design& design,
                                           const std::vector<std::uint64_t>& x_values);

// Concrete cycle simulator with explicit memory contents. Unwritten words of
// zero-init memories read 0; arbitrary-init words come from `initial_word`.
class Simulator {
 public:
  using InitWordFn = std::function<std::uint64_t(std::size_t mem, std::uint64_t addr)>;

  Simulator(const Design& design, InitWordFn initial_word = {});

  /// Evaluates one cycle with the given input values (indexed by NodeId) and
  /// advances latches and memories. Returns the node values of the cycle.
  const std::vector<std::uint64_t>& step(const std::vector<std::uint64_t>& inputs);

  void set_latch(NodeId id, std::uint64_t value) { latches_[id] = value; }
  std::uint64_t latch(NodeId id) const { return latches_[id]; }
  std::uint64_t memory_word(std::size_t mem, std::uint64_t addr) const;
  /// Set when two write ports hit the same address in one cycle.
  bool raced() const { return raced_; }

 private:
  const Design& design_;
  InitWordFn initial_word_;
  std::vector<std::uint64_t> latches_;
  std::vector<std::map<std::uint64_t, std::uint64_t>> mem_;
  std::vector<std::uint64_t> values_;
  bool raced_ = false;
};

}  // namespace emmbmc
