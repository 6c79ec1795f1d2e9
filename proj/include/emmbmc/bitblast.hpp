#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "emmbmc/design.hpp"

namespace emmbmc {

// And-inverter graph literal: 2*var + complemented. Var 0 is constant false.
struct AigLit {
  std::uint32_t code = 0;

  constexpr std::uint32_t var() const { return code >> 1; }
  constexpr bool complemented() const { return (code & 1u) != 0; }
  constexpr AigLit operator~() const { return AigLit{code ^ 1u}; }
  friend constexpr bool operator==(AigLit, AigLit) = default;
};

inline constexpr AigLit kAigFalse{0};
inline constexpr AigLit kAigTrue{1};

enum class AigKind : std::uint8_t { Const, Input, Latch, MemRead, And };

struct AigNode {
  AigKind kind = AigKind::Const;
  AigLit a, b;          // And fanins
  NodeId origin = 0;    // design node for leaves
  unsigned bit = 0;     // bit index for leaves
};

// Structurally hashed AIG. Variables are created in topological order.
class Aig {
 public:
  Aig();
  AigLit add_leaf(AigKind kind, NodeId origin, unsigned bit);
  AigLit make_and(AigLit a, AigLit b);
  AigLit make_or(AigLit a, AigLit b) { return ~make_and(~a, ~b); }
  AigLit make_xor(AigLit a, AigLit b);
  AigLit make_mux(AigLit sel, AigLit then_lit, AigLit else_lit);

  const std::vector<AigNode>& nodes() const { return nodes_; }
  std::size_t num_ands() const { return num_ands_; }

 private:
  std::vector<AigNode> nodes_;
  std::unordered_map<std::uint64_t, std::uint32_t> strash_;
  std::size_t num_ands_ = 0;
};

struct LatchBit {
  NodeId node = 0;
  unsigned bit = 0;
  std::uint32_t var = 0;
  std::optional<bool> init;  // nullopt = unknown
  AigLit next;
};

struct BitWritePort {
  std::vector<AigLit> addr, data;
  AigLit en;
};

struct BitReadPort {
  std::vector<AigLit> addr;
  AigLit en;
  std::vector<std::uint32_t> data_vars;  // MemRead leaves
};

struct BitMemory {
  std::vector<BitWritePort> wports;
  std::vector<BitReadPort> rports;
};

// Bit-level lowering of a Design to a 2-input AND / NOT netlist.
struct BitNetlist {
  Aig aig;
  /// Bits (LSB first) of every design node.
  std::vector<std::vector<AigLit>> bits;
  std::vector<LatchBit> latches;
  std::vector<BitMemory> memories;
};

BitNetlist bit_blast(const Design& design);

/// Evaluates every AIG variable given values of the leaves (indexed by var).
std::vector<bool> evaluate_aig(const Aig& aig, const std::vector<bool>& leaf_values);

}  // namespace emmbmc
