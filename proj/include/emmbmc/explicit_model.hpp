#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "emmbmc/design.hpp"

namespace emmbmc {

inline constexpr unsigned kDefaultExplicitCap = 12;

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Where each expanded memory's words and ports live in the new design.
struct ExpandedMemory {
  std::string name;
  unsigned aw = 0, dw = 0;
  std::vector<NodeId> words;  // latch per address
  std::vector<WritePort> wports;
  std::vector<ReadPort> rports;  // out = the read-data node
};

struct ExpandedDesign {
  Design design;
  std::vector<ExpandedMemory> memories;
};

/// Replaces every memory by 2^aw latch words with write decoders and read
/// multiplexer trees. Disabled reads return a fresh input `<rd>__re0`, or 0
/// when `re0_zero`. Throws CapExceeded for aw > cap.
ExpandedDesign expand_memory(const Design& design, unsigned cap = kDefaultExplicitCap,
                             bool re0_zero = false);

}  // namespace emmbmc
