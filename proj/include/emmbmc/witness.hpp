#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "emmbmc/design.hpp"
#include "emmbmc/memory.hpp"

namespace emmbmc {

class WitnessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct WitnessFrame {
  /// Primary inputs, plus the free read data of disabled reads keyed by the
  /// read-data signal name.
  std::map<std::string, std::uint64_t> inputs;
  std::map<std::string, std::uint64_t> latches;
  std::map<std::string, MemFrame> memories;
};

struct Witness {
  std::vector<WitnessFrame> frames;
};

/// Word value of a named signal of the original design at a frame.
using SignalValueFn = std::function<std::uint64_t(std::size_t frame, const std::string& name)>;

/// Builds a trace over `frames` frames from a model, naming signals of `design`.
Witness build_witness(const Design& design, std::size_t frames, const SignalValueFn& value);

std::string print_witness(const Witness& witness);
Witness parse_witness(std::string_view text);

struct ReplayResult {
  bool valid = false;
  std::size_t frame = 0;
  std::string signal;
  int bit = -1;  // first differing bit, -1 when not a value mismatch
  std::string message;
};

/// Re-evaluates the design over the trace with simulate_memory supplying
/// read data. Valid iff every recorded value is reproduced and the property
/// is violated at the final frame.
ReplayResult replay(const Design& design, const Witness& witness, std::string_view property);

}  // namespace emmbmc
