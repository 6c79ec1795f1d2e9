#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "emmbmc/design.hpp"

namespace emmbmc {

// Shape of one memory: widths, port counts and initial-state policy.
struct MemoryShape {
  unsigned aw = 1, dw = 1;
  unsigned wports = 1, rports = 1;
  MemInit init = MemInit::Zero;

  static MemoryShape of(const Memory& m) {
    return {m.aw, m.dw, static_cast<unsigned>(m.wports.size()),
            static_cast<unsigned>(m.rports.size()), m.init};
  }
};

struct WriteEvent {
  bool en = false;
  std::uint64_t addr = 0;
  std::uint64_t data = 0;
};

struct ReadEvent {
  bool en = false;
  std::uint64_t addr = 0;
  /// Read data; nullopt when the read is disabled (unconstrained).
  std::optional<std::uint64_t> data;
};

struct MemFrame {
  std::vector<WriteEvent> writes;  // one per write port
  std::vector<ReadEvent> reads;    // one per read port
};

// Per-frame port activity of one memory, frames contiguous from 0.
struct MemTrace {
  std::vector<MemFrame> frames;
};

struct Race {
  std::size_t frame = 0;
  std::uint64_t addr = 0;
  unsigned port_a = 0, port_b = 0;
};

struct SimulationResult {
  MemTrace trace;
  std::optional<Race> race;
};

/// Deterministic stand-in for an unknown initial word.
std::uint64_t arbitrary_word(std::uint64_t seed, std::uint64_t addr, unsigned dw);

/// Fills in read data by the forwarding rule: an enabled read at frame k
/// returns the most recent write to its address at a frame strictly before
/// k, else the initial word. Initial words come from `initial_words`, then
/// zero (zero-init) or arbitrary_word(nonce_seed, addr) (arbitrary-init).
/// Two enabled writes to one address in one frame is a race; simulation
/// stops at the racing frame.
SimulationResult simulate_memory(const MemoryShape& shape, const MemTrace& inputs,
                                 const std::map<std::uint64_t, std::uint64_t>& initial_words = {},
                                 std::uint64_t nonce_seed = 0);

}  // namespace emmbmc
