#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace emmbmc {

class GeneratorError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Program-counter encoding of the quicksort controller.
namespace qs_pc {
inline constexpr unsigned kInit = 0, kCall = 1, kWaitPivot = 2, kLoop = 3, kCompare = 4,
                          kSwap1 = 5, kSwap2 = 6, kFinal1 = 7, kFinal2 = 8, kPushLeft = 9,
                          kReturn = 10, kCallRight = 11, kCheck0 = 12, kCheck1 = 13,
                          kCheck2 = 14, kFinish = 15, kError = 16;
}

struct QuicksortParams {
  unsigned n = 3;
  unsigned array_aw = 10, array_dw = 32;
  unsigned stack_aw = 10, stack_dw = 24;
};

/// Recursive Lomuto quicksort over arr[0..n-1] with an explicit call stack.
/// Memories `arr` (arbitrary init) and `stk` (zero init); properties
/// `p1` (arr[0] <= arr[1] once sorted), `p2` (a pop is followed by the
/// right-call or return state) and `never_done`.
std::string gen_quicksort(const QuicksortParams& params);

/// Push/pop stack over memory `stk`. Properties `pop_after_push` and
/// `no_underflow`; the underflow guard blocks pops on an empty stack.
std::string gen_stack(unsigned aw, unsigned dw, bool underflow_guard = true);

/// Test driver that pushes `writes` input words into memory `fifo`, pops
/// them back and checks order (`fifo_order`).
std::string gen_fifo(unsigned aw, unsigned dw, unsigned writes = 2);

struct RandomCaps {
  unsigned max_aw = 4, max_dw = 2;
  unsigned max_wports = 2, max_rports = 2;
  unsigned max_latches = 3;
};

/// Random race-free single-memory design with property `p`.
std::string gen_random(std::uint64_t seed, const RandomCaps& caps = {});

/// Never-written arbitrary-init memory; property `same_addr_same_data`
/// holds only if equal unwritten reads are kept consistent.
std::string gen_unwritten(unsigned aw = 3, unsigned dw = 2);

/// Memory `ram` whose write data is forced to zero two cycles after any
/// start state; target property `acc_zero` over the read data.
std::string gen_gated(unsigned aw = 10, unsigned dw = 32);

}  // namespace emmbmc
