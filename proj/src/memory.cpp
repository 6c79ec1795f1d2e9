#include "emmbmc/memory.hpp"

namespace emmbmc {

std::uint64_t arbitrary_word(std::uint64_t seed, std::uint64_t addr, unsigned dw) {
  // splitmix64
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (addr + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z & width_mask(dw);
}

SimulationResult simulate_memory(const MemoryShape& shape, const MemTrace& inputs,
                                 const std::map<std::uint64_t, std::uint64_t>& initial_words,
                                 std::uint64_t nonce_seed) {
  SimulationResult result;
  std::map<std::uint64_t, std::uint64_t> contents;
  const std::uint64_t amask = width_mask(shape.aw);
  const std::uint64_t dmask = width_mask(shape.dw);

  auto initial = [&](std::uint64_t addr) -> std::uint64_t {
    if (auto it = initial_words.find(addr); it != initial_words.end()) return it->second & dmask;
    if (shape.init == MemInit::Zero) return 0;
    return arbitrary_word(nonce_seed, addr, shape.dw);
  };

  for (std::size_t k = 0; k < inputs.frames.size(); ++k) {
    MemFrame frame = inputs.frames[k];
    for (ReadEvent& r : frame.reads) {
      if (!r.en) {
        r.data.reset();
        continue;
      }
      const std::uint64_t a = r.addr & amask;
      auto it = contents.find(a);
      r.data = it != contents.end() ? it->second : initial(a);
    }
    result.trace.frames.push_back(frame);

    std::map<std::uint64_t, unsigned> writer;
    for (unsigned p = 0; p < frame.writes.size(); ++p) {
      const WriteEvent& w = frame.writes[p];
      if (!w.en) continue;
      const std::uint64_t a = w.addr & amask;
      if (auto [it, fresh] = writer.emplace(a, p); !fresh) {
        result.race = Race{k, a, it->second, p};
        return result;
      }
    }
    for (const WriteEvent& w : frame.writes) {
      if (w.en) contents[w.addr & amask] = w.data & dmask;
    }
  }
  return result;
}

}  // namespace emmbmc
