#include "emmbmc/eval.hpp"

namespace emmbmc {

std::uint64_t eval_gate(const Node& n, const std::vector<std::uint64_t>& v, const Design& d) {
  const std::uint64_t mask = width_mask(n.width);
  auto op = [&](std::size_t k) { return v[n.operands[k]]; };
  switch (n.op) {
    case Op::And: {
      std::uint64_t r = op(0);
      for (std::size_t k = 1; k < n.operands.size(); ++k) r &= op(k);
      return r;
    }
    case Op::Or: {
      std::uint64_t r = op(0);
      for (std::size_t k = 1; k < n.operands.size(); ++k) r |= op(k);
      return r;
    }
    case Op::Xor: {
      std::uint64_t r = op(0);
      for (std::size_t k = 1; k < n.operands.size(); ++k) r ^= op(k);
      return r;
    }
    case Op::Not:
      return ~op(0) & mask;
    case Op::Mux:
      return op(0) ? op(1) : op(2);
    case Op::Eq:
      return op(0) == op(1) ? 1 : 0;
    case Op::Ltu:
      return op(0) < op(1) ? 1 : 0;
    case Op::Add:
      return (op(0) + op(1)) & mask;
    case Op::Sub:
      return (op(0) - op(1)) & mask;
    case Op::Slice:
      return (op(0) >> n.lo) & mask;
    case Op::Concat: {
      std::uint64_t r = 0;
      for (NodeId o : n.operands) {
        const unsigned w = d.node(o).width;
        r = (w >= 64 ? 0 : (r << w)) | v[o];
      }
      return r & mask;
    }
    case Op::Const:
      return n.value;
    default:
      return 0;
  }
}

std::vector<std::uint64_t> evaluate_frame(const Design& d, const std::vector<std::uint64_t>& leaves,
                                          const ReadFn& read) {
  std::vector<std::uint64_t> v(d.nodes().size(), 0);
  for (NodeId id : d.topo_order()) {
    const Node& n = d.node(id);
    switch (n.op) {
      case Op::Input:
      case Op::Latch:
        v[id] = leaves[id] & width_mask(n.width);
        break;
      case Op::MemRead: {
        const ReadPort& rp = d.memories()[n.mem].rports[n.port];
        v[id] = read(n.mem, n.port, v[rp.en] != 0, v[rp.addr]) & width_mask(n.width);
        break;
      }
      default:
        v[id] = eval_gate(n, v, d);
        break;
    }
  }
  return v;
}

std::vector<std::uint64_t> initial_latches(const Design& d,
                                           const std::vector<std::uint64_t>& x_values) {
  std::vector<std::uint64_t> out(d.nodes().size(), 0);
  for (NodeId id : d.latches()) {
    const Node& n = d.node(id);
    out[id] = n.init ? *n.init : (id < x_values.size() ? x_values[id] & width_mask(n.width) : 0);
  }
  return out;
}

Simulator::Simulator(const Design& design, InitWordFn initial_word)
    : design_(design),
      initial_word_(std::move(initial_word)),
      latches_(initial_latches(design, {})),
      mem_(design.memories().size()) {}

std::uint64_t Simulator::memory_word(std::size_t mem, std::uint64_t addr) const {
  auto it = mem_[mem].find(addr);
  if (it != mem_[mem].end()) return it->second;
  if (design_.memories()[mem].init == MemInit::Zero || !initial_word_) return 0;
  return initial_word_(mem, addr) & width_mask(design_.memories()[mem].dw);
}

const std::vector<std::uint64_t>& Simulator::step(const std::vector<std::uint64_t>& inputs) {
  std::vector<std::uint64_t> leaves(design_.nodes().size(), 0);
  for (NodeId id = 0; id < leaves.size(); ++id) {
    const Op op = design_.node(id).op;
    if (op == Op::Latch) {
      leaves[id] = latches_[id];
    } else if (op == Op::Input && id < inputs.size()) {
      leaves[id] = inputs[id];
    }
  }
  values_ = evaluate_frame(design_, leaves,
                           [this](std::size_t m, std::size_t, bool en, std::uint64_t addr) {
                             return en ? memory_word(m, addr) : 0;
                           });
  for (NodeId id : design_.latches()) latches_[id] = values_[design_.node(id).operands[0]];
  for (std::size_t m = 0; m < design_.memories().size(); ++m) {
    const Memory& mem = design_.memories()[m];
    std::map<std::uint64_t, std::uint64_t> written;
    for (const auto& wp : mem.wports) {
      if (!values_[wp.en]) continue;
      if (!written.emplace(values_[wp.addr], values_[wp.data]).second) {
        raced_ = true;
        continue;  // lowest port index wins
      }
    }
    for (auto [a, w] : written) mem_[m][a] = w;
  }
  return values_;
}

}  // namespace emmbmc
