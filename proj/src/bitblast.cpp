#include "emmbmc/bitblast.hpp"

#include <utility>

namespace emmbmc {

Aig::Aig() { nodes_.push_back(AigNode{}); }

AigLit Aig::add_leaf(AigKind kind, NodeId origin, unsigned bit) {
  AigNode n;
  n.kind = kind;
  n.origin = origin;
  n.bit = bit;
  nodes_.push_back(n);
  return AigLit{static_cast<std::uint32_t>(nodes_.size() - 1) << 1};
}

AigLit Aig::make_and(AigLit a, AigLit b) {
  if (a == kAigFalse || b == kAigFalse || a == ~b) return kAigFalse;
  if (a == kAigTrue) return b;
  if (b == kAigTrue || a == b) return a;
  if (a.code > b.code) std::swap(a, b);
  const std::uint64_t key = (std::uint64_t{a.code} << 32) | b.code;
  if (auto it = strash_.find(key); it != strash_.end()) return AigLit{it->second << 1};
  AigNode n;
  n.kind = AigKind::And;
  n.a = a;
  n.b = b;
  nodes_.push_back(n);
  ++num_ands_;
  auto var = static_cast<std::uint32_t>(nodes_.size() - 1);
  strash_.emplace(key, var);
  return AigLit{var << 1};
}

AigLit Aig::make_xor(AigLit a, AigLit b) {
  return make_or(make_and(a, ~b), make_and(~a, b));
}

AigLit Aig::make_mux(AigLit sel, AigLit then_lit, AigLit else_lit) {
  if (then_lit == else_lit) return then_lit;
  return make_or(make_and(sel, then_lit), make_and(~sel, else_lit));
}

namespace {

std::vector<AigLit> lower_add(Aig& aig, const std::vector<AigLit>& a,
                              const std::vector<AigLit>& b, AigLit carry) {
  std::vector<AigLit> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    AigLit axb = aig.make_xor(a[i], b[i]);
    out[i] = aig.make_xor(axb, carry);
    carry = aig.make_or(aig.make_and(a[i], b[i]), aig.make_and(axb, carry));
  }
  return out;
}

}  // namespace

BitNetlist bit_blast(const Design& design) {
  BitNetlist net;
  Aig& aig = net.aig;
  const auto& nodes = design.nodes();
  net.bits.resize(nodes.size());

  // Leaves first so every gate's fanins precede it.
  for (NodeId id = 0; id < nodes.size(); ++id) {
    const Node& n = nodes[id];
    AigKind kind;
    if (n.op == Op::Input) {
      kind = AigKind::Input;
    } else if (n.op == Op::Latch) {
      kind = AigKind::Latch;
    } else if (n.op == Op::MemRead) {
      kind = AigKind::MemRead;
    } else {
      continue;
    }
    for (unsigned b = 0; b < n.width; ++b) net.bits[id].push_back(aig.add_leaf(kind, id, b));
  }

  for (NodeId id : design.topo_order()) {
    const Node& n = nodes[id];
    auto& out = net.bits[id];
    auto in = [&net, &n](std::size_t k) -> const std::vector<AigLit>& {
      return net.bits[n.operands[k]];
    };
    switch (n.op) {
      case Op::Input:
      case Op::Latch:
      case Op::MemRead:
        break;
      case Op::Const:
        for (unsigned b = 0; b < n.width; ++b) {
          out.push_back(((n.value >> b) & 1u) ? kAigTrue : kAigFalse);
        }
        break;
      case Op::And:
      case Op::Or:
      case Op::Xor:
        out = in(0);
        for (std::size_t k = 1; k < n.operands.size(); ++k) {
          for (unsigned b = 0; b < n.width; ++b) {
            if (n.op == Op::And) {
              out[b] = aig.make_and(out[b], in(k)[b]);
            } else if (n.op == Op::Or) {
              out[b] = aig.make_or(out[b], in(k)[b]);
            } else {
              out[b] = aig.make_xor(out[b], in(k)[b]);
            }
          }
        }
        break;
      case Op::Not:
        for (AigLit l : in(0)) out.push_back(~l);
        break;
      case Op::Mux:
        for (unsigned b = 0; b < n.width; ++b) {
          out.push_back(aig.make_mux(in(0)[0], in(1)[b], in(2)[b]));
        }
        break;
      case Op::Eq: {
        AigLit acc = kAigTrue;
        for (std::size_t b = 0; b < in(0).size(); ++b) {
          acc = aig.make_and(acc, ~aig.make_xor(in(0)[b], in(1)[b]));
        }
        out.push_back(acc);
        break;
      }
      case Op::Ltu: {
        // Scan from LSB: lt = (!a & b) | (a == b) & lt_lower
        AigLit lt = kAigFalse;
        for (std::size_t b = 0; b < in(0).size(); ++b) {
          AigLit a = in(0)[b], c = in(1)[b];
          AigLit eq = ~aig.make_xor(a, c);
          lt = aig.make_or(aig.make_and(~a, c), aig.make_and(eq, lt));
        }
        out.push_back(lt);
        break;
      }
      case Op::Add:
        out = lower_add(aig, in(0), in(1), kAigFalse);
        break;
      case Op::Sub: {
        std::vector<AigLit> nb;
        for (AigLit l : in(1)) nb.push_back(~l);
        out = lower_add(aig, in(0), nb, kAigTrue);
        break;
      }
      case Op::Slice:
        out.assign(in(0).begin() + n.lo, in(0).begin() + n.hi + 1);
        break;
      case Op::Concat:
        // First operand is the most significant.
        for (std::size_t k = n.operands.size(); k-- > 0;) {
          out.insert(out.end(), in(k).begin(), in(k).end());
        }
        break;
    }
  }

  for (NodeId id = 0; id < nodes.size(); ++id) {
    const Node& n = nodes[id];
    if (n.op != Op::Latch) continue;
    for (unsigned b = 0; b < n.width; ++b) {
      LatchBit lb;
      lb.node = id;
      lb.bit = b;
      lb.var = net.bits[id][b].var();
      if (n.init) lb.init = ((*n.init >> b) & 1u) != 0;
      lb.next = net.bits[n.operands[0]][b];
      net.latches.push_back(lb);
    }
  }

  for (const Memory& m : design.memories()) {
    BitMemory bm;
    for (const auto& wp : m.wports) {
      bm.wports.push_back({net.bits[wp.addr], net.bits[wp.data], net.bits[wp.en][0]});
    }
    for (const auto& rp : m.rports) {
      BitReadPort br;
      br.addr = net.bits[rp.addr];
      br.en = net.bits[rp.en][0];
      for (AigLit l : net.bits[rp.out]) br.data_vars.push_back(l.var());
      bm.rports.push_back(std::move(br));
    }
    net.memories.push_back(std::move(bm));
  }
  return net;
}

std::vector<bool> evaluate_aig(const Aig& aig, const std::vector<bool>& leaf_values) {
  const auto& nodes = aig.nodes();
  std::vector<bool> val(nodes.size(), false);
  auto lit = [&val](AigLit l) { return val[l.var()] != l.complemented(); };
  for (std::size_t v = 1; v < nodes.size(); ++v) {
    if (nodes[v].kind == AigKind::And) {
      val[v] = lit(nodes[v].a) && lit(nodes[v].b);
    } else {
      val[v] = v < leaf_values.size() && leaf_values[v];
    }
  }
  return val;
}

}  // namespace emmbmc
