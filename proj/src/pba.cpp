#include "emmbmc/pba.hpp"

namespace emmbmc {

std::set<NodeId> get_latch_reasons(const Unroller& unroller, std::span<const Lit> core) {
  std::set<NodeId> out;
  for (Lit l : core) {
    if (auto id = unroller.guard_latch(l)) out.insert(*id);
  }
  return out;
}

std::set<NodeId> control_latches(const Design& d, const std::vector<NodeId>& roots,
                                 ConeMode mode) {
  const bool transitive = mode == ConeMode::Transitive;
  std::vector<bool> seen(d.nodes().size(), false);
  std::vector<NodeId> stack(roots);
  std::set<NodeId> out;
  while (!stack.empty()) {
    const NodeId id = stack.back();
    stack.pop_back();
    if (seen[id]) continue;
    seen[id] = true;
    const Node& n = d.node(id);
    if (n.op == Op::Latch) {
      out.insert(id);
      if (!transitive) continue;
    }
    if (n.op == Op::MemRead) {
      if (!transitive) continue;
      const Memory& m = d.memories()[n.mem];
      for (const auto& wp : m.wports) stack.insert(stack.end(), {wp.addr, wp.data, wp.en});
      for (const auto& rp : m.rports) stack.insert(stack.end(), {rp.addr, rp.en});
    }
    for (NodeId o : n.operands) stack.push_back(o);
  }
  return out;
}

std::vector<MemoryDecision> memory_relevance(const Design& d,
                                             const std::set<std::string>& reasons,
                                             const RelevanceOptions& opt) {
  auto hit = [&](const std::set<NodeId>& cone) {
    for (NodeId id : cone) {
      if (reasons.count(d.node(id).name)) return true;
    }
    return false;
  };
  std::vector<MemoryDecision> out;
  for (const Memory& m : d.memories()) {
    MemoryDecision dec;
    dec.memory = m.name;
    std::vector<NodeId> roots;
    for (const auto& wp : m.wports) roots.insert(roots.end(), {wp.addr, wp.data, wp.en});
    for (const auto& rp : m.rports) roots.insert(roots.end(), {rp.addr, rp.en});
    const std::set<NodeId> cone = control_latches(d, roots, opt.cone);
    for (NodeId id : cone) dec.control.insert(d.node(id).name);
    dec.keep = hit(cone);
    dec.keep_read_port.assign(m.rports.size(), dec.keep);
    if (dec.keep && opt.granularity == PortGranularity::ReadPort) {
      bool any = false;
      for (std::size_t r = 0; r < m.rports.size(); ++r) {
        dec.keep_read_port[r] = hit(control_latches(d, {m.rports[r].addr, m.rports[r].en}, opt.cone));
        any = any || dec.keep_read_port[r];
      }
      dec.keep = any;
    }
    out.push_back(std::move(dec));
  }
  return out;
}

Abstraction abstract_model(const Design& d, const std::set<std::string>& reasons,
                           const std::vector<MemoryDecision>& memories) {
  Abstraction a;
  a.memories = memories;
  DesignBuilder b(d.name());
  for (NodeId id = 0; id < d.nodes().size(); ++id) {
    const Node& n = d.node(id);
    if (n.op == Op::MemRead) continue;
    if (n.op == Op::Latch) {
      ++a.original_latches;
      a.original_latch_bits += n.width;
      if (!reasons.count(n.name)) {
        b.add_input(n.name, n.width);
        continue;
      }
      a.kept_latches.insert(n.name);
      a.kept_latch_bits += n.width;
    }
    copy_node(b, d, id);
  }
  auto name = [&d](NodeId id) -> const std::string& { return d.node(id).name; };
  for (std::size_t mi = 0; mi < d.memories().size(); ++mi) {
    const Memory& m = d.memories()[mi];
    const MemoryDecision& dec = memories.at(mi);
    std::vector<std::size_t> kept_ports;
    for (std::size_t r = 0; r < m.rports.size(); ++r) {
      if (dec.keep && dec.keep_read_port[r]) {
        kept_ports.push_back(r);
      } else {
        b.add_input(name(m.rports[r].out), m.dw);
      }
    }
    if (kept_ports.empty()) continue;
    b.add_memory(m.name, m.aw, m.dw, static_cast<unsigned>(m.wports.size()),
                 static_cast<unsigned>(kept_ports.size()), m.init);
    for (std::size_t p = 0; p < m.wports.size(); ++p) {
      const WritePort& wp = m.wports[p];
      b.add_wport(m.name, static_cast<unsigned>(p), name(wp.addr), name(wp.data), name(wp.en));
    }
    for (std::size_t i = 0; i < kept_ports.size(); ++i) {
      const ReadPort& rp = m.rports[kept_ports[i]];
      b.add_rport(m.name, static_cast<unsigned>(i), name(rp.addr), name(rp.en), name(rp.out));
    }
  }
  for (const Property& p : d.properties()) b.add_property(p.name, name(p.signal));
  a.model = b.build();
  return a;
}

StableResult stable_abstraction(const Design& d, std::string_view property, unsigned stability,
                                std::size_t bound, const CheckOptions& base,
                                const RelevanceOptions& relevance) {
  CheckOptions opt = base;
  opt.prove = false;
  opt.pba = true;
  opt.stop_when_stable = stability;
  opt.bound = bound;
  StableResult out;
  out.run = check(d, property, opt);
  if (out.run.kind == VerdictKind::CE || out.run.kind == VerdictKind::Unknown) return out;
  out.abstraction = abstract_model(d, out.run.latch_reasons,
                                   memory_relevance(d, out.run.latch_reasons, relevance));
  return out;
}

StableResult iterate_abstraction(const Design& d, std::string_view property, unsigned stability,
                                 std::size_t bound, unsigned rounds, const CheckOptions& base,
                                 const RelevanceOptions& relevance) {
  StableResult cur = stable_abstraction(d, property, stability, bound, base, relevance);
  for (unsigned i = 0; i < rounds && cur.abstraction; ++i) {
    StableResult next =
        stable_abstraction(cur.abstraction->model, property, stability, bound, base, relevance);
    if (!next.abstraction) break;
    const bool shrank = next.abstraction->kept_latch_bits < cur.abstraction->kept_latch_bits ||
                        next.abstraction->model.memories().size() <
                            cur.abstraction->model.memories().size();
    // Report against the original design's latch totals.
    next.abstraction->original_latches = cur.abstraction->original_latches;
    next.abstraction->original_latch_bits = cur.abstraction->original_latch_bits;
    cur = std::move(next);
    if (!shrank) break;
  }
  return cur;
}

}  // namespace emmbmc
