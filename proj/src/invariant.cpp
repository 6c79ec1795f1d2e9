#include "emmbmc/invariant.hpp"

namespace emmbmc {

std::string write_invariant_name(const std::string& memory) { return memory + "__writes_zero"; }

namespace {

std::size_t require_memory(const Design& d, const std::string& memory) {
  auto mi = d.memory_index(memory);
  if (!mi) throw DesignError("no memory named '" + memory + "'");
  return *mi;
}

void copy_memory(DesignBuilder& b, const Design& d, const Memory& m) {
  b.add_memory(m.name, m.aw, m.dw, static_cast<unsigned>(m.wports.size()),
               static_cast<unsigned>(m.rports.size()), m.init);
  auto name = [&d](NodeId id) -> const std::string& { return d.node(id).name; };
  for (std::size_t p = 0; p < m.wports.size(); ++p) {
    const WritePort& wp = m.wports[p];
    b.add_wport(m.name, static_cast<unsigned>(p), name(wp.addr), name(wp.data), name(wp.en));
  }
  for (std::size_t p = 0; p < m.rports.size(); ++p) {
    const ReadPort& rp = m.rports[p];
    b.add_rport(m.name, static_cast<unsigned>(p), name(rp.addr), name(rp.en), name(rp.out));
  }
}

}  // namespace

Design with_write_invariant(const Design& d, const std::string& memory) {
  const Memory& m = d.memories()[require_memory(d, memory)];
  DesignBuilder b(d.name());
  for (NodeId id = 0; id < d.nodes().size(); ++id) {
    if (d.node(id).op != Op::MemRead) copy_node(b, d, id);
  }
  for (const Memory& mem : d.memories()) copy_memory(b, d, mem);
  for (const Property& p : d.properties()) b.add_property(p.name, d.node(p.signal).name);

  const std::string base = write_invariant_name(memory);
  const std::string zero = base + "__zero";
  b.add_const(zero, m.dw, 0);
  std::vector<std::string> terms;
  for (std::size_t p = 0; p < m.wports.size(); ++p) {
    const WritePort& wp = m.wports[p];
    const std::string tag = base + "__p" + std::to_string(p);
    b.add_gate(Op::Not, tag + "_off", {d.node(wp.en).name});
    b.add_gate(Op::Eq, tag + "_z", {d.node(wp.data).name, zero});
    b.add_gate(Op::Or, tag + "_ok", {tag + "_off", tag + "_z"});
    terms.push_back(tag + "_ok");
  }
  if (terms.size() == 1) terms.push_back(terms[0]);
  b.add_gate(Op::And, base, terms);
  b.add_property(base, base);
  return b.build();
}

Design rewrite_zero_reads(const Design& d, const std::string& memory) {
  const std::size_t mi = require_memory(d, memory);
  const Memory& m = d.memories()[mi];
  if (m.init != MemInit::Zero) {
    throw DesignError("memory '" + memory + "' is not zero-initialized; reads cannot be rewritten");
  }
  DesignBuilder b(d.name());
  for (NodeId id = 0; id < d.nodes().size(); ++id) {
    if (d.node(id).op != Op::MemRead) copy_node(b, d, id);
  }
  const std::string zero = memory + "__zero";
  b.add_const(zero, m.dw, 0);
  for (const ReadPort& rp : m.rports) {
    const std::string& rd = d.node(rp.out).name;
    b.add_input(rd + "__free", m.dw);
    b.add_gate(Op::Mux, rd, {d.node(rp.en).name, zero, rd + "__free"});
  }
  for (std::size_t k = 0; k < d.memories().size(); ++k) {
    if (k != mi) copy_memory(b, d, d.memories()[k]);
  }
  for (const Property& p : d.properties()) b.add_property(p.name, d.node(p.signal).name);
  return b.build();
}

InvariantResult invariant_check(const Design& d, const std::string& memory,
                                const std::string& target, const InvariantOptions& opt) {
  InvariantResult out;
  const Design with_inv = with_write_invariant(d, memory);
  CheckOptions co = opt.base;
  co.prove = true;
  co.bound = opt.bound;
  out.invariant = check(with_inv, write_invariant_name(memory), co);
  if (out.invariant.kind != VerdictKind::Proof || target.empty()) return out;

  out.rewritten = rewrite_zero_reads(d, memory);
  out.abstraction = stable_abstraction(*out.rewritten, target, opt.stability, opt.bound, opt.base);
  if (!out.abstraction->abstraction) {
    out.target = out.abstraction->run;
    return out;
  }
  out.target = check(out.abstraction->abstraction->model, target, co);
  return out;
}

}  // namespace emmbmc
