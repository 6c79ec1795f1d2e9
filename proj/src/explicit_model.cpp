#include "emmbmc/explicit_model.hpp"

namespace emmbmc {

ExpandedDesign expand_memory(const Design& design, unsigned cap, bool re0_zero) {
  for (const Memory& m : design.memories()) {
    if (m.aw > cap) {
      throw CapExceeded("memory '" + m.name + "' has aw " + std::to_string(m.aw) +
                        " above the explicit cap " + std::to_string(cap));
    }
  }

  DesignBuilder b(design.name());
  for (NodeId id = 0; id < design.nodes().size(); ++id) {
    if (design.node(id).op != Op::MemRead) copy_node(b, design, id);
  }
  auto name = [&design](NodeId id) -> const std::string& { return design.node(id).name; };

  for (const Memory& m : design.memories()) {
    const std::string base = m.name + "__";
    const std::uint64_t words = std::uint64_t{1} << m.aw;
    std::optional<std::uint64_t> init;
    if (m.init == MemInit::Zero) init = 0;

    for (std::uint64_t a = 0; a < words; ++a) {
      const std::string w = base + "w" + std::to_string(a);
      const std::string ca = base + "a" + std::to_string(a);
      b.add_const(ca, m.aw, a);
      std::string cur = w;
      // Highest port first so the lowest index ends up outermost and wins.
      for (std::size_t p = m.wports.size(); p-- > 0;) {
        const WritePort& wp = m.wports[p];
        const std::string tag = w + "__p" + std::to_string(p);
        b.add_gate(Op::Eq, tag + "_eq", {name(wp.addr), ca});
        b.add_gate(Op::And, tag + "_hit", {name(wp.en), tag + "_eq"});
        b.add_gate(Op::Mux, tag + "_nx", {tag + "_hit", name(wp.data), cur});
        cur = tag + "_nx";
      }
      b.add_latch(w, m.dw, init, cur);
    }

    for (std::size_t r = 0; r < m.rports.size(); ++r) {
      const ReadPort& rp = m.rports[r];
      const std::string rd = name(rp.out);
      std::vector<std::string> level;
      for (std::uint64_t a = 0; a < words; ++a) level.push_back(base + "w" + std::to_string(a));
      for (unsigned bit = 0; bit < m.aw; ++bit) {
        const std::string sel = rd + "__ab" + std::to_string(bit);
        b.add_slice(sel, name(rp.addr), bit, bit);
        std::vector<std::string> next;
        for (std::size_t i = 0; i < level.size(); i += 2) {
          const std::string t = rd + "__t" + std::to_string(bit) + "_" + std::to_string(i / 2);
          b.add_gate(Op::Mux, t, {sel, level[i + 1], level[i]});
          next.push_back(t);
        }
        level = std::move(next);
      }
      const std::string off = rd + "__re0";
      if (re0_zero) {
        b.add_const(off, m.dw, 0);
      } else {
        b.add_input(off, m.dw);
      }
      b.add_gate(Op::Mux, rd, {name(rp.en), level[0], off});
    }
  }
  for (const Property& p : design.properties()) b.add_property(p.name, name(p.signal));

  ExpandedDesign out{b.build(), {}};
  const Design& d = out.design;
  for (const Memory& m : design.memories()) {
    ExpandedMemory em;
    em.name = m.name;
    em.aw = m.aw;
    em.dw = m.dw;
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << m.aw); ++a) {
      em.words.push_back(d.id_of(m.name + "__w" + std::to_string(a)));
    }
    for (const WritePort& wp : m.wports) {
      em.wports.push_back({d.id_of(name(wp.addr)), d.id_of(name(wp.data)), d.id_of(name(wp.en))});
    }
    for (const ReadPort& rp : m.rports) {
      em.rports.push_back({d.id_of(name(rp.addr)), d.id_of(name(rp.en)), d.id_of(name(rp.out))});
    }
    out.memories.push_back(std::move(em));
  }
  return out;
}

}  // namespace emmbmc
