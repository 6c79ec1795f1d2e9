#include "emmbmc/emm.hpp"

#include "emmbmc/bitblast.hpp"

namespace emmbmc {

PredictedCounts predicted_counts(std::uint64_t m, std::uint64_t n, std::uint64_t w,
                                 std::uint64_t r, std::uint64_t k) {
  return {((4 * m + 2 * n + 1) * k * w + 2 * n + 1) * r, 3 * k * w * r};
}

EmmEncoder::EmmEncoder(Unroller& unroller, EmmOptions options)
    : u_(unroller), store_(unroller.store()), opt_(std::move(options)) {
  reads_.resize(u_.design().memories().size());
}

bool EmmEncoder::modeled(std::size_t mem) const {
  return opt_.memories.empty() || opt_.memories[mem];
}

bool EmmEncoder::modeled(std::size_t mem, std::size_t port) const {
  if (!modeled(mem)) return false;
  return opt_.read_ports.empty() || opt_.read_ports[mem].empty() || opt_.read_ports[mem][port];
}

Lit EmmEncoder::addr_equal(const std::vector<Lit>& a, const std::vector<Lit>& b) {
  const Lit eq = store_.new_var();
  std::vector<Lit> closing;
  closing.reserve(a.size() + 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Lit e = store_.new_var();
    store_.add_clause({~eq, ~a[i], b[i]});
    store_.add_clause({~eq, a[i], ~b[i]});
    store_.add_clause({a[i], b[i], e});
    store_.add_clause({~a[i], ~b[i], e});
    closing.push_back(~e);
  }
  closing.push_back(eq);
  store_.add_clause(closing);
  return eq;
}

// guard -> (x == y), two clauses per bit.
void EmmEncoder::equal_under(std::vector<Lit> guard, const std::vector<Lit>& x,
                             const std::vector<Lit>& y) {
  for (Lit& g : guard) g = ~g;
  const std::size_t base = guard.size();
  guard.resize(base + 2);
  for (std::size_t i = 0; i < x.size(); ++i) {
    guard[base] = ~x[i];
    guard[base + 1] = y[i];
    store_.add_clause(guard);
    guard[base] = x[i];
    guard[base + 1] = ~y[i];
    store_.add_clause(guard);
  }
}

void EmmEncoder::encode(std::size_t k) {
  const auto& mems = u_.design().memories();
  for (std::size_t m = 0; m < mems.size(); ++m) {
    if (!modeled(m)) continue;
    for (unsigned r = 0; r < mems[m].rports.size(); ++r) {
      if (modeled(m, r)) encode_read(m, r, k);
    }
  }
}

void EmmEncoder::encode_read(std::size_t mem, unsigned port, std::size_t k) {
  const Memory& memory = u_.design().memories()[mem];
  const BitMemory& bm = u_.net().memories[mem];
  const BitReadPort& rp = bm.rports[port];

  EmmRead rd;
  rd.frame = k;
  rd.port = port;
  rd.re = u_.lit(k, rp.en);
  rd.addr = u_.lits(k, rp.addr);
  for (std::uint32_t v : rp.data_vars) rd.rd.push_back(u_.lit(k, AigLit{v << 1}));

  const bool symbolic = opt_.symbolic_init || memory.init == MemInit::Arbitrary;
  if (symbolic) {
    for (unsigned i = 0; i < memory.dw; ++i) rd.init_word.push_back(store_.new_var());
  } else {
    rd.init_word.assign(memory.dw, store_.false_lit());
  }

  if (!opt_.exclusivity) {
    encode_read_direct(mem, port, k, rd);
  } else {
    Lit ps = rd.re;
    std::vector<Lit> valid{~rd.re};
    for (std::size_t j = k; j-- > 0;) {
      for (std::size_t w = bm.wports.size(); w-- > 0;) {
        const BitWritePort& wp = bm.wports[w];
        EmmRead::Source src{j, static_cast<unsigned>(w), {}, {}, {}};
        {
          CategoryScope scope(store_, Category::AddressCompare);
          src.e = addr_equal(u_.lits(j, wp.addr), rd.addr);
        }
        {
          CategoryScope scope(store_, Category::Exclusivity);
          src.s = store_.make_and(src.e, u_.lit(j, wp.en));
          src.sel = store_.make_and(src.s, opt_.fault_drop_chaining ? rd.re : ps);
          ps = store_.make_and(~src.s, ps);
        }
        {
          CategoryScope scope(store_, Category::ReadData);
          equal_under({src.sel}, rd.rd, u_.lits(j, wp.data));
        }
        valid.push_back(src.sel);
        rd.sources.push_back(src);
      }
    }
    rd.ps0 = ps;
    valid.push_back(ps);
    CategoryScope scope(store_, Category::ReadData);
    equal_under({rd.ps0}, rd.rd, rd.init_word);
    store_.add_clause(valid);
  }

  if (symbolic && memory.init == MemInit::Zero) {
    CategoryScope scope(store_, Category::InitState);
    for (Lit v : rd.init_word) store_.add_clause({~u_.init(), ~v});
  }
  if (opt_.re0_zero) {
    CategoryScope scope(store_, Category::ReadDisabled);
    for (Lit d : rd.rd) store_.add_clause({rd.re, ~d});
  }
  if (symbolic && opt_.init_consistency) init_consistency(mem, rd);
  reads_[mem].push_back(std::move(rd));
}

// Direct forwarding implications without exclusive selectors: a matching
// write forwards unless a later matching write exists.
void EmmEncoder::encode_read_direct(std::size_t mem, unsigned, std::size_t k, EmmRead& rd) {
  const BitMemory& bm = u_.net().memories[mem];
  std::vector<Lit> later;
  for (std::size_t j = k; j-- > 0;) {
    for (std::size_t w = bm.wports.size(); w-- > 0;) {
      const BitWritePort& wp = bm.wports[w];
      EmmRead::Source src{j, static_cast<unsigned>(w), {}, {}, {}};
      {
        CategoryScope scope(store_, Category::AddressCompare);
        src.e = addr_equal(u_.lits(j, wp.addr), rd.addr);
      }
      {
        CategoryScope scope(store_, Category::Exclusivity);
        src.s = store_.make_and(src.e, u_.lit(j, wp.en));
      }
      src.sel = src.s;
      std::vector<Lit> guard{rd.re, src.s};
      for (Lit l : later) guard.push_back(~l);
      {
        CategoryScope scope(store_, Category::ReadData);
        equal_under(guard, rd.rd, u_.lits(j, wp.data));
      }
      later.push_back(src.s);
      rd.sources.push_back(src);
    }
  }
  CategoryScope scope(store_, Category::Exclusivity);
  rd.ps0 = store_.new_var();
  std::vector<Lit> back{rd.ps0, ~rd.re};
  store_.add_clause({~rd.ps0, rd.re});
  for (Lit s : later) {
    store_.add_clause({~rd.ps0, ~s});
    back.push_back(s);
  }
  store_.add_clause(back);
  CategoryScope data(store_, Category::ReadData);
  equal_under({rd.ps0}, rd.rd, rd.init_word);
}

void EmmEncoder::init_consistency(std::size_t mem, const EmmRead& rd) {
  CategoryScope scope(store_, Category::InitConsistency);
  for (const EmmRead& other : reads_[mem]) {
    const Lit eq = addr_equal(rd.addr, other.addr);
    equal_under({eq, rd.ps0, other.ps0}, rd.init_word, other.init_word);
  }
}

std::vector<CategoryCounts> encoding_counts(const Design& design, std::string_view property,
                                            std::size_t bound, const EmmOptions& options) {
  const BitNetlist net = bit_blast(design);
  ConstraintStore store;
  Unroller u(design, net, store, design.property(property).signal);
  EmmEncoder emm(u, options);
  std::vector<CategoryCounts> out;
  for (std::size_t k = 0; k <= bound; ++k) {
    emm.encode(u.unroll());
    out.push_back(store.counts());
  }
  return out;
}

}  // namespace emmbmc
