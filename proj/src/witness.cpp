#include "emmbmc/witness.hpp"

#include <bit>
#include <charconv>
#include <set>
#include <sstream>

#include "emmbmc/eval.hpp"

namespace emmbmc {

Witness build_witness(const Design& design, std::size_t frames, const SignalValueFn& value) {
  Witness w;
  for (std::size_t k = 0; k < frames; ++k) {
    WitnessFrame f;
    for (NodeId id : design.inputs()) f.inputs[design.node(id).name] = value(k, design.node(id).name);
    for (NodeId id : design.latches()) {
      f.latches[design.node(id).name] = value(k, design.node(id).name);
    }
    for (const Memory& m : design.memories()) {
      auto name = [&design](NodeId id) -> const std::string& { return design.node(id).name; };
      MemFrame mf;
      for (const WritePort& wp : m.wports) {
        mf.writes.push_back({value(k, name(wp.en)) != 0, value(k, name(wp.addr)),
                             value(k, name(wp.data))});
      }
      for (const ReadPort& rp : m.rports) {
        ReadEvent r;
        r.en = value(k, name(rp.en)) != 0;
        r.addr = value(k, name(rp.addr));
        const std::uint64_t data = value(k, name(rp.out));
        if (r.en) {
          r.data = data;
        } else {
          f.inputs[name(rp.out)] = data;
        }
        mf.reads.push_back(r);
      }
      f.memories[m.name] = std::move(mf);
    }
    w.frames.push_back(std::move(f));
  }
  return w;
}

std::string print_witness(const Witness& w) {
  std::ostringstream os;
  for (std::size_t k = 0; k < w.frames.size(); ++k) {
    const WitnessFrame& f = w.frames[k];
    os << "frame " << k << '\n';
    for (const auto& [n, v] : f.inputs) os << "in " << n << ' ' << v << '\n';
    for (const auto& [n, v] : f.latches) os << "latch " << n << ' ' << v << '\n';
    for (const auto& [n, mf] : f.memories) {
      for (std::size_t p = 0; p < mf.writes.size(); ++p) {
        const WriteEvent& e = mf.writes[p];
        os << "mem " << n << " wport " << p << ' ' << e.en << ' ' << e.addr << ' ' << e.data
           << '\n';
      }
      for (std::size_t p = 0; p < mf.reads.size(); ++p) {
        const ReadEvent& e = mf.reads[p];
        os << "mem " << n << " rport " << p << ' ' << e.en << ' ' << e.addr << ' ';
        if (e.data) {
          os << *e.data;
        } else {
          os << 'x';
        }
        os << '\n';
      }
    }
  }
  return os.str();
}

namespace {

std::uint64_t parse_u64(std::string_view tok, int line) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size()) {
    throw WitnessError("line " + std::to_string(line) + ": bad number '" + std::string(tok) + "'");
  }
  return v;
}

template <typename T>
T& slot(std::vector<T>& v, std::size_t i) {
  if (v.size() <= i) v.resize(i + 1);
  return v[i];
}

}  // namespace

Witness parse_witness(std::string_view text) {
  Witness w;
  std::istringstream is{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    auto fail = [line](const std::string& what) {
      return WitnessError("line " + std::to_string(line) + ": " + what);
    };
    if (tok[0] == "frame") {
      if (tok.size() != 2) throw fail("expected 'frame <k>'");
      if (parse_u64(tok[1], line) != w.frames.size()) throw fail("frames must be consecutive from 0");
      w.frames.emplace_back();
      continue;
    }
    if (w.frames.empty()) throw fail("statement before first frame");
    WitnessFrame& f = w.frames.back();
    if (tok[0] == "in" || tok[0] == "latch") {
      if (tok.size() != 3) throw fail("expected '" + tok[0] + " <id> <value>'");
      (tok[0] == "in" ? f.inputs : f.latches)[tok[1]] = parse_u64(tok[2], line);
    } else if (tok[0] == "mem") {
      if (tok.size() != 7) throw fail("expected 'mem <id> wport|rport <p> <en> <addr> <data>'");
      MemFrame& mf = f.memories[tok[1]];
      const std::size_t p = parse_u64(tok[3], line);
      const bool en = parse_u64(tok[4], line) != 0;
      const std::uint64_t addr = parse_u64(tok[5], line);
      if (tok[2] == "wport") {
        slot(mf.writes, p) = {en, addr, parse_u64(tok[6], line)};
      } else if (tok[2] == "rport") {
        ReadEvent& r = slot(mf.reads, p);
        r.en = en;
        r.addr = addr;
        if (tok[6] == "x") {
          r.data.reset();
        } else {
          r.data = parse_u64(tok[6], line);
        }
      } else {
        throw fail("expected wport or rport");
      }
    } else {
      throw fail("unknown statement '" + tok[0] + "'");
    }
  }
  return w;
}

namespace {

struct Mismatch {
  std::size_t frame;
  std::string signal;
  std::uint64_t expected, actual;
};

ReplayResult mismatch(const Mismatch& m) {
  ReplayResult r;
  r.frame = m.frame;
  r.signal = m.signal;
  r.bit = std::countr_zero(m.expected ^ m.actual);
  r.message = "frame " + std::to_string(m.frame) + ": " + m.signal + " recorded " +
              std::to_string(m.expected) + " but replay gives " + std::to_string(m.actual) +
              " (bit " + std::to_string(r.bit) + ")";
  return r;
}

ReplayResult failure(std::size_t frame, std::string signal, std::string message) {
  ReplayResult r;
  r.frame = frame;
  r.signal = std::move(signal);
  r.message = "frame " + std::to_string(frame) + ": " + message;
  return r;
}

}  // namespace

ReplayResult replay(const Design& d, const Witness& w, std::string_view property) {
  const Property& prop = d.property(property);
  if (w.frames.empty()) return failure(0, "", "empty trace");
  auto name = [&d](NodeId id) -> const std::string& { return d.node(id).name; };

  const std::size_t nmem = d.memories().size();
  for (std::size_t k = 0; k < w.frames.size(); ++k) {
    for (const Memory& m : d.memories()) {
      auto it = w.frames[k].memories.find(m.name);
      if (it == w.frames[k].memories.end() || it->second.writes.size() != m.wports.size() ||
          it->second.reads.size() != m.rports.size()) {
        throw WitnessError("frame " + std::to_string(k) + ": ports of memory '" + m.name +
                           "' missing");
      }
    }
  }

  // Pass 1: netlist evaluation with the recorded read data as leaves.
  std::vector<std::uint64_t> latches(d.nodes().size(), 0);
  std::optional<Mismatch> first_eval;
  std::string property_note;
  std::vector<std::uint64_t> last_values;
  std::size_t evaluated = 0;
  for (std::size_t k = 0; k < w.frames.size() && !first_eval; ++k) {
    const WitnessFrame& f = w.frames[k];
    std::vector<std::uint64_t> leaves(d.nodes().size(), 0);
    for (NodeId id : d.inputs()) {
      auto it = f.inputs.find(name(id));
      if (it == f.inputs.end()) {
        throw WitnessError("frame " + std::to_string(k) + ": input '" + name(id) + "' missing");
      }
      leaves[id] = it->second;
    }
    for (NodeId id : d.latches()) {
      auto it = f.latches.find(name(id));
      if (it == f.latches.end()) {
        throw WitnessError("frame " + std::to_string(k) + ": latch '" + name(id) + "' missing");
      }
      std::uint64_t expect = k == 0 ? d.node(id).init.value_or(it->second) : latches[id];
      if (it->second != expect) {
        first_eval = Mismatch{k, name(id), it->second, expect};
        break;
      }
      leaves[id] = expect;
    }
    if (first_eval) break;
    auto read = [&](std::size_t mem, std::size_t port, bool en, std::uint64_t) -> std::uint64_t {
      const Memory& m = d.memories()[mem];
      const ReadEvent& r = f.memories.at(m.name).reads[port];
      if (en && r.data) return *r.data;
      auto it = f.inputs.find(name(m.rports[port].out));
      return it == f.inputs.end() ? 0 : it->second;
    };
    std::vector<std::uint64_t> v = evaluate_frame(d, leaves, read);
    for (const Memory& m : d.memories()) {
      const MemFrame& mf = f.memories.at(m.name);
      for (std::size_t p = 0; p < m.wports.size() && !first_eval; ++p) {
        const WritePort& wp = m.wports[p];
        const WriteEvent& e = mf.writes[p];
        const std::string tag = m.name + ".wport" + std::to_string(p);
        if (e.en != (v[wp.en] != 0)) {
          first_eval = Mismatch{k, tag + ".en", e.en, v[wp.en]};
        } else if (e.en && e.addr != v[wp.addr]) {
          first_eval = Mismatch{k, tag + ".addr", e.addr, v[wp.addr]};
        } else if (e.en && e.data != v[wp.data]) {
          first_eval = Mismatch{k, tag + ".data", e.data, v[wp.data]};
        }
      }
      for (std::size_t p = 0; p < m.rports.size() && !first_eval; ++p) {
        const ReadPort& rp = m.rports[p];
        const ReadEvent& e = mf.reads[p];
        const std::string tag = m.name + ".rport" + std::to_string(p);
        if (e.en != (v[rp.en] != 0)) {
          first_eval = Mismatch{k, tag + ".en", e.en, v[rp.en]};
        } else if (e.en && e.addr != v[rp.addr]) {
          first_eval = Mismatch{k, tag + ".addr", e.addr, v[rp.addr]};
        } else if (e.en && !e.data) {
          return failure(k, tag + ".data", "enabled read without recorded data");
        }
      }
    }
    if (first_eval) break;
    for (NodeId id : d.latches()) latches[id] = v[d.node(id).operands[0]];
    last_values = std::move(v);
    evaluated = k + 1;
  }

  // Pass 2: forwarding semantics over the recorded port activity.
  std::optional<Mismatch> first_mem;
  for (std::size_t mi = 0; mi < nmem; ++mi) {
    const Memory& m = d.memories()[mi];
    MemTrace trace;
    std::map<std::uint64_t, std::uint64_t> init_words;
    std::set<std::uint64_t> written;
    for (std::size_t k = 0; k < w.frames.size(); ++k) {
      const MemFrame& mf = w.frames[k].memories.at(m.name);
      for (const ReadEvent& r : mf.reads) {
        if (r.en && r.data && !written.count(r.addr)) init_words.emplace(r.addr, *r.data);
      }
      for (const WriteEvent& e : mf.writes) {
        if (e.en) written.insert(e.addr);
      }
      trace.frames.push_back(mf);
    }
    if (m.init == MemInit::Zero) init_words.clear();
    SimulationResult sim = simulate_memory(MemoryShape::of(m), trace, init_words);
    if (sim.race) {
      if (!first_eval || sim.race->frame < first_eval->frame) {
        return failure(sim.race->frame, m.name,
                       "write race at address " + std::to_string(sim.race->addr));
      }
    }
    for (std::size_t k = 0; k < sim.trace.frames.size(); ++k) {
      if (first_mem && first_mem->frame <= k) break;
      const auto& got = sim.trace.frames[k].reads;
      const auto& rec = trace.frames[k].reads;
      for (std::size_t p = 0; p < got.size(); ++p) {
        if (!rec[p].en || !rec[p].data) continue;
        if (*rec[p].data != *got[p].data) {
          first_mem = Mismatch{k, name(m.rports[p].out), *rec[p].data, *got[p].data};
          break;
        }
      }
    }
  }

  if (first_mem && (!first_eval || first_mem->frame <= first_eval->frame)) return mismatch(*first_mem);
  if (first_eval) return mismatch(*first_eval);
  if (evaluated != w.frames.size()) return failure(evaluated, "", "evaluation stopped");
  if (last_values[prop.signal] != 0) {
    return failure(w.frames.size() - 1, prop.name, "property holds at the final frame");
  }
  ReplayResult ok;
  ok.valid = true;
  ok.frame = w.frames.size() - 1;
  ok.message = "valid";
  return ok;
}

}  // namespace emmbmc
