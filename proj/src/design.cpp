#include "emmbmc/design.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace emmbmc {

std::string_view op_name(Op op) {
  switch (op) {
    case Op::Input: return "input";
    case Op::Const: return "const";
    case Op::Latch: return "latch";
    case Op::And: return "and";
    case Op::Or: return "or";
    case Op::Not: return "not";
    case Op::Xor: return "xor";
    case Op::Mux: return "mux";
    case Op::Eq: return "eq";
    case Op::Ltu: return "ltu";
    case Op::Add: return "add";
    case Op::Sub: return "sub";
    case Op::Slice: return "slice";
    case Op::Concat: return "concat";
    case Op::MemRead: return "rport";
  }
  return "?";
}

std::uint64_t width_mask(unsigned width) {
  return width >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << width) - 1);
}

// ---------------------------------------------------------------- Design

std::optional<NodeId> Design::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

NodeId Design::id_of(std::string_view name) const {
  auto id = find(name);
  if (!id) throw DesignError("unknown signal '" + std::string(name) + "'");
  return *id;
}

const Property& Design::property(std::string_view name) const {
  for (const auto& p : properties_) {
    if (p.name == name) return p;
  }
  throw DesignError("unknown property '" + std::string(name) + "'");
}

std::optional<std::size_t> Design::memory_index(std::string_view name) const {
  for (std::size_t i = 0; i < memories_.size(); ++i) {
    if (memories_[i].name == name) return i;
  }
  return std::nullopt;
}

std::vector<NodeId> Design::latches() const {
  std::vector<NodeId> out;
  for (NodeId i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].op == Op::Latch) out.push_back(i);
  }
  return out;
}

std::vector<NodeId> Design::inputs() const {
  std::vector<NodeId> out;
  for (NodeId i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].op == Op::Input) out.push_back(i);
  }
  return out;
}

// --------------------------------------------------------------- Builder

void DesignBuilder::declare(PendingNode pending) {
  pending.line = line_;
  nodes_.push_back(std::move(pending));
}

void DesignBuilder::add_input(const std::string& id, unsigned width) {
  PendingNode p;
  p.node.name = id;
  p.node.op = Op::Input;
  p.node.width = width;
  declare(std::move(p));
}

void DesignBuilder::add_const(const std::string& id, unsigned width, std::uint64_t value) {
  PendingNode p;
  p.node.name = id;
  p.node.op = Op::Const;
  p.node.width = width;
  p.node.value = value;
  declare(std::move(p));
}

void DesignBuilder::add_latch(const std::string& id, unsigned width,
                              std::optional<std::uint64_t> init, const std::string& next) {
  PendingNode p;
  p.node.name = id;
  p.node.op = Op::Latch;
  p.node.width = width;
  p.node.init = init;
  p.refs = {next};
  declare(std::move(p));
}

void DesignBuilder::add_gate(Op op, const std::string& id, std::vector<std::string> operands) {
  PendingNode p;
  p.node.name = id;
  p.node.op = op;
  p.refs = std::move(operands);
  declare(std::move(p));
}

void DesignBuilder::add_slice(const std::string& id, const std::string& operand, unsigned hi,
                              unsigned lo) {
  PendingNode p;
  p.node.name = id;
  p.node.op = Op::Slice;
  p.node.hi = hi;
  p.node.lo = lo;
  p.refs = {operand};
  declare(std::move(p));
}

void DesignBuilder::add_memory(const std::string& id, unsigned aw, unsigned dw, unsigned wports,
                               unsigned rports, MemInit init) {
  PendingMemory m;
  m.mem.name = id;
  m.mem.aw = aw;
  m.mem.dw = dw;
  m.mem.init = init;
  m.wports = wports;
  m.rports = rports;
  m.line = line_;
  memories_.push_back(std::move(m));
}

void DesignBuilder::add_wport(const std::string& mem, unsigned port, const std::string& addr,
                              const std::string& data, const std::string& en) {
  ports_.push_back({mem, port, true, addr, data, en, "", line_});
}

void DesignBuilder::add_rport(const std::string& mem, unsigned port, const std::string& addr,
                              const std::string& en, const std::string& out) {
  ports_.push_back({mem, port, false, addr, "", en, out, line_});
  PendingNode p;
  p.node.name = out;
  p.node.op = Op::MemRead;
  p.node.port = port;
  p.refs = {mem};
  declare(std::move(p));
}

void DesignBuilder::add_property(const std::string& name, const std::string& signal) {
  properties_.push_back({name, signal, line_});
}

namespace {

void check_width(unsigned width, const std::string& id, int line) {
  if (width < 1 || width > kMaxWidth) {
    throw DesignError("width of '" + id + "' must be in 1.." + std::to_string(kMaxWidth),
                      line);
  }
}

}  // namespace

Design DesignBuilder::build() const {
  Design d;
  d.name_ = name_;
  std::vector<int> node_line;

  std::unordered_map<std::string, std::size_t> mem_by_name;
  for (const auto& pm : memories_) {
    if (mem_by_name.count(pm.mem.name)) {
      throw DesignError("duplicate id '" + pm.mem.name + "'", pm.line);
    }
    if (pm.mem.aw < 1 || pm.mem.aw > 32 || pm.mem.dw < 1 || pm.mem.dw > kMaxWidth) {
      throw DesignError("memory '" + pm.mem.name + "' has unsupported widths", pm.line);
    }
    if (pm.wports < 1 || pm.rports < 1) {
      throw DesignError("memory '" + pm.mem.name + "' needs at least one read and one write port",
                        pm.line);
    }
    mem_by_name.emplace(pm.mem.name, d.memories_.size());
    Memory m = pm.mem;
    m.wports.assign(pm.wports, WritePort{});
    m.rports.assign(pm.rports, ReadPort{});
    d.memories_.push_back(std::move(m));
  }

  for (const auto& pn : nodes_) {
    if (d.by_name_.count(pn.node.name) || mem_by_name.count(pn.node.name)) {
      throw DesignError("duplicate id '" + pn.node.name + "'", pn.line);
    }
    NodeId id = static_cast<NodeId>(d.nodes_.size());
    d.by_name_.emplace(pn.node.name, id);
    d.nodes_.push_back(pn.node);
    node_line.push_back(pn.line);
  }

  auto resolve = [&](const std::string& ref, const std::string& user, int line) -> NodeId {
    auto it = d.by_name_.find(ref);
    if (it == d.by_name_.end()) {
      throw DesignError("dangling reference '" + ref + "' in '" + user + "'", line);
    }
    return it->second;
  };

  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto& pn = nodes_[i];
    Node& n = d.nodes_[i];
    if (n.op == Op::MemRead) {
      auto it = mem_by_name.find(pn.refs[0]);
      if (it == mem_by_name.end()) {
        throw DesignError("rport of unknown memory '" + pn.refs[0] + "'", pn.line);
      }
      n.mem = static_cast<std::uint32_t>(it->second);
      n.width = d.memories_[it->second].dw;
      continue;
    }
    for (const auto& ref : pn.refs) n.operands.push_back(resolve(ref, n.name, pn.line));
  }

  // Ports.
  std::vector<std::vector<bool>> wbound(d.memories_.size()), rbound(d.memories_.size());
  for (std::size_t m = 0; m < d.memories_.size(); ++m) {
    wbound[m].assign(d.memories_[m].wports.size(), false);
    rbound[m].assign(d.memories_[m].rports.size(), false);
  }
  for (const auto& pp : ports_) {
    auto it = mem_by_name.find(pp.mem);
    if (it == mem_by_name.end()) {
      throw DesignError("port of unknown memory '" + pp.mem + "'", pp.line);
    }
    Memory& mem = d.memories_[it->second];
    auto& bound = pp.write ? wbound[it->second] : rbound[it->second];
    if (pp.port >= bound.size()) {
      throw DesignError("port index " + std::to_string(pp.port) + " out of range for memory '" +
                            mem.name + "'",
                        pp.line);
    }
    if (bound[pp.port]) {
      throw DesignError("port " + std::to_string(pp.port) + " of memory '" + mem.name +
                            "' bound twice",
                        pp.line);
    }
    bound[pp.port] = true;
    if (pp.write) {
      mem.wports[pp.port] = {resolve(pp.addr, mem.name, pp.line),
                             resolve(pp.data, mem.name, pp.line),
                             resolve(pp.en, mem.name, pp.line)};
    } else {
      NodeId out = d.by_name_.at(pp.out);
      mem.rports[pp.port] = {resolve(pp.addr, mem.name, pp.line),
                             resolve(pp.en, mem.name, pp.line), out};
    }
  }
  for (std::size_t m = 0; m < d.memories_.size(); ++m) {
    for (std::size_t p = 0; p < wbound[m].size(); ++p) {
      if (!wbound[m][p]) {
        throw DesignError("write port " + std::to_string(p) + " of memory '" +
                          d.memories_[m].name + "' is unbound");
      }
    }
    for (std::size_t p = 0; p < rbound[m].size(); ++p) {
      if (!rbound[m][p]) {
        throw DesignError("read port " + std::to_string(p) + " of memory '" +
                          d.memories_[m].name + "' is unbound");
      }
    }
  }

  // Topological order over combinational edges, detecting cycles.
  const std::size_t n = d.nodes_.size();
  auto comb_deps = [&d](NodeId id) -> std::vector<NodeId> {
    const Node& node = d.nodes_[id];
    switch (node.op) {
      case Op::Input:
      case Op::Const:
      case Op::Latch:
        return {};
      case Op::MemRead: {
        const ReadPort& rp = d.memories_[node.mem].rports[node.port];
        return {rp.addr, rp.en};
      }
      default:
        return node.operands;
    }
  };
  std::vector<std::uint8_t> state(n, 0);  // 0 new, 1 on stack, 2 done
  std::vector<std::pair<NodeId, std::size_t>> stack;
  for (NodeId root = 0; root < n; ++root) {
    if (state[root]) continue;
    stack.push_back({root, 0});
    state[root] = 1;
    while (!stack.empty()) {
      auto& [id, next] = stack.back();
      auto deps = comb_deps(id);
      if (next < deps.size()) {
        NodeId dep = deps[next++];
        if (state[dep] == 1) {
          throw DesignError("cyclic combinational path through '" + d.nodes_[dep].name + "'",
                            node_line[dep]);
        }
        if (state[dep] == 0) {
          state[dep] = 1;
          stack.push_back({dep, 0});
        }
        continue;
      }
      state[id] = 2;
      d.topo_.push_back(id);
      stack.pop_back();
    }
  }
  // Leaves first so evaluators can seed them before gates.
  std::stable_partition(d.topo_.begin(), d.topo_.end(), [&d](NodeId id) {
    Op op = d.nodes_[id].op;
    return op == Op::Input || op == Op::Const || op == Op::Latch;
  });

  // Widths, in dependency order.
  for (NodeId id : d.topo_) {
    Node& node = d.nodes_[id];
    const int line = node_line[id];
    auto w = [&d](NodeId o) { return d.nodes_[o].width; };
    auto mismatch = [&]() {
      return DesignError("width mismatch in '" + node.name + "' (" +
                             std::string(op_name(node.op)) + ")",
                         line);
    };
    auto arity = [&](std::size_t lo, std::size_t hi) {
      if (node.operands.size() < lo || node.operands.size() > hi) {
        throw DesignError("wrong operand count for '" + node.name + "'", line);
      }
    };
    switch (node.op) {
      case Op::Input:
        check_width(node.width, node.name, line);
        break;
      case Op::Const:
        check_width(node.width, node.name, line);
        if (node.value & ~width_mask(node.width)) {
          throw DesignError("constant '" + node.name + "' does not fit its width", line);
        }
        break;
      case Op::Latch:
        check_width(node.width, node.name, line);
        if (node.init && (*node.init & ~width_mask(node.width))) {
          throw DesignError("init of latch '" + node.name + "' does not fit its width", line);
        }
        break;
      case Op::MemRead:
        break;
      case Op::And:
      case Op::Or:
      case Op::Xor:
        arity(2, SIZE_MAX);
        for (NodeId o : node.operands) {
          if (w(o) != w(node.operands[0])) throw mismatch();
        }
        node.width = w(node.operands[0]);
        break;
      case Op::Not:
        arity(1, 1);
        node.width = w(node.operands[0]);
        break;
      case Op::Mux:
        arity(3, 3);
        if (w(node.operands[0]) != 1 || w(node.operands[1]) != w(node.operands[2])) {
          throw mismatch();
        }
        node.width = w(node.operands[1]);
        break;
      case Op::Eq:
      case Op::Ltu:
        arity(2, 2);
        if (w(node.operands[0]) != w(node.operands[1])) throw mismatch();
        node.width = 1;
        break;
      case Op::Add:
      case Op::Sub:
        arity(2, 2);
        if (w(node.operands[0]) != w(node.operands[1])) throw mismatch();
        node.width = w(node.operands[0]);
        break;
      case Op::Slice:
        arity(1, 1);
        if (node.lo > node.hi || node.hi >= w(node.operands[0])) {
          throw DesignError("slice bounds out of range in '" + node.name + "'", line);
        }
        node.width = node.hi - node.lo + 1;
        break;
      case Op::Concat: {
        arity(1, SIZE_MAX);
        unsigned total = 0;
        for (NodeId o : node.operands) total += w(o);
        if (total > kMaxWidth) {
          throw DesignError("concat '" + node.name + "' exceeds " + std::to_string(kMaxWidth) +
                                " bits",
                            line);
        }
        node.width = total;
        break;
      }
    }
  }

  for (NodeId id = 0; id < n; ++id) {
    const Node& node = d.nodes_[id];
    if (node.op == Op::Latch && d.nodes_[node.operands[0]].width != node.width) {
      throw DesignError("width mismatch in '" + node.name + "' (latch next)", node_line[id]);
    }
  }

  for (const Memory& mem : d.memories_) {
    auto expect = [&](NodeId sig, unsigned width, const char* what) {
      if (d.nodes_[sig].width != width) {
        throw DesignError("width mismatch in memory '" + mem.name + "' " + what + " '" +
                          d.nodes_[sig].name + "'");
      }
    };
    for (const auto& wp : mem.wports) {
      expect(wp.addr, mem.aw, "address");
      expect(wp.data, mem.dw, "write data");
      expect(wp.en, 1, "enable");
    }
    for (const auto& rp : mem.rports) {
      expect(rp.addr, mem.aw, "address");
      expect(rp.en, 1, "enable");
    }
    for (std::size_t a = 0; a < mem.wports.size(); ++a) {
      for (std::size_t b = a + 1; b < mem.wports.size(); ++b) {
        if (mem.wports[a].en == mem.wports[b].en && mem.wports[a].addr == mem.wports[b].addr) {
          throw DesignError("write ports " + std::to_string(a) + " and " + std::to_string(b) +
                            " of memory '" + mem.name + "' always race");
        }
      }
    }
  }

  std::unordered_set<std::string> prop_names;
  for (const auto& pp : properties_) {
    if (!prop_names.insert(pp.name).second) {
      throw DesignError("duplicate property '" + pp.name + "'", pp.line);
    }
    NodeId sig = resolve(pp.signal, pp.name, pp.line);
    if (d.nodes_[sig].width != 1) {
      throw DesignError("property '" + pp.name + "' must be a width-1 signal", pp.line);
    }
    d.properties_.push_back({pp.name, sig});
  }
  return d;
}

// ---------------------------------------------------------------- Parser

namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::uint64_t number(std::string_view tok, int line) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw DesignError("syntax error: expected number, got '" + std::string(tok) + "'", line);
  }
  return v;
}

unsigned small(std::string_view tok, int line) {
  std::uint64_t v = number(tok, line);
  if (v > 1u << 20) throw DesignError("syntax error: value too large", line);
  return static_cast<unsigned>(v);
}

void expect_keyword(std::string_view tok, std::string_view kw, int line) {
  if (tok != kw) {
    throw DesignError("syntax error: expected '" + std::string(kw) + "', got '" +
                          std::string(tok) + "'",
                      line);
  }
}

std::optional<Op> gate_op(std::string_view tok) {
  if (tok == "and") return Op::And;
  if (tok == "or") return Op::Or;
  if (tok == "not") return Op::Not;
  if (tok == "xor") return Op::Xor;
  if (tok == "mux") return Op::Mux;
  if (tok == "eq") return Op::Eq;
  if (tok == "ltu") return Op::Ltu;
  if (tok == "add") return Op::Add;
  if (tok == "sub") return Op::Sub;
  if (tok == "concat") return Op::Concat;
  return std::nullopt;
}

}  // namespace

Design parse_design(std::string_view text) {
  DesignBuilder b;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto t = tokenize(line);
    if (t.empty()) {
      if (end == text.size()) break;
      continue;
    }
    b.set_line(line_no);
    auto need = [&](std::size_t n) {
      if (t.size() != n) {
        throw DesignError("syntax error: '" + std::string(t[0]) + "' expects " +
                              std::to_string(n - 1) + " fields",
                          line_no);
      }
    };
    std::string_view kw = t[0];
    if (kw == "design") {
      need(2);
      b.set_name(std::string(t[1]));
    } else if (kw == "input") {
      need(3);
      b.add_input(std::string(t[1]), small(t[2], line_no));
    } else if (kw == "const") {
      need(4);
      b.add_const(std::string(t[1]), small(t[2], line_no), number(t[3], line_no));
    } else if (kw == "latch") {
      need(7);
      expect_keyword(t[3], "init", line_no);
      expect_keyword(t[5], "next", line_no);
      std::optional<std::uint64_t> init;
      if (t[4] != "x") init = number(t[4], line_no);
      b.add_latch(std::string(t[1]), small(t[2], line_no), init, std::string(t[6]));
    } else if (kw == "slice") {
      need(5);
      b.add_slice(std::string(t[3]), std::string(t[4]), small(t[1], line_no),
                  small(t[2], line_no));
    } else if (auto op = gate_op(kw)) {
      if (t.size() < 3) throw DesignError("syntax error: gate without operands", line_no);
      std::vector<std::string> operands;
      for (std::size_t i = 2; i < t.size(); ++i) operands.emplace_back(t[i]);
      b.add_gate(*op, std::string(t[1]), std::move(operands));
    } else if (kw == "memory") {
      need(12);
      expect_keyword(t[2], "aw", line_no);
      expect_keyword(t[4], "dw", line_no);
      expect_keyword(t[6], "wports", line_no);
      expect_keyword(t[8], "rports", line_no);
      expect_keyword(t[10], "init", line_no);
      MemInit init;
      if (t[11] == "zero") {
        init = MemInit::Zero;
      } else if (t[11] == "arbitrary") {
        init = MemInit::Arbitrary;
      } else {
        throw DesignError("syntax error: memory init must be zero or arbitrary", line_no);
      }
      b.add_memory(std::string(t[1]), small(t[3], line_no), small(t[5], line_no),
                   small(t[7], line_no), small(t[9], line_no), init);
    } else if (kw == "wport") {
      need(9);
      expect_keyword(t[3], "addr", line_no);
      expect_keyword(t[5], "data", line_no);
      expect_keyword(t[7], "en", line_no);
      b.add_wport(std::string(t[1]), small(t[2], line_no), std::string(t[4]),
                  std::string(t[6]), std::string(t[8]));
    } else if (kw == "rport") {
      need(9);
      expect_keyword(t[3], "addr", line_no);
      expect_keyword(t[5], "en", line_no);
      expect_keyword(t[7], "out", line_no);
      b.add_rport(std::string(t[1]), small(t[2], line_no), std::string(t[4]),
                  std::string(t[6]), std::string(t[8]));
    } else if (kw == "property") {
      need(3);
      b.add_property(std::string(t[1]), std::string(t[2]));
    } else {
      throw DesignError("syntax error: unknown statement '" + std::string(kw) + "'", line_no);
    }
    if (end == text.size()) break;
  }
  return b.build();
}

Design parse_design_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DesignError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_design(ss.str());
}

// --------------------------------------------------------------- Printer

void copy_node(DesignBuilder& b, const Design& d, NodeId id) {
  const Node& n = d.node(id);
  switch (n.op) {
    case Op::Input:
      b.add_input(n.name, n.width);
      break;
    case Op::Const:
      b.add_const(n.name, n.width, n.value);
      break;
    case Op::Latch:
      b.add_latch(n.name, n.width, n.init, d.node(n.operands[0]).name);
      break;
    case Op::Slice:
      b.add_slice(n.name, d.node(n.operands[0]).name, n.hi, n.lo);
      break;
    case Op::MemRead:
      throw std::logic_error("copy_node: read-port output '" + n.name + "'");
    default: {
      std::vector<std::string> ops;
      for (NodeId o : n.operands) ops.push_back(d.node(o).name);
      b.add_gate(n.op, n.name, std::move(ops));
      break;
    }
  }
}

std::string print_design(const Design& d) {
  std::ostringstream os;
  os << "design " << d.name() << '\n';
  auto name = [&d](NodeId id) -> const std::string& { return d.node(id).name; };
  for (const Node& n : d.nodes()) {
    switch (n.op) {
      case Op::MemRead:
        break;
      case Op::Input:
        os << "input " << n.name << ' ' << n.width << '\n';
        break;
      case Op::Const:
        os << "const " << n.name << ' ' << n.width << ' ' << n.value << '\n';
        break;
      case Op::Latch:
        os << "latch " << n.name << ' ' << n.width << " init ";
        if (n.init) {
          os << *n.init;
        } else {
          os << 'x';
        }
        os << " next " << name(n.operands[0]) << '\n';
        break;
      case Op::Slice:
        os << "slice " << n.hi << ' ' << n.lo << ' ' << n.name << ' ' << name(n.operands[0])
           << '\n';
        break;
      default:
        os << op_name(n.op) << ' ' << n.name;
        for (NodeId o : n.operands) os << ' ' << name(o);
        os << '\n';
        break;
    }
  }
  for (const Memory& m : d.memories()) {
    os << "memory " << m.name << " aw " << m.aw << " dw " << m.dw << " wports "
       << m.wports.size() << " rports " << m.rports.size() << " init "
       << (m.init == MemInit::Zero ? "zero" : "arbitrary") << '\n';
    for (std::size_t p = 0; p < m.wports.size(); ++p) {
      const auto& wp = m.wports[p];
      os << "wport " << m.name << ' ' << p << " addr " << name(wp.addr) << " data "
         << name(wp.data) << " en " << name(wp.en) << '\n';
    }
    for (std::size_t p = 0; p < m.rports.size(); ++p) {
      const auto& rp = m.rports[p];
      os << "rport " << m.name << ' ' << p << " addr " << name(rp.addr) << " en "
         << name(rp.en) << " out " << name(rp.out) << '\n';
    }
  }
  for (const Property& p : d.properties()) {
    os << "property " << p.name << ' ' << name(p.signal) << '\n';
  }
  return os.str();
}

bool structurally_equal(const Design& a, const Design& b) {
  if (a.name() != b.name() || a.nodes().size() != b.nodes().size() ||
      a.memories().size() != b.memories().size() ||
      a.properties().size() != b.properties().size()) {
    return false;
  }
  auto same_ref = [&](NodeId x, NodeId y) { return a.node(x).name == b.node(y).name; };
  for (const Node& na : a.nodes()) {
    auto idb = b.find(na.name);
    if (!idb) return false;
    const Node& nb = b.node(*idb);
    if (na.op != nb.op || na.width != nb.width || na.operands.size() != nb.operands.size() ||
        na.value != nb.value || na.hi != nb.hi || na.lo != nb.lo || na.init != nb.init) {
      return false;
    }
    for (std::size_t i = 0; i < na.operands.size(); ++i) {
      if (!same_ref(na.operands[i], nb.operands[i])) return false;
    }
    if (na.op == Op::MemRead) {
      if (a.memories()[na.mem].name != b.memories()[nb.mem].name || na.port != nb.port) {
        return false;
      }
    }
  }
  for (const Memory& ma : a.memories()) {
    auto mi = b.memory_index(ma.name);
    if (!mi) return false;
    const Memory& mb = b.memories()[*mi];
    if (ma.aw != mb.aw || ma.dw != mb.dw || ma.init != mb.init ||
        ma.wports.size() != mb.wports.size() || ma.rports.size() != mb.rports.size()) {
      return false;
    }
    for (std::size_t p = 0; p < ma.wports.size(); ++p) {
      if (!same_ref(ma.wports[p].addr, mb.wports[p].addr) ||
          !same_ref(ma.wports[p].data, mb.wports[p].data) ||
          !same_ref(ma.wports[p].en, mb.wports[p].en)) {
        return false;
      }
    }
    for (std::size_t p = 0; p < ma.rports.size(); ++p) {
      if (!same_ref(ma.rports[p].addr, mb.rports[p].addr) ||
          !same_ref(ma.rports[p].en, mb.rports[p].en) ||
          !same_ref(ma.rports[p].out, mb.rports[p].out)) {
        return false;
      }
    }
  }
  for (std::size_t i = 0; i < a.properties().size(); ++i) {
    const auto& pa = a.properties()[i];
    const auto& pb = b.properties()[i];
    if (pa.name != pb.name || !same_ref(pa.signal, pb.signal)) return false;
  }
  return true;
}

}  // namespace emmbmc
