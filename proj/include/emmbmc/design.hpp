#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace emmbmc {

// Any malformed design: syntax, widths, references, cycles.
class DesignError : public std::runtime_error {
 public:
  DesignError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

inline constexpr unsigned kMaxWidth = 64;

using NodeId = std::uint32_t;

enum class Op : std::uint8_t {
  Input,
  Const,
  Latch,
  And,
  Or,
  Not,
  Xor,
  Mux,
  Eq,
  Ltu,
  Add,
  Sub,
  Slice,
  Concat,
  MemRead,  // read-port data output, defined by a memory
};

std::string_view op_name(Op op);

struct Node {
  std::string name;
  Op op = Op::Input;
  unsigned width = 1;
  /// Gate operands in order. Mux: {sel, then, else}. Latch: {next}.
  std::vector<NodeId> operands;
  std::uint64_t value = 0;               // Const
  unsigned hi = 0, lo = 0;               // Slice
  std::optional<std::uint64_t> init;     // Latch; nullopt = unknown (x)
  std::uint32_t mem = 0, port = 0;       // MemRead
};

struct WritePort {
  NodeId addr = 0, data = 0, en = 0;
};

struct ReadPort {
  NodeId addr = 0, en = 0, out = 0;
};

enum class MemInit : std::uint8_t { Zero, Arbitrary };

struct Memory {
  std::string name;
  unsigned aw = 1, dw = 1;
  MemInit init = MemInit::Zero;
  std::vector<WritePort> wports;
  std::vector<ReadPort> rports;
};

struct Property {
  std::string name;
  NodeId signal = 0;
};

// Validated word-level design. Immutable once built.
class Design {
 public:
  const std::string& name() const { return name_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(NodeId id) const { return nodes_.at(id); }
  const std::vector<Memory>& memories() const { return memories_; }
  const std::vector<Property>& properties() const { return properties_; }

  std::optional<NodeId> find(std::string_view name) const;
  NodeId id_of(std::string_view name) const;
  const Property& property(std::string_view name) const;
  std::optional<std::size_t> memory_index(std::string_view name) const;

  /// All nodes ordered so every combinational dependency precedes its user.
  /// Latches, inputs and constants come first; a read-port output follows
  /// its port's address and enable.
  const std::vector<NodeId>& topo_order() const { return topo_; }

  std::vector<NodeId> latches() const;
  std::vector<NodeId> inputs() const;

 private:
  friend class DesignBuilder;
  std::string name_;
  std::vector<Node> nodes_;
  std::vector<Memory> memories_;
  std::vector<Property> properties_;
  std::unordered_map<std::string, NodeId> by_name_;
  std::vector<NodeId> topo_;
};

// Accumulates statements with by-name references, then resolves and
// validates them. Forward references are allowed.
class DesignBuilder {
 public:
  explicit DesignBuilder(std::string name = "design") : name_(std::move(name)) {}

  void set_name(std::string name) { name_ = std::move(name); }
  void set_line(int line) { line_ = line; }

  void add_input(const std::string& id, unsigned width);
  void add_const(const std::string& id, unsigned width, std::uint64_t value);
  void add_latch(const std::string& id, unsigned width, std::optional<std::uint64_t> init,
                 const std::string& next);
  void add_gate(Op op, const std::string& id, std::vector<std::string> operands);
  void add_slice(const std::string& id, const std::string& operand, unsigned hi, unsigned lo);
  void add_memory(const std::string& id, unsigned aw, unsigned dw, unsigned wports,
                  unsigned rports, MemInit init);
  void add_wport(const std::string& mem, unsigned port, const std::string& addr,
                 const std::string& data, const std::string& en);
  void add_rport(const std::string& mem, unsigned port, const std::string& addr,
                 const std::string& en, const std::string& out);
  void add_property(const std::string& name, const std::string& signal);

  Design build() const;

 private:
  struct PendingNode {
    Node node;
    std::vector<std::string> refs;
    int line = 0;
  };
  struct PendingPort {
    std::string mem;
    unsigned port;
    bool write;
    std::string addr, data, en, out;
    int line = 0;
  };
  struct PendingMemory {
    Memory mem;
    unsigned wports, rports;
    int line = 0;
  };
  struct PendingProperty {
    std::string name, signal;
    int line = 0;
  };

  void declare(PendingNode pending);

  std::string name_;
  int line_ = 0;
  std::vector<PendingNode> nodes_;
  std::vector<PendingMemory> memories_;
  std::vector<PendingPort> ports_;
  std::vector<PendingProperty> properties_;
};

/// Re-declares a non-memory node of `design` in `builder` under its name.
void copy_node(DesignBuilder& builder, const Design& design, NodeId id);

Design parse_design(std::string_view text);
Design parse_design_file(const std::string& path);

/// Prints the design in the text IR; parse_design(print_design(d)) is
/// structurally identical to d.
std::string print_design(const Design& design);

bool structurally_equal(const Design& a, const Design& b);

std::uint64_t width_mask(unsigned width);

}  // namespace emmbmc
