#include <random>

#include "doctest.h"
#include "emmbmc/bitblast.hpp"
#include "emmbmc/design.hpp"
#include "emmbmc/eval.hpp"
#include "emmbmc/generators.hpp"
#include "helpers.hpp"

using namespace emmbmc;
using testutil::mask;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_design(text);
  } catch (const DesignError& e) {
    return e.what();
  }
  return {};
}

// Word value of `node` read back from bit-level evaluation.
std::uint64_t word_of(const BitNetlist& net, const std::vector<bool>& val, NodeId node) {
  std::uint64_t w = 0;
  const auto& bits = net.bits[node];
  for (std::size_t b = 0; b < bits.size(); ++b) {
    if (val[bits[b].var()] != bits[b].complemented()) w |= 1ull << b;
  }
  return w;
}

// Compares evaluate_frame against the bit-blasted netlist for one valuation
// of inputs, latches and read data.
void compare_levels(const Design& d, const BitNetlist& net, std::mt19937_64& rng) {
  std::vector<std::uint64_t> leaves(d.nodes().size(), 0);
  std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> reads;
  for (NodeId id = 0; id < d.nodes().size(); ++id) {
    const Node& n = d.node(id);
    if (n.op == Op::Input || n.op == Op::Latch) leaves[id] = rng() & mask(n.width);
    if (n.op == Op::MemRead) reads[{n.mem, n.port}] = rng() & mask(n.width);
  }
  const auto words = evaluate_frame(d, leaves, [&](std::size_t m, std::size_t p, bool, std::uint64_t) {
    return reads.at({m, p});
  });
  std::vector<bool> leaf_vals(net.aig.nodes().size(), false);
  for (std::size_t v = 1; v < net.aig.nodes().size(); ++v) {
    const AigNode& an = net.aig.nodes()[v];
    if (an.kind == AigKind::And || an.kind == AigKind::Const) continue;
    const Node& n = d.node(an.origin);
    const std::uint64_t w = n.op == Op::MemRead ? reads.at({n.mem, n.port}) : leaves[an.origin];
    leaf_vals[v] = (w >> an.bit) & 1u;
  }
  const auto val = evaluate_aig(net.aig, leaf_vals);
  for (NodeId id = 0; id < d.nodes().size(); ++id) {
    INFO("node " << d.node(id).name);
    CHECK(word_of(net, val, id) == words[id]);
  }
}

}  // namespace

TEST_CASE("parse: minimal toggle design") {
  const Design d = parse_design(testutil::kToggle);
  CHECK(d.name() == "toggle");
  CHECK(d.latches().size() == 1);
  CHECK(d.inputs().size() == 1);
  CHECK(d.properties().size() == 1);
  CHECK(d.node(d.id_of("t")).init == std::optional<std::uint64_t>(0));
}

TEST_CASE("parse: every operator and its widths") {
  const Design d = parse_design(
      "design ops\n"
      "input a 3\ninput b 3\ninput s 1\n"
      "const k 4 9\n"
      "latch l 2 init x next sl\n"
      "and g_and a b\nor g_or a b a\nxor g_xor a b\nnot g_not a\nmux g_mux s a b\n"
      "eq g_eq a b\nltu g_lt a b\nadd g_add a b\nsub g_sub a b\n"
      "slice 2 1 sl a\nconcat g_cat k a\n"
      "property p g_eq\n");
  CHECK(d.node(d.id_of("g_eq")).width == 1);
  CHECK(d.node(d.id_of("g_lt")).width == 1);
  CHECK(d.node(d.id_of("g_cat")).width == 7);
  CHECK(d.node(d.id_of("sl")).width == 2);
  CHECK_FALSE(d.node(d.id_of("l")).init.has_value());
  CHECK(d.node(d.id_of("g_or")).operands.size() == 3);
}

TEST_CASE("parse: errors") {
  const std::string w = error_of("design e\ninput a 3\ninput b 4\neq bad a b\nproperty p bad\n");
  CHECK(w.find("width mismatch") != std::string::npos);
  CHECK(w.find("'bad'") != std::string::npos);
  CHECK(w.find("line 4") != std::string::npos);

  CHECK(error_of("design e\ninput a 1\nfrobnicate x a\n").find("line 3") != std::string::npos);
  CHECK(error_of("design e\ninput a\n").find("line 2") != std::string::npos);
  CHECK(error_of("design e\nnot x y\nproperty p x\n").find("dangling") != std::string::npos);
  CHECK(error_of("design e\ninput a 1\ninput a 1\n").find("duplicate") != std::string::npos);
  CHECK(error_of("design e\nnot x y\nnot y x\nproperty p x\n").find("cyclic") != std::string::npos);
  CHECK(error_of("design e\ninput a 2\nproperty p a\n").find("width-1") != std::string::npos);
  CHECK(error_of("design e\ninput a 65\n").find("width") != std::string::npos);
  CHECK(error_of("design e\ninput a 2\nslice 3 0 s a\n").find("slice") != std::string::npos);
  // Latch feedback is not a combinational cycle.
  CHECK(error_of("design e\nlatch l 1 init 0 next n\nnot n l\nproperty p n\n").empty());
  // Read data is defined by its memory, not by a gate.
  CHECK_FALSE(error_of("design e\ninput a 1\nmemory m aw 1 dw 1 wports 1 rports 1 init zero\n"
                       "wport m 0 addr a data a en a\nrport m 0 addr a en a out a\n")
                  .empty());
}

TEST_CASE("parse: quicksort generator output") {
  const Design d = parse_design(gen_quicksort({}));
  REQUIRE(d.memories().size() == 2);
  CHECK(d.memories()[0].aw == 10);
  CHECK(d.memories()[0].dw == 32);
  CHECK(d.memories()[1].aw == 10);
  CHECK(d.memories()[1].dw == 24);
  for (const Memory& m : d.memories()) {
    CHECK(m.wports.size() == 1);
    CHECK(m.rports.size() == 1);
  }
}

TEST_CASE("round trip: print then parse is structurally identical") {
  std::vector<std::string> sources = {testutil::kToggle, testutil::kCounter2, gen_quicksort({}),
                                      gen_stack(3, 4), gen_fifo(3, 4), gen_unwritten(),
                                      gen_gated(4, 8)};
  for (std::uint64_t s = 1; s <= 40; ++s) sources.push_back(gen_random(s));
  for (const std::string& src : sources) {
    const Design a = parse_design(src);
    const std::string printed = print_design(a);
    const Design b = parse_design(printed);
    CHECK(structurally_equal(a, b));
    CHECK(print_design(b) == printed);
  }
  CHECK_FALSE(structurally_equal(parse_design(testutil::kToggle), parse_design(testutil::kFrozen)));
}

TEST_CASE("bit blast: EQ over 2-bit operands, exhaustive") {
  const Design d = parse_design("design e\ninput a 2\ninput b 2\neq e a b\nproperty p e\n");
  const BitNetlist net = bit_blast(d);
  const NodeId a = d.id_of("a"), b = d.id_of("b"), e = d.id_of("e");
  REQUIRE(net.bits[e].size() == 1);
  int rows = 0;
  for (unsigned x = 0; x < 4; ++x) {
    for (unsigned y = 0; y < 4; ++y) {
      std::vector<bool> leaves(net.aig.nodes().size(), false);
      for (unsigned k = 0; k < 2; ++k) {
        leaves[net.bits[a][k].var()] = (x >> k) & 1u;
        leaves[net.bits[b][k].var()] = (y >> k) & 1u;
      }
      CHECK(word_of(net, evaluate_aig(net.aig, leaves), e) == (x == y ? 1u : 0u));
      ++rows;
    }
  }
  CHECK(rows == 16);
}

TEST_CASE("bit blast: NOT is a single inversion") {
  const Design d = parse_design("design n\ninput a 1\nnot n a\nproperty p n\n");
  const BitNetlist net = bit_blast(d);
  CHECK(net.aig.num_ands() == 0);
  CHECK(net.bits[d.id_of("n")][0] == ~net.bits[d.id_of("a")][0]);
}

TEST_CASE("bit blast: ADD and SUB over 3 bits wrap modulo 8, exhaustive") {
  const Design d = parse_design(
      "design add\ninput a 3\ninput b 3\nadd s a b\nsub t a b\nltu l a b\n"
      "eq e s t\nproperty p e\n");
  const BitNetlist net = bit_blast(d);
  for (unsigned x = 0; x < 8; ++x) {
    for (unsigned y = 0; y < 8; ++y) {
      std::vector<bool> leaves(net.aig.nodes().size(), false);
      for (unsigned k = 0; k < 3; ++k) {
        leaves[net.bits[d.id_of("a")][k].var()] = (x >> k) & 1u;
        leaves[net.bits[d.id_of("b")][k].var()] = (y >> k) & 1u;
      }
      const auto val = evaluate_aig(net.aig, leaves);
      CHECK(word_of(net, val, d.id_of("s")) == (x + y) % 8);
      CHECK(word_of(net, val, d.id_of("t")) == (x + 8 - y) % 8);
      CHECK(word_of(net, val, d.id_of("l")) == (x < y ? 1u : 0u));
    }
  }
}

TEST_CASE("bit blast: agrees with word-level evaluation") {
  std::mt19937_64 rng(2024);
  SUBCASE("all operators, exhaustive over small widths") {
    const Design d = parse_design(
        "design all\ninput a 2\ninput b 2\ninput s 1\nconst k 2 2\n"
        "latch l 2 init 0 next g_mux\n"
        "and g_and a b\nor g_or a b l\nxor g_xor a k\nnot g_not b\nmux g_mux s a l\n"
        "eq g_eq a b\nltu g_lt l a\nadd g_add a l\nsub g_sub k b\n"
        "slice 1 1 g_sl a\nconcat g_cat g_sl b s\nproperty p g_eq\n");
    const BitNetlist net = bit_blast(d);
    for (unsigned v = 0; v < 128; ++v) {
      std::vector<std::uint64_t> leaves(d.nodes().size(), 0);
      leaves[d.id_of("a")] = v & 3;
      leaves[d.id_of("b")] = (v >> 2) & 3;
      leaves[d.id_of("s")] = (v >> 4) & 1;
      leaves[d.id_of("l")] = (v >> 5) & 3;
      const auto words = evaluate_frame(d, leaves, {});
      std::vector<bool> lv(net.aig.nodes().size(), false);
      for (std::size_t x = 1; x < net.aig.nodes().size(); ++x) {
        const AigNode& an = net.aig.nodes()[x];
        if (an.kind == AigKind::Input || an.kind == AigKind::Latch) {
          lv[x] = (leaves[an.origin] >> an.bit) & 1u;
        }
      }
      const auto val = evaluate_aig(net.aig, lv);
      for (NodeId id = 0; id < d.nodes().size(); ++id) CHECK(word_of(net, val, id) == words[id]);
    }
  }
  SUBCASE("random designs, random valuations") {
    int cases = 0;
    for (std::uint64_t s = 1; s <= 50; ++s) {
      RandomCaps caps;
      caps.max_aw = 6;
      caps.max_dw = 8;
      const Design d = parse_design(gen_random(s, caps));
      const BitNetlist net = bit_blast(d);
      for (int r = 0; r < 200; ++r, ++cases) compare_levels(d, net, rng);
    }
    CHECK(cases == 10000);
  }
}
