#include <functional>
#include <random>
#include <set>

#include "doctest.h"
#include "emmbmc/bitblast.hpp"
#include "emmbmc/eval.hpp"
#include "emmbmc/generators.hpp"
#include "emmbmc/unroller.hpp"
#include "helpers.hpp"

using namespace emmbmc;
using sat::Status;

namespace {

struct Fixture {
  Design d;
  BitNetlist net;
  ConstraintStore store;
  Unroller u;
  Fixture(const std::string& text, const std::string& prop = "p")
      : d(parse_design(text)),
        net(bit_blast(d)),
        u(d, net, store, d.property(prop).signal) {}
  Status solve(std::vector<Lit> a) { return store.solve(a).status; }
  void unroll_to(std::size_t k) {
    while (u.depth() <= k) u.unroll();
  }
};

// Random latch-only design: up to 3 one-bit latches driven by one input.
std::string random_latch_design(std::mt19937& rng) {
  const unsigned n = 1 + rng() % 3;
  std::string s = "design r\ninput in 1\n";
  std::vector<std::string> sig{"in"};
  for (unsigned i = 0; i < n; ++i) {
    const unsigned init = rng() % 3;
    s += "latch l" + std::to_string(i) + " 1 init " + (init == 2 ? "x" : std::to_string(init)) +
         " next n" + std::to_string(i) + "\n";
    sig.push_back("l" + std::to_string(i));
  }
  const char* ops[] = {"and", "or", "xor"};
  for (unsigned i = 0; i < n; ++i) {
    const std::string a = sig[rng() % sig.size()], b = sig[rng() % sig.size()];
    const std::string g = "g" + std::to_string(i);
    s += std::string(ops[rng() % 3]) + " " + g + " " + a + " " + b + "\n";
    s += (rng() % 2 ? "not n" + std::to_string(i) + " " + g : "or n" + std::to_string(i) + " " + g + " " + g) + "\n";
  }
  // The property reads every latch so all of them form the state vector.
  s += "or all";
  for (unsigned i = 0; i < n; ++i) s += " l" + std::to_string(i);
  s += n == 1 ? " l0\n" : "\n";
  s += "not p all\nproperty p p\n";
  return s;
}

// Whether a path of `len` transitions through pairwise distinct states
// starts in an initial state.
bool simple_path_exists(const Design& d, std::size_t len) {
  const auto latches = d.latches();
  const std::size_t L = latches.size();
  const NodeId in = d.id_of("in");
  auto step = [&](unsigned state, unsigned input) {
    std::vector<std::uint64_t> leaves(d.nodes().size(), 0);
    for (std::size_t i = 0; i < L; ++i) leaves[latches[i]] = (state >> i) & 1u;
    leaves[in] = input;
    const auto v = evaluate_frame(d, leaves, {});
    unsigned next = 0;
    for (std::size_t i = 0; i < L; ++i) {
      next |= static_cast<unsigned>(v[d.node(latches[i]).operands[0]] & 1u) << i;
    }
    return next;
  };
  std::function<bool(unsigned, std::set<unsigned>&, std::size_t)> dfs =
      [&](unsigned s, std::set<unsigned>& seen, std::size_t left) {
        if (left == 0) return true;
        for (unsigned x = 0; x < 2; ++x) {
          const unsigned t = step(s, x);
          if (seen.count(t)) continue;
          seen.insert(t);
          const bool ok = dfs(t, seen, left - 1);
          seen.erase(t);
          if (ok) return true;
        }
        return false;
      };
  for (unsigned s = 0; s < (1u << L); ++s) {
    bool init_ok = true;
    for (std::size_t i = 0; i < L; ++i) {
      const auto& init = d.node(latches[i]).init;
      if (init && *init != ((s >> i) & 1u)) init_ok = false;
    }
    if (!init_ok) continue;
    std::set<unsigned> seen{s};
    if (dfs(s, seen, len)) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("unroller: toggle latch") {
  Fixture f(testutil::kToggle);
  f.unroll_to(1);
  CHECK(f.solve({f.u.init(), ~f.u.property(0)}) == Status::Unsat);
  REQUIRE(f.solve({f.u.init(), ~f.u.property(1)}) == Status::Sat);
  CHECK(f.u.value(1, f.d.id_of("t")) == 1);
  CHECK(f.u.value(0, f.d.id_of("t")) == 0);
}

TEST_CASE("unroller: loop-free paths") {
  SUBCASE("frozen latch has no loop-free path of length 1") {
    Fixture f(testutil::kFrozen);
    f.unroll_to(1);
    CHECK(f.solve({f.u.init(), f.u.loop_free(0)}) == Status::Sat);
    CHECK(f.solve({f.u.init(), f.u.loop_free(1)}) == Status::Unsat);
  }
  SUBCASE("2-bit counter visits four distinct states") {
    Fixture f(testutil::kCounter2);
    f.unroll_to(4);
    CHECK(f.solve({f.u.init(), f.u.loop_free(3)}) == Status::Sat);
    CHECK(f.solve({f.u.init(), f.u.loop_free(4)}) == Status::Unsat);
  }
  SUBCASE("LFP^0 is constant true") {
    Fixture f(testutil::kCounter2);
    f.unroll_to(0);
    CHECK(f.u.loop_free(0) == f.store.true_lit());
    CHECK(f.u.cp(0) == f.store.true_lit());
  }
}

TEST_CASE("unroller: CP accumulates earlier properties") {
  Fixture f(testutil::kCounter2);
  f.unroll_to(4);
  for (std::size_t i = 0; i < 4; ++i) {
    // CP^{i+1} <-> CP^i & P^i in every model.
    CHECK(f.solve({f.u.cp(i + 1), ~f.u.cp(i)}) == Status::Unsat);
    CHECK(f.solve({f.u.cp(i + 1), ~f.u.property(i)}) == Status::Unsat);
    CHECK(f.solve({~f.u.cp(i + 1), f.u.cp(i), f.u.property(i)}) == Status::Unsat);
  }
}

TEST_CASE("unroller: latch chaining and LFP monotonicity on random designs") {
  std::mt19937 rng(3);
  for (int iter = 0; iter < 40; ++iter) {
    Fixture f(random_latch_design(rng));
    f.unroll_to(4);
    REQUIRE(f.solve({f.u.init()}) == Status::Sat);
    for (std::size_t k = 0; k < 4; ++k) {
      std::vector<std::uint64_t> leaves(f.d.nodes().size(), 0);
      for (NodeId id = 0; id < f.d.nodes().size(); ++id) {
        const Op op = f.d.node(id).op;
        if (op == Op::Latch || op == Op::Input) leaves[id] = f.u.value(k, id);
      }
      const auto v = evaluate_frame(f.d, leaves, {});
      for (NodeId l : f.d.latches()) {
        CHECK(f.u.value(k + 1, l) == v[f.d.node(l).operands[0]]);
      }
    }
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(f.solve({f.u.loop_free(i + 1), ~f.u.loop_free(i)}) == Status::Unsat);
    }
  }
}

TEST_CASE("unroller: loop-freedom matches simple-path enumeration") {
  std::mt19937 rng(17);
  for (int iter = 0; iter < 60; ++iter) {
    Fixture f(random_latch_design(rng));
    f.unroll_to(4);
    for (std::size_t i = 0; i <= 4; ++i) {
      INFO("design " << iter << " length " << i);
      const bool sat = f.solve({f.u.init(), f.u.loop_free(i)}) == Status::Sat;
      CHECK(sat == simple_path_exists(f.d, i));
    }
  }
}

TEST_CASE("cone_latches follows latches and memory ports") {
  const Design d = parse_design(gen_quicksort({}));
  const auto cone = cone_latches(d, d.property("p2").signal);
  std::set<std::string> names;
  for (NodeId id : cone) names.insert(d.node(id).name);
  CHECK(names.count("pc"));
  CHECK(names.count("sp"));

  const Design t = parse_design(
      "design c\ninput i 1\nlatch a 1 init 0 next a\nlatch b 1 init 0 next i\n"
      "not p a\nproperty p p\n");
  const auto c2 = cone_latches(t, t.property("p").signal);
  REQUIRE(c2.size() == 1);
  CHECK(t.node(c2[0]).name == "a");
}
