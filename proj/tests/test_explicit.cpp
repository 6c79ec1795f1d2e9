#include <random>

#include "doctest.h"
#include "emmbmc/eval.hpp"
#include "emmbmc/explicit_model.hpp"
#include "emmbmc/memory.hpp"
#include "helpers.hpp"

using namespace emmbmc;

namespace {

struct Step {
  bool we = false, re = false;
  std::uint64_t wa = 0, wd = 0, ra = 0;
};

// Runs the expanded ram design over `steps` and returns the read data of
// every enabled read, alongside the memory simulator's answer.
std::vector<std::pair<std::uint64_t, std::uint64_t>> run_both(const ExpandedDesign& x,
                                                              const std::vector<Step>& steps,
                                                              unsigned aw, unsigned dw) {
  const Design& d = x.design;
  Simulator sim(d);
  MemTrace t;
  std::vector<std::uint64_t> got;
  for (const Step& s : steps) {
    std::vector<std::uint64_t> in(d.nodes().size(), 0);
    in[d.id_of("we")] = s.we;
    in[d.id_of("wa")] = s.wa;
    in[d.id_of("wd")] = s.wd;
    in[d.id_of("re")] = s.re;
    in[d.id_of("ra")] = s.ra;
    const auto& v = sim.step(in);
    got.push_back(v[d.id_of("rd")]);
    t.frames.push_back(MemFrame{{WriteEvent{s.we, s.wa, s.wd}}, {ReadEvent{s.re, s.ra, std::nullopt}}});
  }
  const auto r = simulate_memory({aw, dw, 1, 1, MemInit::Zero}, t);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (std::size_t k = 0; k < steps.size(); ++k) {
    if (steps[k].re) out.emplace_back(got[k], *r.trace.frames[k].reads[0].data);
  }
  return out;
}

}  // namespace

TEST_CASE("expand_memory: one latch word per address") {
  const Design d = parse_design(testutil::ram_design(2, 3));
  const ExpandedDesign x = expand_memory(d);
  CHECK(x.design.memories().empty());
  REQUIRE(x.memories.size() == 1);
  CHECK(x.memories[0].words.size() == 4);
  for (NodeId w : x.memories[0].words) {
    CHECK(x.design.node(w).op == Op::Latch);
    CHECK(x.design.node(w).width == 3);
    CHECK(x.design.node(w).init == std::optional<std::uint64_t>(0));
  }
  CHECK(x.design.latches().size() == 4);

  const ExpandedDesign a = expand_memory(parse_design(testutil::ram_design(2, 3, "arbitrary")));
  for (NodeId w : a.memories[0].words) CHECK_FALSE(a.design.node(w).init.has_value());
}

TEST_CASE("expand_memory: read data matches the forwarding rule") {
  const unsigned aw = 2, dw = 2;
  const ExpandedDesign x = expand_memory(parse_design(testutil::ram_design(aw, dw)));
  SUBCASE("every single write followed by every read, exhaustive") {
    int cases = 0;
    for (unsigned we = 0; we < 2; ++we) {
      for (unsigned wa = 0; wa < 4; ++wa) {
        for (unsigned wd = 0; wd < 4; ++wd) {
          for (unsigned ra = 0; ra < 4; ++ra) {
            const std::vector<Step> steps{{we != 0, true, wa, wd, ra}, {false, true, 0, 0, ra}};
            for (auto [got, want] : run_both(x, steps, aw, dw)) CHECK(got == want);
            ++cases;
          }
        }
      }
    }
    CHECK(cases == 128);
  }
  SUBCASE("random sequences") {
    std::mt19937_64 rng(9);
    for (int iter = 0; iter < 2000; ++iter) {
      std::vector<Step> steps(1 + rng() % 8);
      for (Step& s : steps) s = {rng() % 2 == 0, rng() % 3 != 0, rng() % 4, rng() % 4, rng() % 4};
      for (auto [got, want] : run_both(x, steps, aw, dw)) CHECK(got == want);
    }
  }
}

TEST_CASE("expand_memory: disabled reads") {
  const Design d = parse_design(testutil::ram_design(2, 2));
  const ExpandedDesign free_rd = expand_memory(d);
  CHECK(free_rd.design.node(free_rd.design.id_of("rd__re0")).op == Op::Input);
  const ExpandedDesign zero_rd = expand_memory(d, kDefaultExplicitCap, true);
  CHECK(zero_rd.design.node(zero_rd.design.id_of("rd__re0")).op == Op::Const);
}

TEST_CASE("expand_memory: address width above the cap") {
  const Design d = parse_design(testutil::ram_design(13, 2));
  CHECK_THROWS_AS(expand_memory(d), CapExceeded);
  CHECK_NOTHROW(expand_memory(parse_design(testutil::ram_design(4, 2)), 4));
  CHECK_THROWS_AS(expand_memory(parse_design(testutil::ram_design(5, 2)), 4), CapExceeded);
}
