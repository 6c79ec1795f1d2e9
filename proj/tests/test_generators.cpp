#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "emmbmc/corpus.hpp"
#include "emmbmc/fuzz.hpp"
#include "emmbmc/generators.hpp"
#include "emmbmc/invariant.hpp"
#include "emmbmc/witness.hpp"

using namespace emmbmc;
namespace fs = std::filesystem;

namespace {

std::string replace_once(std::string s, const std::string& from, const std::string& to) {
  const auto at = s.find(from);
  REQUIRE(at != std::string::npos);
  return s.replace(at, from.size(), to);
}

Verdict run(const Design& d, const std::string& prop, std::size_t bound, bool prove,
            EngineKind engine = EngineKind::Emm) {
  CheckOptions o;
  o.bound = bound;
  o.prove = prove;
  o.engine = engine;
  return check(d, prop, o);
}

QuicksortParams small_quicksort(unsigned n) {
  QuicksortParams p;
  p.n = n;
  p.array_aw = p.stack_aw = 4;
  p.array_dw = 4;
  p.stack_dw = 10;
  return p;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("emmbmc_test_" + tag);
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  void write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
  }
};

}  // namespace

TEST_CASE("generators: parameter checks") {
  QuicksortParams p;
  p.n = 1;
  CHECK_THROWS_AS(gen_quicksort(p), GeneratorError);
  p.n = 9;
  CHECK_THROWS_AS(gen_quicksort(p), GeneratorError);
  p = small_quicksort(3);
  p.stack_dw = 9;
  CHECK_THROWS_AS(gen_quicksort(p), GeneratorError);
  CHECK_THROWS_AS(gen_stack(0, 4), GeneratorError);
  CHECK_THROWS_AS(gen_fifo(1, 4, 3), GeneratorError);
  for (unsigned n = 2; n <= 8; ++n) CHECK_NOTHROW(parse_design(gen_quicksort(small_quicksort(n))));
}

TEST_CASE("generators: deterministic output") {
  CHECK(gen_random(5) == gen_random(5));
  CHECK(gen_random(5) != gen_random(6));
  CHECK(gen_quicksort({}) == gen_quicksort({}));
}

TEST_CASE("stack and fifo verdicts agree across engines") {
  struct Case {
    std::string text, prop;
    VerdictKind emm_prove;
  };
  const std::vector<Case> cases{
      {gen_stack(3, 4), "pop_after_push", VerdictKind::Proof},
      {gen_stack(3, 4), "no_underflow", VerdictKind::Proof},
      {gen_stack(3, 4, false), "no_underflow", VerdictKind::CE},
      {gen_fifo(3, 4), "fifo_order", VerdictKind::Proof},
  };
  for (const Case& c : cases) {
    INFO(c.prop);
    const Design d = parse_design(c.text);
    const Verdict e = run(d, c.prop, 60, true);
    CHECK(e.kind == c.emm_prove);
    const std::size_t bound = e.kind == VerdictKind::Proof ? 2 * e.depth : e.depth;
    const Verdict x = run(d, c.prop, bound, false, EngineKind::Explicit);
    if (e.kind == VerdictKind::CE) {
      CHECK(x.kind == VerdictKind::CE);
      CHECK(x.depth == e.depth);
      REQUIRE(e.witness);
      CHECK(replay(d, *e.witness, c.prop).valid);
    } else {
      CHECK(x.kind == VerdictKind::NoCE);
    }
  }
}

TEST_CASE("quicksort: properties and a broken order check") {
  const Design d = parse_design(gen_quicksort(small_quicksort(2)));
  const Verdict done = run(d, "never_done", 30, false);
  REQUIRE(done.kind == VerdictKind::CE);
  CHECK(done.depth == 18);
  REQUIRE(done.witness);
  CHECK(replay(d, *done.witness, "never_done").valid);

  // Checking for descending order instead turns the sorted result into a
  // violation.
  const std::string text =
      replace_once(gen_quicksort(small_quicksort(3)), "ltu t61 rd_a a0", "ltu t61 a0 rd_a");
  const Design broken = parse_design(text);
  const Verdict v = run(broken, "p1", 30, false);
  REQUIRE(v.kind == VerdictKind::CE);
  REQUIRE(v.witness);
  CHECK(replay(broken, *v.witness, "p1").valid);
  const Verdict x = run(broken, "p1", v.depth, false, EngineKind::Explicit);
  CHECK(x.kind == VerdictKind::CE);
  CHECK(x.depth == v.depth);
}

TEST_CASE("fuzz: engines agree and the harness catches a dropped chain") {
  FuzzOptions o;
  o.seed = 3;
  o.count = 40;
  o.exclusivity_ab = true;
  const FuzzReport r = fuzz(o);
  CHECK(r.cases.size() == 40);
  CHECK(r.divergences == 0);
  CHECK(r.exclusivity_divergences == 0);
  CHECK(r.replay_failures == 0);
  CHECK(r.replays >= r.counterexamples);
  CHECK(fuzz(o).text() == r.text());

  FuzzOptions f;
  f.seed = 1;
  f.count = 100;
  f.fault_drop_chaining = true;
  const FuzzReport bad = fuzz(f);
  CHECK(bad.divergences > 0);
  for (const FuzzCase& c : bad.cases) {
    if (!c.agree) CHECK(c.expl.rfind("CE@", 0) == 0);
  }
  CHECK(fuzz_design_seed(1, 0) != fuzz_design_seed(1, 1));
  CHECK(fuzz_design_seed(1, 7) == fuzz_design_seed(1, 7));
}

TEST_CASE("invariant: zero writes let the memory go") {
  const Design d = parse_design(gen_gated(4, 8));
  InvariantOptions o;
  o.bound = 20;
  const InvariantResult r = invariant_check(d, "ram", "acc_zero", o);
  CHECK(r.invariant.kind == VerdictKind::Proof);
  CHECK(r.invariant.method == ProofMethod::BackwardInduction);
  CHECK(r.invariant.depth <= 2);
  REQUIRE(r.rewritten);
  CHECK(r.rewritten->memories().empty());
  REQUIRE(r.target);
  CHECK(r.target->kind == VerdictKind::Proof);

  // The rewrite keeps disabled reads free.
  const Design w = rewrite_zero_reads(d, "ram");
  CHECK(w.node(w.id_of("rd__free")).op == Op::Input);
  CHECK(w.node(w.id_of("rd")).op == Op::Mux);

  // The explicit model agrees that acc stays zero.
  CHECK(run(d, "acc_zero", 6, false, EngineKind::Explicit).kind == VerdictKind::NoCE);

  const Design open =
      parse_design(replace_once(gen_gated(4, 8), "latch gate 1 init 0", "latch gate 1 init 1"));
  const InvariantResult bad = invariant_check(open, "ram", "acc_zero", o);
  CHECK(bad.invariant.kind == VerdictKind::CE);
  CHECK_FALSE(bad.target);
  CHECK(run(open, "acc_zero", 4, false, EngineKind::Explicit).kind == VerdictKind::CE);
}

TEST_CASE("corpus: manifest parsing") {
  const auto e = parse_manifest(
      "# comment\n\na.ir p CE 3\nb.ir q PROOF 60 explicit-infeasible  # trailing\n"
      "c.ir r NO_CE 8\n");
  REQUIRE(e.size() == 3);
  CHECK(e[0].expected == VerdictKind::CE);
  CHECK(e[0].depth == 3);
  CHECK(e[1].explicit_infeasible);
  CHECK(e[1].line == 4);
  CHECK(e[2].expected == VerdictKind::NoCE);
  for (const CorpusEntry& x : e) CHECK(parse_manifest(format_entry(x))[0].file == x.file);
  CHECK(format_entry(e[1]) == "b.ir q PROOF 60 explicit-infeasible");

  auto error_of = [](const std::string& text) {
    try {
      parse_manifest(text);
    } catch (const std::exception& ex) {
      return std::string(ex.what());
    }
    return std::string();
  };
  CHECK(error_of("a.ir p MAYBE 3\n").find("manifest line 1") != std::string::npos);
  CHECK(error_of("\na.ir p CE\n").find("manifest line 2") != std::string::npos);
  CHECK_FALSE(error_of("a.ir p CE x\n").empty());
  CHECK_FALSE(error_of("a.ir p CE 3 sideways\n").empty());
}

TEST_CASE("corpus: entries are checked against both engines") {
  TempDir dir("corpus");
  dir.write("stack.ir", gen_stack(3, 4, false));
  dir.write("ok.ir", gen_stack(3, 4));
  dir.write("manifest.txt",
            "stack.ir no_underflow CE 0\n"
            "stack.ir no_underflow CE 2\n"
            "ok.ir pop_after_push PROOF 60\n"
            "ok.ir pop_after_push NO_CE 6 explicit-infeasible\n");
  const auto res = corpus_verify(dir.path.string());
  REQUIRE(res.size() == 4);
  CHECK(res[0].pass);
  CHECK_FALSE(res[1].pass);
  CHECK(res[1].detail.find("expected CE 2") != std::string::npos);
  CHECK(res[2].pass);
  CHECK(res[2].method != ProofMethod::None);
  CHECK_FALSE(res[2].expl.empty());
  CHECK(res[3].pass);
  CHECK(res[3].expl.empty());

  CorpusOptions tight;
  tight.time_budget_s = 1e-9;
  const EntryResult b = verify_entry(dir.path.string(), parse_manifest("ok.ir pop_after_push PROOF 60\n")[0], tight);
  CHECK_FALSE(b.pass);
  CHECK(b.budget_exhausted);
}
