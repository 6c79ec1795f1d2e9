// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances are fixed constants below.

#include <algorithm>
#include <array>
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "emmbmc/corpus.hpp"
#include "emmbmc/emm.hpp"
#include "emmbmc/fuzz.hpp"
#include "emmbmc/generators.hpp"
#include "emmbmc/invariant.hpp"
#include "emmbmc/pba.hpp"
#include "emmbmc/witness.hpp"
#include "helpers.hpp"

using namespace emmbmc;

namespace {

constexpr double kCountsSeconds = 10;
constexpr double kFuzzSeconds = 600;
constexpr double kInvariantSeconds = 5;
constexpr double kScalingCapSeconds = 600;
constexpr double kMinSpeedup = 5;
constexpr double kMinQuadraticR2 = 0.999;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << o.detail << std::endl;
}

std::uint64_t memory_clauses(const CategoryCounts& c) {
  return c.clauses_in(Category::AddressCompare) + c.clauses_in(Category::Exclusivity) +
         c.clauses_in(Category::ReadData);
}

std::uint64_t memory_gates(const CategoryCounts& c) {
  return c.gates_in(Category::AddressCompare) + c.gates_in(Category::Exclusivity) +
         c.gates_in(Category::ReadData);
}

Outcome encoding_size() {
  const auto start = Clock::now();
  const std::array<std::array<unsigned, 4>, 4> shapes{
      {{10, 32, 1, 1}, {10, 24, 1, 1}, {10, 8, 1, 1}, {12, 32, 1, 3}}};
  std::size_t checked = 0, wrong = 0;
  std::ostringstream first;
  for (const auto& [m, n, W, R] : shapes) {
    const Design d = parse_design(testutil::shaped_design(m, n, W, R));
    const auto counts = encoding_counts(d, "p", 30);
    for (std::size_t k = 0; k < counts.size(); ++k) {
      const std::uint64_t dc = memory_clauses(counts[k]) - (k ? memory_clauses(counts[k - 1]) : 0);
      const std::uint64_t dg = memory_gates(counts[k]) - (k ? memory_gates(counts[k - 1]) : 0);
      // Per read: k*W address comparators (4m+1), data clauses (2n) and
      // three gates each, plus 2n+1 for the fall-through to the initial word.
      const std::uint64_t want_c = ((4 * m + 2 * n + 1) * k * W + 2 * n + 1) * R;
      const std::uint64_t want_g = 3 * k * W * R;
      const PredictedCounts p = predicted_counts(m, n, W, R, k);
      ++checked;
      if (dc != want_c || dg != want_g || p.clauses != want_c || p.gates != want_g) {
        if (!wrong++) {
          first << " first mismatch (" << m << "," << n << "," << W << "," << R << ") k=" << k
                << ": " << dc << "/" << dg << " vs " << want_c << "/" << want_g;
        }
      }
    }
  }
  const double secs = since(start);
  std::ostringstream os;
  os << checked << " depth/shape pairs, " << wrong << " mismatches, " << secs << "s (limit "
     << kCountsSeconds << "s)" << first.str();
  return {wrong == 0 && secs < kCountsSeconds, os.str()};
}

// Shared by criteria 2, 3 and 9.
FuzzReport fuzz_report;
double fuzz_seconds = 0;

Outcome fuzz_agreement() {
  FuzzOptions o;
  o.seed = 1;
  o.count = 500;
  o.exclusivity_ab = true;
  const auto start = Clock::now();
  fuzz_report = fuzz(o);
  fuzz_seconds = since(start);
  std::ostringstream os;
  os << fuzz_report.cases.size() << " designs, " << fuzz_report.divergences << " divergences, "
     << fuzz_report.counterexamples << " counterexamples, " << fuzz_seconds << "s (limit "
     << kFuzzSeconds << "s)";
  return {fuzz_report.cases.size() == 500 && fuzz_report.divergences == 0 &&
              fuzz_seconds < kFuzzSeconds,
          os.str()};
}

Outcome replay_all() {
  // Fuzz counterexamples from both engines, plus the CE entries of a
  // handful of known designs.
  std::size_t replays = fuzz_report.replays, failed = fuzz_report.replay_failures;
  struct Src {
    std::string text, prop;
  };
  QuicksortParams q;
  q.n = 2;
  q.array_aw = q.stack_aw = 4;
  q.array_dw = 4;
  q.stack_dw = 10;
  const std::vector<Src> extra{{gen_stack(3, 4, false), "no_underflow"},
                               {gen_quicksort(q), "never_done"},
                               {testutil::ram_design(4, 4), "p"}};
  for (const Src& s : extra) {
    const Design d = parse_design(s.text);
    for (EngineKind e : {EngineKind::Emm, EngineKind::Explicit}) {
      CheckOptions o;
      o.bound = 30;
      o.engine = e;
      const Verdict v = check(d, s.prop, o);
      if (v.kind != VerdictKind::CE || !v.witness) {
        ++failed;
        continue;
      }
      ++replays;
      const Witness back = parse_witness(print_witness(*v.witness));
      if (!replay(d, back, s.prop).valid) ++failed;
    }
  }
  std::ostringstream os;
  os << replays << " traces replayed, " << failed << " failures";
  return {failed == 0 && replays >= fuzz_report.counterexamples, os.str()};
}

Outcome init_consistency() {
  const Design d = parse_design(gen_unwritten());
  CheckOptions o;
  o.bound = 5;
  o.prove = true;
  const Verdict with = check(d, "same_addr_same_data", o);
  o.init_consistency = false;
  const Verdict without = check(d, "same_addr_same_data", o);
  const bool spurious = without.kind == VerdictKind::CE && without.witness &&
                        !replay(d, *without.witness, "same_addr_same_data").valid;
  std::ostringstream os;
  os << "with: " << verdict_label(with) << ", without: " << verdict_label(without)
     << (spurious ? " (trace does not replay)" : "");
  return {with.kind == VerdictKind::Proof && with.depth <= 5 && spurious, os.str()};
}

Outcome corpus_proofs() {
  const std::string dir = std::string(EMMBMC_SOURCE_DIR) + "/data/corpus";
  CorpusOptions opt;
  opt.confirm_factor = 2;
  std::size_t proofs = 0, confirmed = 0;
  std::ostringstream bad;
  for (const EntryResult& r : corpus_verify(dir, opt)) {
    if (r.entry.expected != VerdictKind::Proof || r.entry.explicit_infeasible) continue;
    const Design d = parse_design_file(dir + "/" + r.entry.file);
    bool small = true;
    for (const Memory& m : d.memories()) small = small && m.aw <= 4;
    if (!small) continue;
    ++proofs;
    if (r.pass && !r.expl.empty()) {
      ++confirmed;
    } else {
      bad << " " << r.entry.file << ":" << r.entry.prop << " (" << r.detail << ")";
    }
  }
  std::ostringstream os;
  os << confirmed << "/" << proofs << " PROOF entries with aw<=4 confirmed by explicit search to "
     << opt.confirm_factor << "x the proof depth" << bad.str();
  return {proofs > 0 && confirmed == proofs, os.str()};
}

Outcome quicksort_abstraction() {
  const Design full = parse_design(gen_quicksort({}));
  const StableResult r = stable_abstraction(full, "p2", 10, 60);
  if (!r.abstraction) return {false, "no abstraction: " + verdict_label(r.run)};
  bool arr_dropped = false, stk_kept = false;
  for (const MemoryDecision& m : r.abstraction->memories) {
    if (m.memory == "arr") arr_dropped = !m.keep;
    if (m.memory == "stk") stk_kept = m.keep;
  }
  CheckOptions p;
  p.bound = 60;
  p.prove = true;
  const Verdict proof = check(r.abstraction->model, "p2", p);

  // The reduced-width instance has the same control; its abstract model is
  // small enough to expand explicitly.
  QuicksortParams q;
  q.array_aw = q.stack_aw = 4;
  q.array_dw = 4;
  q.stack_dw = 10;
  const StableResult small = stable_abstraction(parse_design(gen_quicksort(q)), "p2", 10, 60);
  std::string confirm = "no small abstraction";
  bool confirmed = false;
  if (small.abstraction && proof.kind == VerdictKind::Proof) {
    CheckOptions e;
    e.engine = EngineKind::Explicit;
    e.bound = 2 * proof.depth;
    const Verdict x = check(small.abstraction->model, "p2", e);
    confirmed = x.kind == VerdictKind::NoCE && x.depth == e.bound;
    confirm = "explicit on the aw=4 abstract model: " + verdict_label(x) + "@" +
              std::to_string(x.depth);
  }
  std::ostringstream os;
  os << "reasons stable at depth " << r.run.depth << ", latch bits "
     << r.abstraction->kept_latch_bits << "/" << r.abstraction->original_latch_bits
     << ", arr " << (arr_dropped ? "dropped" : "kept") << ", stk " << (stk_kept ? "kept" : "dropped")
     << ", abstract " << verdict_label(proof) << ", " << confirm;
  return {r.run.stable && arr_dropped && stk_kept && proof.kind == VerdictKind::Proof && confirmed,
          os.str()};
}

Outcome write_invariant() {
  const auto start = Clock::now();
  InvariantOptions o;
  o.bound = 20;
  const InvariantResult r = invariant_check(parse_design(gen_gated()), "ram", "acc_zero", o);
  const double secs = since(start);
  const bool inv = r.invariant.kind == VerdictKind::Proof &&
                   r.invariant.method == ProofMethod::BackwardInduction && r.invariant.depth <= 3;
  const bool target = r.target && r.target->kind == VerdictKind::Proof;
  std::ostringstream os;
  os << "invariant " << verdict_label(r.invariant) << " by "
     << proof_method_name(r.invariant.method) << ", target "
     << (r.target ? verdict_label(*r.target) : std::string("not run")) << ", " << secs
     << "s (limit " << kInvariantSeconds << "s)";
  return {inv && target && secs < kInvariantSeconds, os.str()};
}

// Least-squares fit of y = a x^2 + b x + c; returns (a, R^2).
std::pair<double, double> quadratic_fit(const std::vector<double>& x, const std::vector<double>& y) {
  double s[5] = {0, 0, 0, 0, 0}, t[3] = {0, 0, 0};
  for (std::size_t i = 0; i < x.size(); ++i) {
    double p = 1;
    for (int k = 0; k < 5; ++k, p *= x[i]) s[k] += p;
    t[0] += y[i];
    t[1] += y[i] * x[i];
    t[2] += y[i] * x[i] * x[i];
  }
  // Normal equations, solved by Cramer's rule.
  const double m[3][3] = {{s[4], s[3], s[2]}, {s[3], s[2], s[1]}, {s[2], s[1], s[0]}};
  const double r[3] = {t[2], t[1], t[0]};
  auto det = [](const double a[3][3]) {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
           a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  };
  double coef[3];
  for (int c = 0; c < 3; ++c) {
    double a[3][3];
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) a[i][j] = j == c ? r[i] : m[i][j];
    }
    coef[c] = det(a) / det(m);
  }
  double mean = 0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(y.size());
  double ss_res = 0, ss_tot = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = coef[0] * x[i] * x[i] + coef[1] * x[i] + coef[2];
    ss_res += (y[i] - f) * (y[i] - f);
    ss_tot += (y[i] - mean) * (y[i] - mean);
  }
  return {coef[0], ss_tot == 0 ? 1.0 : 1 - ss_res / ss_tot};
}

Outcome scaling() {
  const Design d = parse_design(gen_stack(10, 8));
  auto timed = [&](EngineKind e) {
    CheckOptions o;
    o.engine = e;
    o.bound = 20;
    o.time_budget_s = kScalingCapSeconds;
    const auto start = Clock::now();
    Verdict v = check(d, "pop_after_push", o);
    return std::make_pair(std::move(v), since(start));
  };
  const auto [emm, emm_s] = timed(EngineKind::Emm);
  const auto [expl, expl_s] = timed(EngineKind::Explicit);
  // Deepest depth both engines finished; an UNKNOWN depth did not finish.
  auto last_done = [](const Verdict& v) -> std::ptrdiff_t {
    return static_cast<std::ptrdiff_t>(v.depth) - (v.kind == VerdictKind::Unknown ? 1 : 0);
  };
  const std::ptrdiff_t common = std::min(last_done(emm), last_done(expl));
  if (common < 0) return {false, "no depth completed within the cap"};
  auto solve_at = [&](const Verdict& v) {
    for (const DepthStats& s : v.stats) {
      if (s.depth == static_cast<std::size_t>(common)) return s.solve_seconds;
    }
    return 0.0;
  };
  const double emm_solve = solve_at(emm), expl_solve = solve_at(expl);
  std::vector<double> xs, ys;
  for (const DepthStats& s : emm.stats) {
    xs.push_back(static_cast<double>(s.depth));
    ys.push_back(static_cast<double>(s.counts.total_clauses() + s.counts.total_gates()));
  }
  const auto [a, r2] = quadratic_fit(xs, ys);
  const double ratio = expl_solve / std::max(emm_solve, 1e-9);
  const bool emm_done = emm.kind != VerdictKind::Unknown && emm.depth == 20;
  std::ostringstream os;
  os << "emm " << verdict_label(emm) << " in " << emm_s << "s, explicit " << verdict_label(expl)
     << " in " << expl_s << "s; solve time at depth " << common << ": explicit " << expl_solve
     << "s, emm " << emm_solve << "s, ratio " << ratio << " (min " << kMinSpeedup
     << "); emm cumulative constraints " << (ys.empty() ? 0 : ys.back())
     << ", quadratic fit a=" << a << " R^2=" << r2 << " (min " << kMinQuadraticR2 << ")";
  return {emm_done && ratio >= kMinSpeedup && a > 0 && r2 >= kMinQuadraticR2, os.str()};
}

Outcome exclusivity_ab() {
  double with = 0, without = 0;
  std::size_t agree = 0;
  for (const FuzzCase& c : fuzz_report.cases) {
    with += c.emm_seconds;
    without += c.no_exclusivity_seconds;
    if (c.exclusivity_agree) ++agree;
  }
  std::ostringstream os;
  os << agree << "/" << fuzz_report.cases.size() << " verdicts agree; emm with exclusive selectors "
     << with << "s, without " << without << "s";
  return {!fuzz_report.cases.empty() && agree == fuzz_report.cases.size() &&
              fuzz_report.exclusivity_divergences == 0,
          os.str()};
}

}  // namespace

int main() {
  report(1, encoding_size);
  report(2, fuzz_agreement);
  report(3, replay_all);
  report(4, init_consistency);
  report(5, corpus_proofs);
  report(6, quicksort_abstraction);
  report(7, write_invariant);
  report(8, scaling);
  report(9, exclusivity_ab);
  return failures == 0 ? 0 : 1;
}
