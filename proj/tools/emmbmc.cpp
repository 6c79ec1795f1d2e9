#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "emmbmc/corpus.hpp"
#include "emmbmc/design.hpp"
#include "emmbmc/emm.hpp"
#include "emmbmc/engine.hpp"
#include "emmbmc/fuzz.hpp"
#include "emmbmc/generators.hpp"
#include "emmbmc/invariant.hpp"
#include "emmbmc/pba.hpp"
#include "emmbmc/report.hpp"
#include "emmbmc/witness.hpp"

using namespace emmbmc;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_file(path, text);
  }
}

std::string default_property(const Design& d, const std::string& prop) {
  if (!prop.empty()) return prop;
  if (d.properties().size() != 1) {
    throw std::runtime_error("design has " + std::to_string(d.properties().size()) +
                             " properties; pass --prop");
  }
  return d.properties()[0].name;
}

// Flags shared by check, abstract and invariant.
struct EngineFlags {
  std::string engine = "emm";
  std::size_t bound = 20;
  bool prove = false, pba = false, core_minimize = false;
  unsigned stability = 10;
  bool no_exclusivity = false, no_init_consistency = false;
  bool no_forward = false, no_backward = false;
  bool re0_zero = false, lfp_latches_only = false;
  unsigned explicit_cap = kDefaultExplicitCap;
  double time_budget = 0;
  std::int64_t conflict_budget = -1;

  void add(CLI::App* app, bool with_pba) {
    app->add_option("--bound", bound, "Maximum depth")->capture_default_str();
    app->add_option("--engine", engine, "emm or explicit")
        ->check(CLI::IsMember({"emm", "explicit"}))
        ->capture_default_str();
    app->add_flag("--prove", prove, "Run the forward and backward termination checks");
    if (with_pba) {
      app->add_flag("--pba", pba, "Accumulate latch reasons from unsat cores");
      app->add_option("--stability", stability,
                      "Stop once latch reasons are unchanged over this many depths")
          ->check(CLI::PositiveNumber);
      app->add_flag("--core-minimize", core_minimize, "Minimize each core by deletion");
    }
    app->add_flag("--no-exclusivity", no_exclusivity, "Direct read implications");
    app->add_flag("--no-init-consistency", no_init_consistency,
                  "Drop the equal-address constraints on unwritten reads");
    app->add_flag("--no-forward-check", no_forward);
    app->add_flag("--no-backward-check", no_backward);
    app->add_flag("--re0-zero", re0_zero, "Disabled reads return zero");
    app->add_flag("--lfp-latches-only", lfp_latches_only,
                  "Loop-free constraints over latches only");
    app->add_option("--explicit-cap", explicit_cap, "Largest address width the explicit engine expands")
        ->capture_default_str();
    app->add_option("--time-budget", time_budget, "Seconds for the whole run (0 = unlimited)")
        ->check(CLI::NonNegativeNumber);
    app->add_option("--conflict-budget", conflict_budget, "Conflicts per query (-1 = unlimited)");
  }

  CheckOptions options(CLI::App* app) const {
    CheckOptions o;
    o.engine = engine == "explicit" ? EngineKind::Explicit : EngineKind::Emm;
    o.bound = bound;
    o.prove = prove;
    o.forward_check = !no_forward;
    o.backward_check = !no_backward;
    o.pba = pba;
    if (app->get_option_no_throw("--stability") && app->count("--stability")) {
      o.stop_when_stable = stability;
    }
    o.core_minimize = core_minimize;
    o.exclusivity = !no_exclusivity;
    o.init_consistency = !no_init_consistency;
    o.re0_zero = re0_zero;
    o.lfp_latches_only = lfp_latches_only;
    o.explicit_cap = explicit_cap;
    o.time_budget_s = time_budget;
    o.conflict_budget = conflict_budget;
    return o;
  }
};

std::string abstraction_text(const Abstraction& a) {
  std::ostringstream os;
  os << "latches=" << a.kept_latches.size() << '/' << a.original_latches << '\n'
     << "latch_bits=" << a.kept_latch_bits << '/' << a.original_latch_bits << '\n';
  for (const MemoryDecision& m : a.memories) {
    os << "memory." << m.memory << '=' << (m.keep ? "kept" : "dropped") << '\n';
    for (std::size_t r = 0; r < m.keep_read_port.size(); ++r) {
      os << "memory." << m.memory << ".rport" << r << '='
         << (m.keep_read_port[r] ? "kept" : "dropped") << '\n';
    }
  }
  os << "kept_latches=";
  bool first = true;
  for (const auto& n : a.kept_latches) {
    os << (first ? "" : ",") << n;
    first = false;
  }
  os << '\n';
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounded model checker with efficient memory modeling"};
  app.require_subcommand(1);
  int status = 0;

  // check
  auto* check_cmd = app.add_subcommand("check", "Falsify or prove a property");
  std::string check_file, check_prop, witness_path, report_path, cnf_path;
  EngineFlags check_flags;
  check_cmd->add_option("file", check_file)->required();
  check_cmd->add_option("--prop", check_prop, "Property name");
  check_flags.add(check_cmd, true);
  check_cmd->add_option("--witness", witness_path, "Write the counterexample trace here");
  check_cmd->add_option("--report", report_path, "Write a JSON report here");
  check_cmd->add_option("--dump-cnf", cnf_path, "Write the CNF of the last query here");
  check_cmd->callback([&] {
    const Design d = parse_design_file(check_file);
    CheckOptions o = check_flags.options(check_cmd);
    o.dump_cnf = cnf_path;
    const Verdict v = check(d, default_property(d, check_prop), o);
    std::cout << verdict_text(v);
    if (v.witness && !witness_path.empty()) write_file(witness_path, print_witness(*v.witness));
    if (!report_path.empty()) write_file(report_path, verdict_json(v));
    status = verdict_exit_code(v);
  });

  // counts
  auto* counts_cmd = app.add_subcommand("counts", "Memory constraint counts per depth");
  std::string counts_file, counts_prop;
  std::size_t counts_bound = 10;
  bool counts_symbolic = false;
  counts_cmd->add_option("file", counts_file)->required();
  counts_cmd->add_option("--prop", counts_prop);
  counts_cmd->add_option("--bound", counts_bound)->capture_default_str();
  counts_cmd->add_flag("--symbolic-init", counts_symbolic, "Encode as in proof mode");
  counts_cmd->callback([&] {
    const Design d = parse_design_file(counts_file);
    EmmOptions eo;
    eo.symbolic_init = counts_symbolic;
    const auto counts = encoding_counts(d, default_property(d, counts_prop), counts_bound, eo);
    for (std::size_t k = 0; k < counts.size(); ++k) {
      const CategoryCounts& c = counts[k];
      const std::uint64_t mem_clauses = c.clauses_in(Category::AddressCompare) +
                                        c.clauses_in(Category::Exclusivity) +
                                        c.clauses_in(Category::ReadData);
      const std::uint64_t mem_gates = c.gates_in(Category::AddressCompare) +
                                      c.gates_in(Category::Exclusivity) +
                                      c.gates_in(Category::ReadData);
      std::uint64_t pc = 0, pg = 0;
      for (std::size_t j = 0; j <= k; ++j) {
        for (const Memory& m : d.memories()) {
          const PredictedCounts p = predicted_counts(m.aw, m.dw, m.wports.size(), m.rports.size(), j);
          pc += p.clauses;
          pg += p.gates;
        }
      }
      std::cout << "depth." << k << ".memory_clauses=" << mem_clauses << '\n'
                << "depth." << k << ".memory_gates=" << mem_gates << '\n'
                << "depth." << k << ".predicted_clauses=" << pc << '\n'
                << "depth." << k << ".predicted_gates=" << pg << '\n'
                << "depth." << k << ".init_consistency_clauses="
                << c.clauses_in(Category::InitConsistency) << '\n'
                << "depth." << k << ".total_clauses=" << c.total_clauses() << '\n'
                << "depth." << k << ".total_gates=" << c.total_gates() << '\n';
    }
  });

  // abstract
  auto* abs_cmd = app.add_subcommand("abstract", "Build a proof-based abstraction");
  std::string abs_file, abs_prop, abs_out, abs_granularity = "memory", abs_cone = "combinational";
  std::size_t abs_bound = 40;
  unsigned abs_stability = 10, abs_rounds = 0;
  bool abs_prove = false;
  abs_cmd->add_option("file", abs_file)->required();
  abs_cmd->add_option("--prop", abs_prop);
  abs_cmd->add_option("--bound", abs_bound)->capture_default_str();
  abs_cmd->add_option("--stability", abs_stability)->check(CLI::PositiveNumber)->capture_default_str();
  abs_cmd->add_option("--iterate", abs_rounds, "Extra abstraction rounds on the reduced model");
  abs_cmd->add_option("--granularity", abs_granularity)
      ->check(CLI::IsMember({"memory", "port"}))
      ->capture_default_str();
  abs_cmd->add_option("--cone", abs_cone)
      ->check(CLI::IsMember({"combinational", "transitive"}))
      ->capture_default_str();
  abs_cmd->add_option("--out", abs_out, "Write the reduced design here");
  abs_cmd->add_flag("--prove", abs_prove, "Prove the property on the reduced model");
  abs_cmd->callback([&] {
    const Design d = parse_design_file(abs_file);
    const std::string prop = default_property(d, abs_prop);
    RelevanceOptions ro;
    ro.granularity = abs_granularity == "port" ? PortGranularity::ReadPort : PortGranularity::Memory;
    ro.cone = abs_cone == "transitive" ? ConeMode::Transitive : ConeMode::Combinational;
    const StableResult r = iterate_abstraction(d, prop, abs_stability, abs_bound, abs_rounds, {}, ro);
    std::cout << "run.verdict=" << verdict_label(r.run) << '\n'
              << "run.stable=" << r.run.stable << '\n';
    if (!r.abstraction) {
      status = verdict_exit_code(r.run);
      return;
    }
    std::cout << abstraction_text(*r.abstraction);
    if (!abs_out.empty()) write_file(abs_out, print_design(r.abstraction->model));
    if (abs_prove) {
      CheckOptions o;
      o.prove = true;
      o.bound = abs_bound;
      const Verdict v = check(r.abstraction->model, prop, o);
      std::cout << "abstract.verdict=" << verdict_label(v) << '\n';
      if (v.kind == VerdictKind::Proof) {
        std::cout << "abstract.method=" << proof_method_name(v.method) << '\n';
      }
      status = verdict_exit_code(v);
    }
  });

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "Generate benchmark designs");
  gen_cmd->require_subcommand(1);
  std::string gen_out;
  gen_cmd->add_option("--out", gen_out, "Output path (default stdout)");

  auto* gq = gen_cmd->add_subcommand("quicksort", "Quicksort controller with array and stack memories");
  QuicksortParams qp;
  gq->add_option("--n", qp.n)->capture_default_str();
  gq->add_option("--array-aw", qp.array_aw)->capture_default_str();
  gq->add_option("--array-dw", qp.array_dw)->capture_default_str();
  gq->add_option("--stack-aw", qp.stack_aw)->capture_default_str();
  gq->add_option("--stack-dw", qp.stack_dw)->capture_default_str();
  gq->callback([&] { emit(gen_out, gen_quicksort(qp)); });

  auto* gs = gen_cmd->add_subcommand("stack", "Push/pop stack");
  unsigned gs_aw = 3, gs_dw = 4;
  bool gs_noguard = false;
  gs->add_option("--aw", gs_aw)->capture_default_str();
  gs->add_option("--dw", gs_dw)->capture_default_str();
  gs->add_flag("--no-underflow-guard", gs_noguard);
  gs->callback([&] { emit(gen_out, gen_stack(gs_aw, gs_dw, !gs_noguard)); });

  auto* gf = gen_cmd->add_subcommand("fifo", "FIFO order test driver");
  unsigned gf_aw = 3, gf_dw = 4, gf_writes = 2;
  gf->add_option("--aw", gf_aw)->capture_default_str();
  gf->add_option("--dw", gf_dw)->capture_default_str();
  gf->add_option("--writes", gf_writes)->capture_default_str();
  gf->callback([&] { emit(gen_out, gen_fifo(gf_aw, gf_dw, gf_writes)); });

  auto* gr = gen_cmd->add_subcommand("random", "Random race-free single-memory design");
  std::uint64_t gr_seed = 1;
  RandomCaps gr_caps;
  gr->add_option("--seed", gr_seed)->capture_default_str();
  gr->add_option("--max-aw", gr_caps.max_aw)->capture_default_str();
  gr->add_option("--max-dw", gr_caps.max_dw)->capture_default_str();
  gr->add_option("--max-wports", gr_caps.max_wports)->capture_default_str();
  gr->add_option("--max-rports", gr_caps.max_rports)->capture_default_str();
  gr->add_option("--max-latches", gr_caps.max_latches)->capture_default_str();
  gr->callback([&] { emit(gen_out, gen_random(gr_seed, gr_caps)); });

  auto* ge = gen_cmd->add_subcommand("unwritten", "Two reads of a never-written memory");
  unsigned ge_aw = 3, ge_dw = 2;
  ge->add_option("--aw", ge_aw)->capture_default_str();
  ge->add_option("--dw", ge_dw)->capture_default_str();
  ge->callback([&] { emit(gen_out, gen_unwritten(ge_aw, ge_dw)); });

  auto* gg = gen_cmd->add_subcommand("gated", "Memory whose write data is gated to zero");
  unsigned gg_aw = 10, gg_dw = 32;
  gg->add_option("--aw", gg_aw)->capture_default_str();
  gg->add_option("--dw", gg_dw)->capture_default_str();
  gg->callback([&] { emit(gen_out, gen_gated(gg_aw, gg_dw)); });

  auto* gc = gen_cmd->add_subcommand("corpus", "Regenerate the benchmark corpus and manifest");
  std::string gc_dir;
  std::size_t gc_random = 24;
  std::uint64_t gc_seed = 7;
  gc->add_option("--dir", gc_dir)->required();
  gc->add_option("--random", gc_random)->capture_default_str();
  gc->add_option("--seed", gc_seed)->capture_default_str();
  gc->callback([&] { std::cout << build_corpus(gc_dir, gc_random, gc_seed); });

  // replay
  auto* rep_cmd = app.add_subcommand("replay", "Replay a counterexample trace");
  std::string rep_file, rep_trace, rep_prop;
  rep_cmd->add_option("file", rep_file)->required();
  rep_cmd->add_option("trace", rep_trace)->required();
  rep_cmd->add_option("--prop", rep_prop);
  rep_cmd->callback([&] {
    const Design d = parse_design_file(rep_file);
    const ReplayResult r = replay(d, parse_witness(read_file(rep_trace)), default_property(d, rep_prop));
    std::cout << "valid=" << r.valid << '\n';
    if (!r.valid) {
      std::cout << "frame=" << r.frame << '\n'
                << "signal=" << r.signal << '\n'
                << "bit=" << r.bit << '\n'
                << "message=" << r.message << '\n';
      status = 2;
    }
  });

  // fuzz
  auto* fz_cmd = app.add_subcommand("fuzz", "Differential fuzzing of the two engines");
  FuzzOptions fo;
  std::string fz_report;
  fz_cmd->add_option("--seed", fo.seed)->capture_default_str();
  fz_cmd->add_option("--count", fo.count)->capture_default_str();
  fz_cmd->add_option("--bound", fo.bound)->capture_default_str();
  fz_cmd->add_option("--max-aw", fo.caps.max_aw)->capture_default_str();
  fz_cmd->add_option("--max-dw", fo.caps.max_dw)->capture_default_str();
  fz_cmd->add_option("--max-wports", fo.caps.max_wports)->capture_default_str();
  fz_cmd->add_option("--max-rports", fo.caps.max_rports)->capture_default_str();
  fz_cmd->add_option("--max-latches", fo.caps.max_latches)->capture_default_str();
  fz_cmd->add_flag("--exclusivity-ab", fo.exclusivity_ab, "Also run without exclusive selectors");
  fz_cmd->add_flag("--fault-drop-chaining", fo.fault_drop_chaining, "Inject a selector-chaining fault");
  fz_cmd->add_option("--reproducers", fo.reproducer_dir, "Directory for divergent designs");
  fz_cmd->add_option("--report", fz_report, "Write the deterministic report here");
  fz_cmd->callback([&] {
    const FuzzReport r = fuzz(fo);
    const std::string text = r.text();
    if (!fz_report.empty()) write_file(fz_report, text);
    std::cout << text;
    double emm = 0, expl = 0, noex = 0;
    for (const FuzzCase& c : r.cases) {
      emm += c.emm_seconds;
      expl += c.explicit_seconds;
      noex += c.no_exclusivity_seconds;
    }
    std::cout << "seconds.emm=" << emm << '\n' << "seconds.explicit=" << expl << '\n';
    if (fo.exclusivity_ab) std::cout << "seconds.no_exclusivity=" << noex << '\n';
    if (r.divergences || r.exclusivity_divergences || r.replay_failures) status = 2;
  });

  // invariant
  auto* inv_cmd = app.add_subcommand("invariant", "Prove a zero-write invariant and use it");
  std::string inv_file, inv_memory, inv_target, inv_out;
  InvariantOptions io;
  inv_cmd->add_option("file", inv_file)->required();
  inv_cmd->add_option("--memory", inv_memory)->required();
  inv_cmd->add_option("--target", inv_target, "Property to prove on the rewritten model");
  inv_cmd->add_option("--bound", io.bound)->capture_default_str();
  inv_cmd->add_option("--stability", io.stability)->check(CLI::PositiveNumber)->capture_default_str();
  inv_cmd->add_option("--out", inv_out, "Write the reduced model here");
  inv_cmd->callback([&] {
    const Design d = parse_design_file(inv_file);
    const InvariantResult r = invariant_check(d, inv_memory, inv_target, io);
    std::cout << "invariant=" << write_invariant_name(inv_memory) << '\n'
              << "invariant.verdict=" << verdict_label(r.invariant) << '\n';
    if (r.invariant.kind == VerdictKind::Proof) {
      std::cout << "invariant.method=" << proof_method_name(r.invariant.method) << '\n';
    }
    status = verdict_exit_code(r.invariant);
    if (r.abstraction && r.abstraction->abstraction) {
      std::cout << abstraction_text(*r.abstraction->abstraction);
      if (!inv_out.empty()) write_file(inv_out, print_design(r.abstraction->abstraction->model));
    }
    if (r.target) {
      std::cout << "target.verdict=" << verdict_label(*r.target) << '\n';
      if (r.target->kind == VerdictKind::Proof) {
        std::cout << "target.method=" << proof_method_name(r.target->method) << '\n';
      }
      status = verdict_exit_code(*r.target);
    }
  });

  // corpus-verify
  auto* cv_cmd = app.add_subcommand("corpus-verify", "Check every manifest entry with both engines");
  std::string cv_dir;
  CorpusOptions cv_opts;
  cv_cmd->add_option("dir", cv_dir)->required();
  cv_cmd->add_option("--time-budget", cv_opts.time_budget_s, "Seconds per engine run")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cv_cmd->callback([&] {
    std::size_t failed = 0, exhausted = 0;
    for (const EntryResult& r : corpus_verify(cv_dir, cv_opts)) {
      const char* tag = r.budget_exhausted ? "BUDGET" : r.pass ? "PASS" : "FAIL";
      std::cout << tag << ' ' << format_entry(r.entry) << " emm=" << r.emm;
      if (!r.expl.empty()) std::cout << " explicit=" << r.expl;
      if (!r.detail.empty()) std::cout << " (" << r.detail << ')';
      std::cout << '\n';
      if (r.budget_exhausted) {
        ++exhausted;
      } else if (!r.pass) {
        ++failed;
      }
    }
    std::cout << "failed=" << failed << '\n' << "budget_exhausted=" << exhausted << '\n';
    if (failed) {
      status = 2;
    } else if (exhausted) {
      status = 3;
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return status;
}
