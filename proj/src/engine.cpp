#include "emmbmc/engine.hpp"

#include <chrono>
#include <algorithm>
#include <fstream>

#include "emmbmc/bitblast.hpp"
#include "emmbmc/emm.hpp"
#include "emmbmc/unroller.hpp"

namespace emmbmc {

std::string_view engine_name(EngineKind e) { return e == EngineKind::Emm ? "emm" : "explicit"; }

std::string_view verdict_name(VerdictKind v) {
  switch (v) {
    case VerdictKind::CE: return "CE";
    case VerdictKind::Proof: return "PROOF";
    case VerdictKind::NoCE: return "NO_CE";
    case VerdictKind::Unknown: return "UNKNOWN";
  }
  return "?";
}

std::string_view proof_method_name(ProofMethod m) {
  switch (m) {
    case ProofMethod::None: return "none";
    case ProofMethod::ForwardDiameter: return "forward-diameter";
    case ProofMethod::BackwardInduction: return "backward-induction";
  }
  return "?";
}

std::string_view query_name(QueryKind q) {
  switch (q) {
    case QueryKind::Forward: return "forward";
    case QueryKind::Backward: return "backward";
    case QueryKind::Falsify: return "falsify";
    case QueryKind::Minimize: return "minimize";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

class Run {
 public:
  Run(const Design& original, std::string_view property, const CheckOptions& opt)
      : original_(original), opt_(opt) {
    if (opt.engine == EngineKind::Explicit) {
      expanded_ = expand_memory(original, opt.explicit_cap, opt.re0_zero);
      checked_ = &expanded_->design;
    } else {
      checked_ = &original;
    }
    out_.property = std::string(property);
    out_.engine = opt.engine;
    net_ = bit_blast(*checked_);
    store_.emplace(!opt.dump_cnf.empty());

    UnrollOptions uo;
    uo.latch_guards = opt.pba;
    uo.memory_aware_lfp = !opt.lfp_latches_only;
    if (opt.engine == EngineKind::Emm) uo.modeled_memories = opt.memories;
    unroller_.emplace(*checked_, net_, *store_, checked_->property(property).signal, uo);

    if (opt.engine == EngineKind::Emm) {
      EmmOptions eo;
      eo.exclusivity = opt.exclusivity;
      eo.init_consistency = opt.init_consistency;
      eo.symbolic_init = opt.prove;
      eo.re0_zero = opt.re0_zero;
      eo.fault_drop_chaining = opt.fault_drop_chaining;
      eo.memories = opt.memories;
      eo.read_ports = opt.read_ports;
      emm_.emplace(*unroller_, eo);
    }
    if (opt.time_budget_s > 0) {
      deadline_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                     std::chrono::duration<double>(opt.time_budget_s));
    }
  }

  Verdict run();

 private:
  SolveResult query(std::size_t depth, QueryKind kind, std::vector<Lit> assumptions,
                    bool with_guards = true);
  void add_reasons(const std::vector<Lit>& core, std::size_t depth, std::vector<Lit> base);
  Verdict finish(VerdictKind kind, std::size_t depth);

  const Design& original_;
  const CheckOptions& opt_;
  std::optional<ExpandedDesign> expanded_;
  const Design* checked_ = nullptr;
  BitNetlist net_;
  std::optional<ConstraintStore> store_;
  std::optional<Unroller> unroller_;
  std::optional<EmmEncoder> emm_;
  Clock::time_point deadline_ = Clock::time_point::max();
  std::vector<Lit> last_assumptions_;
  std::set<NodeId> reasons_;
  std::vector<std::size_t> reason_history_;
  double depth_seconds_ = 0;
  Verdict out_;
};

SolveResult Run::query(std::size_t depth, QueryKind kind, std::vector<Lit> assumptions,
                       bool with_guards) {
  if (with_guards) {
    for (Lit g : unroller_->guards()) assumptions.push_back(g);
  }
  last_assumptions_ = assumptions;
  QueryRecord rec;
  rec.depth = depth;
  rec.kind = kind;
  SolveResult r;
  if (Clock::now() >= deadline_) {
    r.status = sat::Status::Unknown;
  } else {
    sat::Budget budget;
    budget.conflicts = opt_.conflict_budget;
    budget.deadline = deadline_;
    const auto t0 = Clock::now();
    r = store_->solve(assumptions, budget);
    rec.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  }
  rec.status = r.status;
  depth_seconds_ += rec.seconds;
  out_.queries.push_back(rec);
  return r;
}

void Run::add_reasons(const std::vector<Lit>& core, std::size_t depth, std::vector<Lit> base) {
  std::vector<Lit> kept;
  for (Lit l : core) {
    if (unroller_->guard_latch(l)) kept.push_back(l);
  }
  if (opt_.core_minimize) {
    // Deletion-based: drop one guard at a time while the query stays UNSAT.
    std::vector<Lit> necessary, todo = kept;
    while (!todo.empty()) {
      todo.pop_back();
      std::vector<Lit> trial = base;
      trial.insert(trial.end(), necessary.begin(), necessary.end());
      trial.insert(trial.end(), todo.begin(), todo.end());
      const Lit dropped = kept[necessary.size() + todo.size()];
      SolveResult r = query(depth, QueryKind::Minimize, trial, false);
      if (r.status == sat::Status::Unsat) {
        std::set<std::uint32_t> in_core;
        for (Lit l : r.core) in_core.insert(l.code);
        std::erase_if(todo, [&](Lit l) { return !in_core.count(l.code); });
      } else {
        necessary.push_back(dropped);
      }
      kept.resize(0);
      kept.insert(kept.end(), necessary.begin(), necessary.end());
      kept.insert(kept.end(), todo.begin(), todo.end());
    }
  }
  for (Lit l : kept) reasons_.insert(*unroller_->guard_latch(l));
}

Verdict Run::finish(VerdictKind kind, std::size_t depth) {
  out_.kind = kind;
  out_.depth = depth;
  for (NodeId id : reasons_) out_.latch_reasons.insert(checked_->node(id).name);
  if (!opt_.dump_cnf.empty()) {
    std::ofstream os(opt_.dump_cnf);
    if (!os) throw std::runtime_error("cannot write '" + opt_.dump_cnf + "'");
    store_->write_dimacs(os, last_assumptions_);
  }
  return std::move(out_);
}

Verdict Run::run() {
  Unroller& u = *unroller_;
  for (std::size_t i = 0; i <= opt_.bound; ++i) {
    depth_seconds_ = 0;
    u.unroll();
    if (emm_) emm_->encode(i);

    auto record_stats = [&] {
      DepthStats ds;
      ds.depth = i;
      ds.solve_seconds = depth_seconds_;
      ds.counts = store_->counts();
      ds.vars = store_->num_vars();
      ds.latch_reasons = reasons_.size();
      out_.stats.push_back(ds);
    };

    if (opt_.prove) {
      const Lit lfp = u.loop_free(i);
      if (opt_.forward_check &&
          query(i, QueryKind::Forward, {u.init(), lfp}).status == sat::Status::Unsat) {
        record_stats();
        out_.method = ProofMethod::ForwardDiameter;
        return finish(VerdictKind::Proof, i);
      }
      if (opt_.backward_check &&
          query(i, QueryKind::Backward, {lfp, ~u.property(i), u.cp(i)}).status ==
              sat::Status::Unsat) {
        record_stats();
        out_.method = ProofMethod::BackwardInduction;
        return finish(VerdictKind::Proof, i);
      }
    }

    SolveResult r = query(i, QueryKind::Falsify, {u.init(), ~u.property(i)});
    if (r.status == sat::Status::Sat) {
      record_stats();
      out_.witness = build_witness(original_, i + 1, [&](std::size_t k, const std::string& n) {
        return u.value(k, checked_->id_of(n));
      });
      return finish(VerdictKind::CE, i);
    }
    if (r.status == sat::Status::Unknown) {
      record_stats();
      return finish(VerdictKind::Unknown, i);
    }
    if (opt_.pba) add_reasons(r.core, i, {u.init(), ~u.property(i)});
    reason_history_.push_back(reasons_.size());
    record_stats();
    if (opt_.stop_when_stable) {
      const unsigned s = *opt_.stop_when_stable;
      if (i >= s && reason_history_[i] == reason_history_[i - s]) {
        out_.stable = true;
        return finish(VerdictKind::NoCE, i);
      }
    }
  }
  return finish(VerdictKind::NoCE, opt_.bound);
}

}  // namespace

Verdict check(const Design& design, std::string_view property, const CheckOptions& options) {
  Run run(design, property, options);
  return run.run();
}

}  // namespace emmbmc
