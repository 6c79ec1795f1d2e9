#include "emmbmc/fuzz.hpp"

#include <chrono>
#include <filesystem>
#include <functional>
#include <fstream>
#include <sstream>

namespace emmbmc {

std::uint64_t fuzz_design_seed(std::uint64_t seed, std::size_t index) {
  std::uint64_t z = seed * 0x9e3779b97f4a7c15ULL + index + 1;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::string verdict_label(const Verdict& v) {
  switch (v.kind) {
    case VerdictKind::CE: return "CE@" + std::to_string(v.depth);
    case VerdictKind::NoCE: return "NO_CE";
    case VerdictKind::Proof: return "PROOF@" + std::to_string(v.depth);
    case VerdictKind::Unknown: return "UNKNOWN@" + std::to_string(v.depth);
  }
  return "?";
}

namespace {

double timed(const std::function<void()>& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

FuzzReport fuzz(const FuzzOptions& opt) {
  FuzzReport rep;
  rep.options = opt;
  for (std::size_t idx = 0; idx < opt.count; ++idx) {
    FuzzCase c;
    c.seed = fuzz_design_seed(opt.seed, idx);
    const std::string text = gen_random(c.seed, opt.caps);
    const Design d = parse_design(text);

    CheckOptions base;
    base.bound = opt.bound;
    CheckOptions emm_opt = base;
    emm_opt.fault_drop_chaining = opt.fault_drop_chaining;
    CheckOptions exp_opt = base;
    exp_opt.engine = EngineKind::Explicit;

    Verdict ve, vx;
    c.emm_seconds = timed([&] { ve = check(d, "p", emm_opt); });
    c.explicit_seconds = timed([&] { vx = check(d, "p", exp_opt); });
    c.emm = verdict_label(ve);
    c.expl = verdict_label(vx);
    c.agree = c.emm == c.expl;

    for (const Verdict* v : {&ve, &vx}) {
      if (v->kind != VerdictKind::CE) continue;
      ++rep.counterexamples;
      ++c.replays;
      ReplayResult r = replay(d, *v->witness, "p");
      if (!r.valid) {
        ++c.replay_failures;
        c.detail += std::string(engine_name(v->engine)) + " trace: " + r.message + "; ";
      }
    }

    if (opt.exclusivity_ab) {
      CheckOptions nx = emm_opt;
      nx.exclusivity = false;
      Verdict vn;
      c.no_exclusivity_seconds = timed([&] { vn = check(d, "p", nx); });
      c.no_exclusivity = verdict_label(vn);
      c.exclusivity_agree = c.no_exclusivity == c.emm;
      if (vn.kind == VerdictKind::CE) {
        ++c.replays;
        ReplayResult r = replay(d, *vn.witness, "p");
        if (!r.valid) {
          ++c.replay_failures;
          c.detail += "no-exclusivity trace: " + r.message + "; ";
        }
      }
    }

    rep.replays += c.replays;
    rep.replay_failures += c.replay_failures;
    if (!c.agree) ++rep.divergences;
    if (!c.exclusivity_agree) ++rep.exclusivity_divergences;
    if ((!c.agree || !c.exclusivity_agree) && !opt.reproducer_dir.empty()) {
      std::filesystem::create_directories(opt.reproducer_dir);
      std::ofstream(opt.reproducer_dir + "/fuzz_" + std::to_string(c.seed) + ".ir") << text;
    }
    rep.cases.push_back(std::move(c));
  }
  return rep;
}

std::string FuzzReport::text() const {
  std::ostringstream os;
  os << "seed=" << options.seed << '\n'
     << "count=" << options.count << '\n'
     << "bound=" << options.bound << '\n'
     << "caps=aw<=" << options.caps.max_aw << ",dw<=" << options.caps.max_dw
     << ",wports<=" << options.caps.max_wports << ",rports<=" << options.caps.max_rports << '\n'
     << "fault_drop_chaining=" << options.fault_drop_chaining << '\n';
  for (const FuzzCase& c : cases) {
    os << "case seed=" << c.seed << " emm=" << c.emm << " explicit=" << c.expl;
    if (options.exclusivity_ab) os << " no_exclusivity=" << c.no_exclusivity;
    os << (c.agree && c.exclusivity_agree ? " ok" : " DIVERGENCE");
    if (c.replay_failures) os << " replay_failures=" << c.replay_failures;
    os << '\n';
  }
  os << "divergences=" << divergences << '\n'
     << "exclusivity_divergences=" << exclusivity_divergences << '\n'
     << "counterexamples=" << counterexamples << '\n'
     << "replays=" << replays << '\n'
     << "replay_failures=" << replay_failures << '\n';
  return os.str();
}

}  // namespace emmbmc
