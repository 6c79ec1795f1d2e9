#include "emmbmc/corpus.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "emmbmc/fuzz.hpp"
#include "emmbmc/generators.hpp"

namespace emmbmc {

std::vector<CorpusEntry> parse_manifest(std::string_view text) {
  std::vector<CorpusEntry> out;
  std::istringstream is{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    auto fail = [line](const std::string& what) {
      return std::runtime_error("manifest line " + std::to_string(line) + ": " + what);
    };
    if (tok.size() < 4 || tok.size() > 5) throw fail("expected 'file prop expected depth [explicit-infeasible]'");
    CorpusEntry e;
    e.file = tok[0];
    e.prop = tok[1];
    e.line = line;
    if (tok[2] == "CE") {
      e.expected = VerdictKind::CE;
    } else if (tok[2] == "PROOF") {
      e.expected = VerdictKind::Proof;
    } else if (tok[2] == "NO_CE") {
      e.expected = VerdictKind::NoCE;
    } else {
      throw fail("unknown verdict '" + tok[2] + "'");
    }
    try {
      e.depth = std::stoul(tok[3]);
    } catch (const std::exception&) {
      throw fail("bad depth '" + tok[3] + "'");
    }
    if (tok.size() == 5) {
      if (tok[4] != "explicit-infeasible") throw fail("unknown flag '" + tok[4] + "'");
      e.explicit_infeasible = true;
    }
    out.push_back(e);
  }
  return out;
}

std::string format_entry(const CorpusEntry& e) {
  std::string s = e.file + ' ' + e.prop + ' ' + std::string(verdict_name(e.expected)) + ' ' +
                  std::to_string(e.depth);
  if (e.explicit_infeasible) s += " explicit-infeasible";
  return s;
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

EntryResult verify_entry(const std::string& dir, const CorpusEntry& e, const CorpusOptions& opt) {
  EntryResult r;
  r.entry = e;
  const Design d = parse_design_file(dir + "/" + e.file);

  CheckOptions co;
  co.time_budget_s = opt.time_budget_s;
  co.explicit_cap = opt.explicit_cap;
  co.bound = e.depth;
  co.prove = e.expected == VerdictKind::Proof;
  const Verdict ve = check(d, e.prop, co);
  r.emm = verdict_label(ve);
  r.method = ve.method;
  if (ve.kind == VerdictKind::Unknown) {
    r.budget_exhausted = true;
    r.detail = "emm budget exhausted";
    return r;
  }

  bool ok = ve.kind == e.expected;
  if (e.expected == VerdictKind::CE) ok = ok && ve.depth == e.depth;
  if (ve.kind == VerdictKind::CE) {
    ReplayResult rr = replay(d, *ve.witness, e.prop);
    if (!rr.valid) {
      ok = false;
      r.detail += "emm trace does not replay: " + rr.message + "; ";
    }
  }
  if (ve.kind == VerdictKind::Proof) r.proof_depth = ve.depth;

  if (!e.explicit_infeasible) {
    CheckOptions xo = co;
    xo.engine = EngineKind::Explicit;
    xo.prove = false;
    if (e.expected == VerdictKind::Proof) {
      xo.bound = std::max<std::size_t>(1, opt.confirm_factor * r.proof_depth);
    }
    const Verdict vx = check(d, e.prop, xo);
    r.expl = verdict_label(vx);
    if (vx.kind == VerdictKind::Unknown) {
      r.budget_exhausted = true;
      r.detail += "explicit budget exhausted; ";
      return r;
    }
    if (e.expected == VerdictKind::CE) {
      ok = ok && vx.kind == VerdictKind::CE && vx.depth == e.depth;
    } else {
      ok = ok && vx.kind == VerdictKind::NoCE;
    }
    if (vx.kind == VerdictKind::CE) {
      ReplayResult rr = replay(d, *vx.witness, e.prop);
      if (!rr.valid) {
        ok = false;
        r.detail += "explicit trace does not replay: " + rr.message + "; ";
      }
    }
  }
  r.pass = ok;
  if (!ok && r.detail.empty()) {
    r.detail = "expected " + std::string(verdict_name(e.expected)) + " " + std::to_string(e.depth);
  }
  return r;
}

std::vector<EntryResult> corpus_verify(const std::string& dir, const CorpusOptions& opt) {
  std::vector<EntryResult> out;
  for (const CorpusEntry& e : parse_manifest(read_file(dir + "/manifest.txt"))) {
    out.push_back(verify_entry(dir, e, opt));
  }
  return out;
}

namespace {

struct Source {
  std::string file;
  std::string text;
  std::vector<std::string> props;
  bool explicit_infeasible = false;
  std::size_t search_bound = 8;
};

// Oracle order: explicit CE search, then an EMM proof confirmed by an
// explicit search to twice its depth, else NO_CE at the search bound.
CorpusEntry decide(const Design& d, const Source& s, const std::string& prop,
                   std::size_t search_bound, std::size_t prove_bound) {
  CorpusEntry e;
  e.file = s.file;
  e.prop = prop;
  e.explicit_infeasible = s.explicit_infeasible;

  CheckOptions fo;
  fo.bound = search_bound;
  fo.engine = s.explicit_infeasible ? EngineKind::Emm : EngineKind::Explicit;
  const Verdict vf = check(d, prop, fo);
  if (vf.kind == VerdictKind::CE) {
    e.expected = VerdictKind::CE;
    e.depth = vf.depth;
    return e;
  }
  CheckOptions po;
  po.bound = prove_bound;
  po.prove = true;
  const Verdict vp = check(d, prop, po);
  if (vp.kind == VerdictKind::Proof) {
    bool confirmed = true;
    if (!s.explicit_infeasible) {
      CheckOptions xo;
      xo.engine = EngineKind::Explicit;
      xo.bound = std::max<std::size_t>(1, 2 * vp.depth);
      confirmed = check(d, prop, xo).kind == VerdictKind::NoCE;
    }
    if (confirmed) {
      e.expected = VerdictKind::Proof;
      e.depth = prove_bound;
      return e;
    }
  }
  e.expected = VerdictKind::NoCE;
  e.depth = search_bound;
  return e;
}

}  // namespace

std::string build_corpus(const std::string& dir, std::size_t random_designs, std::uint64_t seed) {
  std::filesystem::create_directories(dir);
  std::vector<Source> sources;
  sources.push_back({"stack_a3_d4.ir", gen_stack(3, 4, true), {"pop_after_push", "no_underflow"}});
  sources.push_back({"stack_a3_d4_noguard.ir", gen_stack(3, 4, false), {"no_underflow"}});
  sources.push_back({"fifo_a3_d4_w2.ir", gen_fifo(3, 4, 2), {"fifo_order"}});
  sources.push_back({"unwritten_a3_d2.ir", gen_unwritten(3, 2), {"same_addr_same_data"}});
  QuicksortParams small;
  small.n = 2;
  small.array_aw = 4;
  small.array_dw = 4;
  small.stack_aw = 4;
  small.stack_dw = 10;
  sources.push_back({"quicksort_n2_a4.ir", gen_quicksort(small), {"p1", "p2", "never_done"}, false, 30});
  small.n = 3;
  sources.push_back({"quicksort_n3_a4.ir", gen_quicksort(small), {"p1", "never_done"}, false, 30});
  sources.push_back({"quicksort_n3.ir", gen_quicksort({}), {"p2"}, true, 30});
  sources.push_back({"gated_a12_d32.ir", gen_gated(12, 32), {"acc_zero"}, true});
  for (std::size_t i = 0; i < random_designs; ++i) {
    const std::uint64_t s = fuzz_design_seed(seed, i);
    sources.push_back({"random_" + std::to_string(s) + ".ir", gen_random(s), {"p"}});
  }

  std::ostringstream manifest;
  manifest << "# Corpus manifest: file prop expected depth [explicit-infeasible]\n"
           << "# Regenerate with: emmbmc gen corpus --dir <dir> --random " << random_designs
           << " --seed " << seed << "\n"
           << "# Expected verdicts: explicit-engine CE search to the search bound (8, or\n"
           << "# 30 for quicksort; EMM when explicit-infeasible), else an EMM proof within\n"
           << "# bound 60 confirmed by an explicit search to twice the proof depth, else\n"
           << "# NO_CE at the search bound.\n";
  for (const Source& s : sources) {
    std::ofstream(dir + "/" + s.file) << s.text;
    const Design d = parse_design(s.text);
    // First comment line of each file names its generator parameters.
    const std::string params = s.text.substr(s.text.find('#'), s.text.find('\n', s.text.find('#')) - s.text.find('#'));
    manifest << params << '\n';
    for (const std::string& prop : s.props) {
      manifest << format_entry(decide(d, s, prop, s.search_bound, 60)) << '\n';
    }
  }
  std::ofstream(dir + "/manifest.txt") << manifest.str();
  return manifest.str();
}

}  // namespace emmbmc
