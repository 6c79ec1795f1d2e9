#include "emmbmc/report.hpp"

#include <sstream>

#include "json.hpp"

namespace emmbmc {

int verdict_exit_code(const Verdict& v) {
  switch (v.kind) {
    case VerdictKind::CE: return 10;
    case VerdictKind::Proof: return 20;
    case VerdictKind::NoCE: return 30;
    case VerdictKind::Unknown: return 40;
  }
  return 1;
}

namespace {

std::uint64_t memory_clauses(const CategoryCounts& c) {
  return c.clauses_in(Category::AddressCompare) + c.clauses_in(Category::Exclusivity) +
         c.clauses_in(Category::ReadData) + c.clauses_in(Category::InitConsistency);
}

}  // namespace

std::string verdict_text(const Verdict& v, bool with_timings) {
  std::ostringstream os;
  os << "verdict=" << verdict_name(v.kind) << '\n'
     << "depth=" << v.depth << '\n'
     << "property=" << v.property << '\n'
     << "engine=" << engine_name(v.engine) << '\n';
  if (v.kind == VerdictKind::Proof) os << "method=" << proof_method_name(v.method) << '\n';
  if (v.stable) os << "stable=1\n";
  if (!v.latch_reasons.empty()) {
    os << "latch_reasons=";
    bool first = true;
    for (const auto& n : v.latch_reasons) {
      os << (first ? "" : ",") << n;
      first = false;
    }
    os << '\n';
  }
  for (const DepthStats& s : v.stats) {
    os << "depth." << s.depth << ".clauses=" << s.counts.total_clauses() << '\n'
       << "depth." << s.depth << ".gates=" << s.counts.total_gates() << '\n'
       << "depth." << s.depth << ".memory_clauses=" << memory_clauses(s.counts) << '\n'
       << "depth." << s.depth << ".latch_reasons=" << s.latch_reasons << '\n';
    if (with_timings) os << "depth." << s.depth << ".solve_seconds=" << s.solve_seconds << '\n';
  }
  if (!v.stats.empty()) {
    const CategoryCounts& c = v.stats.back().counts;
    for (std::size_t i = 0; i < kNumCategories; ++i) {
      const auto cat = static_cast<Category>(i);
      os << "clauses." << category_name(cat) << '=' << c.clauses_in(cat) << '\n'
         << "gates." << category_name(cat) << '=' << c.gates_in(cat) << '\n';
    }
    os << "vars=" << v.stats.back().vars << '\n';
  }
  return os.str();
}

std::string verdict_json(const Verdict& v) {
  using nlohmann::json;
  json j;
  j["verdict"] = verdict_name(v.kind);
  j["depth"] = v.depth;
  j["property"] = v.property;
  j["engine"] = engine_name(v.engine);
  j["method"] = proof_method_name(v.method);
  j["stable"] = v.stable;
  j["latch_reasons"] = v.latch_reasons;
  json depths = json::array();
  for (const DepthStats& s : v.stats) {
    json d;
    d["depth"] = s.depth;
    d["solve_seconds"] = s.solve_seconds;
    d["vars"] = s.vars;
    d["latch_reasons"] = s.latch_reasons;
    json cats;
    for (std::size_t i = 0; i < kNumCategories; ++i) {
      const auto cat = static_cast<Category>(i);
      cats[std::string(category_name(cat))] = {{"clauses", s.counts.clauses_in(cat)},
                                               {"gates", s.counts.gates_in(cat)}};
    }
    d["counts"] = cats;
    depths.push_back(d);
  }
  j["depths"] = depths;
  json queries = json::array();
  for (const QueryRecord& q : v.queries) {
    queries.push_back({{"depth", q.depth},
                       {"kind", query_name(q.kind)},
                       {"status", q.status == sat::Status::Sat     ? "SAT"
                                  : q.status == sat::Status::Unsat ? "UNSAT"
                                                                   : "UNKNOWN"},
                       {"seconds", q.seconds}});
  }
  j["queries"] = queries;
  if (v.witness) j["witness"] = print_witness(*v.witness);
  return j.dump(2);
}

}  // namespace emmbmc
