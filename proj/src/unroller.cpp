#include "emmbmc/unroller.hpp"

#include <algorithm>

namespace emmbmc {

std::vector<NodeId> cone_latches(const Design& design, NodeId root) {
  std::vector<bool> seen(design.nodes().size(), false);
  std::vector<bool> mem_seen(design.memories().size(), false);
  std::vector<NodeId> stack{root};
  std::vector<NodeId> out;
  auto push = [&](NodeId id) {
    if (!seen[id]) stack.push_back(id);
  };
  while (!stack.empty()) {
    NodeId id = stack.back();
    stack.pop_back();
    if (seen[id]) continue;
    seen[id] = true;
    const Node& n = design.node(id);
    if (n.op == Op::Latch) out.push_back(id);
    for (NodeId o : n.operands) push(o);
    if (n.op == Op::MemRead) {
      const Memory& m = design.memories()[n.mem];
      push(m.rports[n.port].addr);
      push(m.rports[n.port].en);
      if (!mem_seen[n.mem]) {
        mem_seen[n.mem] = true;
        for (const auto& wp : m.wports) {
          push(wp.addr);
          push(wp.data);
          push(wp.en);
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Unroller::Unroller(const Design& design, const BitNetlist& net, ConstraintStore& store,
                   NodeId property, UnrollOptions options)
    : design_(design), net_(net), store_(store), property_(property), opt_(std::move(options)) {
  init_ = store_.new_var();
  cps_.push_back(store_.true_lit());
  lfp_.push_back(store_.true_lit());
  if (opt_.latch_guards) {
    for (NodeId id : design_.latches()) {
      Lit g = store_.new_var();
      guards_.push_back(g);
      guard_owner_.emplace(g.code, id);
      guard_of_.emplace(id, g);
    }
  }
  state_latches_ = cone_latches(design_, property_);
  for (NodeId id : state_latches_) {
    for (AigLit b : net_.bits[id]) state_vars_.push_back(b.var());
  }
}

std::optional<NodeId> Unroller::guard_latch(Lit guard) const {
  auto it = guard_owner_.find(guard.code);
  if (it == guard_owner_.end()) return std::nullopt;
  return it->second;
}

Lit Unroller::fold_and(Lit a, Lit b) {
  const Lit t = store_.true_lit(), f = store_.false_lit();
  if (a == f || b == f || a == ~b) return f;
  if (a == t) return b;
  if (b == t || a == b) return a;
  return store_.make_and(a, b);
}

std::vector<Lit> Unroller::lits(std::size_t k, const std::vector<AigLit>& v) const {
  std::vector<Lit> out;
  out.reserve(v.size());
  for (AigLit a : v) out.push_back(lit(k, a));
  return out;
}

std::uint64_t Unroller::value(std::size_t k, NodeId node) const {
  std::uint64_t v = 0;
  const auto& bits = net_.bits[node];
  for (std::size_t b = 0; b < bits.size(); ++b) {
    if (store_.value(lit(k, bits[b]))) v |= std::uint64_t{1} << b;
  }
  return v;
}

std::size_t Unroller::unroll() {
  const std::size_t k = frames_.size();
  const auto& nodes = net_.aig.nodes();
  std::vector<Lit> f(nodes.size());
  f[0] = store_.false_lit();

  std::unordered_map<std::uint32_t, const LatchBit*> latch_of;
  for (const LatchBit& lb : net_.latches) latch_of.emplace(lb.var, &lb);

  for (std::uint32_t v = 1; v < nodes.size(); ++v) {
    const AigNode& n = nodes[v];
    switch (n.kind) {
      case AigKind::Const:
        f[v] = store_.false_lit();
        break;
      case AigKind::Input:
      case AigKind::MemRead:
        f[v] = store_.new_var();
        break;
      case AigKind::Latch: {
        const LatchBit& lb = *latch_of.at(v);
        std::optional<Lit> guard;
        if (opt_.latch_guards) guard = guard_of_.at(lb.node);
        if (k == 0) {
          f[v] = store_.new_var();
          if (lb.init) {
            CategoryScope scope(store_, Category::InitState);
            Lit x = *lb.init ? f[v] : ~f[v];
            if (guard) {
              store_.add_clause({~init_, ~*guard, x});
            } else {
              store_.add_clause({~init_, x});
            }
          }
        } else {
          Lit prev = lit(k - 1, lb.next);
          if (!guard) {
            f[v] = prev;
          } else {
            CategoryScope scope(store_, Category::Transition);
            f[v] = store_.new_var();
            store_.add_clause({~*guard, ~f[v], prev});
            store_.add_clause({~*guard, f[v], ~prev});
          }
        }
        break;
      }
      case AigKind::And: {
        CategoryScope scope(store_, Category::Transition);
        auto in = [&f](AigLit a) { return a.complemented() ? ~f[a.var()] : f[a.var()]; };
        f[v] = fold_and(in(n.a), in(n.b));
        break;
      }
    }
  }
  frames_.push_back(std::move(f));

  std::vector<Lit> we;
  for (std::size_t m = 0; m < net_.memories.size(); ++m) {
    if (!opt_.modeled_memories.empty() && !opt_.modeled_memories[m]) continue;
    for (const auto& wp : net_.memories[m].wports) {
      Lit e = lit(k, wp.en);
      if (e != store_.false_lit()) we.push_back(e);
    }
  }
  writes_.push_back(std::move(we));

  props_.push_back(lit(k, net_.bits[property_][0]));
  {
    CategoryScope scope(store_, Category::Property);
    cps_.push_back(fold_and(cps_[k], props_[k]));
  }
  return k;
}

Lit Unroller::distinct(std::size_t a, std::size_t b) {
  std::vector<Lit> clause;
  const Lit d = store_.new_var();
  clause.push_back(~d);
  for (std::uint32_t v : state_vars_) {
    Lit x = frames_[a][v], y = frames_[b][v];
    if (x == y) continue;
    if (x == ~y) return store_.true_lit();
    Lit diff = store_.new_var();
    store_.add_clause({~diff, x, y});
    store_.add_clause({~diff, ~x, ~y});
    clause.push_back(diff);
  }
  if (opt_.memory_aware_lfp) {
    for (std::size_t j = a; j < b; ++j) {
      for (Lit e : writes_[j]) {
        if (e == store_.true_lit()) return store_.true_lit();
        clause.push_back(e);
      }
    }
  }
  store_.add_clause(clause);
  return d;
}

Lit Unroller::loop_free(std::size_t i) {
  CategoryScope scope(store_, Category::LoopFree);
  while (lfp_.size() <= i) {
    const std::size_t j = lfp_.size();
    const Lit l = store_.new_var();
    store_.add_clause({~l, lfp_[j - 1]});
    for (std::size_t a = 0; a < j; ++a) {
      Lit d = distinct(a, j);
      if (d != store_.true_lit()) store_.add_clause({~l, d});
    }
    lfp_.push_back(l);
  }
  return lfp_[i];
}

}  // namespace emmbmc
