#include "emmbmc/generators.hpp"

#include <map>
#include <random>
#include <sstream>
#include <utility>
#include <vector>

namespace emmbmc {

namespace {

// Emits design-IR text while tracking signal widths.
class IrWriter {
 public:
  explicit IrWriter(const std::string& name) { os_ << "design " << name << '\n'; }

  void comment(const std::string& text) { os_ << "# " << text << '\n'; }

  std::string input(const std::string& name, unsigned w) {
    os_ << "input " << name << ' ' << w << '\n';
    return declare(name, w);
  }

  std::string constant(unsigned w, std::uint64_t v) {
    auto key = std::make_pair(w, v);
    if (auto it = consts_.find(key); it != consts_.end()) return it->second;
    std::string name = "c" + std::to_string(w) + "_" + std::to_string(v);
    os_ << "const " << name << ' ' << w << ' ' << v << '\n';
    consts_.emplace(key, name);
    return declare(name, w);
  }

  /// Declares a latch whose next-state signal is named later.
  std::string latch(const std::string& name, unsigned w, const std::string& init,
                    const std::string& next) {
    os_ << "latch " << name << ' ' << w << " init " << init << " next " << next << '\n';
    return declare(name, w);
  }

  std::string gate(const std::string& op, std::vector<std::string> ops,
                   std::string name = {}) {
    if (name.empty()) name = "t" + std::to_string(tmp_++);
    unsigned w = width(ops.back());
    if (op == "eq" || op == "ltu") w = 1;
    if (op == "concat") {
      w = 0;
      for (const auto& o : ops) w += width(o);
    }
    os_ << op << ' ' << name;
    for (const auto& o : ops) os_ << ' ' << o;
    os_ << '\n';
    return declare(name, w);
  }

  std::string slice(const std::string& a, unsigned hi, unsigned lo, std::string name = {}) {
    if (name.empty()) name = "t" + std::to_string(tmp_++);
    os_ << "slice " << hi << ' ' << lo << ' ' << name << ' ' << a << '\n';
    return declare(name, hi - lo + 1);
  }

  std::string eqc(const std::string& a, std::uint64_t v) {
    return gate("eq", {a, constant(width(a), v)});
  }
  std::string add1(const std::string& a) { return gate("add", {a, constant(width(a), 1)}); }
  std::string sub1(const std::string& a) { return gate("sub", {a, constant(width(a), 1)}); }
  std::string mux(const std::string& s, const std::string& t, const std::string& e,
                  std::string name = {}) {
    return gate("mux", {s, t, e}, std::move(name));
  }
  std::string lnot(const std::string& a) { return gate("not", {a}); }

  /// Zero-extends or truncates to width w.
  std::string resize(const std::string& a, unsigned w) {
    const unsigned aw = width(a);
    if (aw == w) return a;
    if (aw > w) return slice(a, w - 1, 0);
    return gate("concat", {constant(w - aw, 0), a});
  }

  /// Nested mux: first matching condition wins, else `otherwise`.
  std::string select(const std::vector<std::pair<std::string, std::string>>& cases,
                     const std::string& otherwise, const std::string& name) {
    std::string cur = otherwise;
    for (std::size_t i = cases.size(); i-- > 0;) {
      cur = mux(cases[i].first, cases[i].second, cur, i == 0 ? name : std::string{});
    }
    if (cases.empty()) cur = gate("or", {otherwise, otherwise}, name);
    return cur;
  }

  void line(const std::string& text) { os_ << text << '\n'; }
  unsigned width(const std::string& s) const { return widths_.at(s); }
  std::string declare(const std::string& name, unsigned w) {
    widths_[name] = w;
    return name;
  }
  std::string text() const { return os_.str(); }

 private:
  std::ostringstream os_;
  std::map<std::string, unsigned> widths_;
  std::map<std::pair<unsigned, std::uint64_t>, std::string> consts_;
  int tmp_ = 0;
};

std::string memory_line(const std::string& name, unsigned aw, unsigned dw, unsigned w,
                        unsigned r, bool zero) {
  return "memory " + name + " aw " + std::to_string(aw) + " dw " + std::to_string(dw) +
         " wports " + std::to_string(w) + " rports " + std::to_string(r) + " init " +
         (zero ? "zero" : "arbitrary");
}

}  // namespace

std::string gen_quicksort(const QuicksortParams& p) {
  using namespace qs_pc;
  if (p.n < 2 || p.n > 8) throw GeneratorError("quicksort: n must be in 2..8");
  const unsigned iw = p.array_aw;
  if (iw < 4 || iw > 16) throw GeneratorError("quicksort: array aw must be in 4..16");
  if (p.stack_dw < 2 * iw + 2) throw GeneratorError("quicksort: stack dw too small for a frame");
  if (p.stack_aw < 4) throw GeneratorError("quicksort: stack aw must be at least 4");
  const unsigned dw = p.array_dw;

  IrWriter ir("quicksort" + std::to_string(p.n));
  ir.comment("gen quicksort n=" + std::to_string(p.n) + " array_aw=" + std::to_string(iw) +
             " array_dw=" + std::to_string(dw) + " stack_aw=" + std::to_string(p.stack_aw) +
             " stack_dw=" + std::to_string(p.stack_dw));
  ir.comment("pc: 0 init, 1 call, 2 wait-pivot, 3 loop, 4 compare, 5-6 swap, 7-8 final swap,");
  ir.comment("    9 push-left, 10 return, 11 call-right, 12-14 check, 15 finish, 16 error");

  ir.latch("pc", 5, "0", "pc_nx");
  ir.latch("lo", iw, "0", "lo_nx");
  ir.latch("hi", iw, "0", "hi_nx");
  ir.latch("i", iw, "0", "i_nx");
  ir.latch("j", iw, "0", "j_nx");
  ir.latch("piv", dw, "0", "piv_nx");
  ir.latch("tmp", dw, "0", "tmp_nx");
  ir.latch("sp", p.stack_aw, "0", "sp_nx");
  ir.latch("ar_addr", iw, "0", "ar_addr_nx");
  ir.latch("ar_re", 1, "0", "ar_re_nx");
  ir.latch("aw_addr", iw, "0", "aw_addr_nx");
  ir.latch("aw_data", dw, "0", "aw_data_nx");
  ir.latch("aw_we", 1, "0", "aw_we_nx");
  ir.latch("a0", dw, "0", "a0_nx");
  ir.latch("bad", 1, "0", "bad_nx");
  ir.latch("just_popped", 1, "0", "pop");
  ir.declare("rd_a", dw);
  ir.declare("rd_s", p.stack_dw);

  std::map<unsigned, std::string> is;
  for (unsigned s = kInit; s <= kError; ++s) is[s] = ir.gate("eq", {"pc", ir.constant(5, s)}, "is" + std::to_string(s));

  const std::string lo_ge_hi = ir.lnot(ir.gate("ltu", {"lo", "hi"}));
  const std::string j_lt_hi = ir.gate("ltu", {"j", "hi"});
  const std::string less = ir.gate("ltu", {"rd_a", "piv"}, "less");
  const std::string sp_zero = ir.eqc("sp", 0);

  // Stack frames: [2iw+1:2iw] tag, [2iw-1:iw] saved i, [iw-1:0] saved hi.
  const unsigned pad = p.stack_dw - 2 * iw - 2;
  std::vector<std::string> left_parts;
  if (pad) left_parts.push_back(ir.constant(pad, 0));
  left_parts.insert(left_parts.end(), {ir.constant(2, 1), "i", "hi"});
  const std::string frame_left = ir.gate("concat", left_parts, "frame_left");
  const std::string frame_right = ir.constant(p.stack_dw, std::uint64_t{2} << (2 * iw));
  ir.gate("or", {is[kPushLeft], is[kCallRight]}, "s_we");
  ir.mux(is[kPushLeft], frame_left, frame_right, "s_wdata");
  ir.gate("and", {is[kReturn], ir.lnot(sp_zero)}, "pop");
  ir.gate("sub", {"sp", ir.constant(p.stack_aw, 1)}, "s_raddr");
  const std::string tag = ir.slice("rd_s", 2 * iw + 1, 2 * iw, "tag");
  const std::string f_i = ir.slice("rd_s", 2 * iw - 1, iw, "f_i");
  const std::string f_hi = ir.slice("rd_s", iw - 1, 0, "f_hi");
  const std::string tag_left = ir.eqc(tag, 1);
  const std::string tag_right = ir.eqc(tag, 2);

  auto pc_const = [&](unsigned v) { return ir.constant(5, v); };
  const std::string ret_next =
      ir.mux(sp_zero, pc_const(kCheck0),
             ir.mux(tag_left, pc_const(kCallRight), ir.mux(tag_right, pc_const(kReturn), pc_const(kError))));
  const std::string ge_error = ir.gate("ltu", {ir.constant(5, kError), "pc"});
  ir.select({{is[kInit], pc_const(kCall)},
             {is[kCall], ir.mux(lo_ge_hi, pc_const(kReturn), pc_const(kWaitPivot))},
             {is[kWaitPivot], pc_const(kLoop)},
             {is[kLoop], ir.mux(j_lt_hi, pc_const(kCompare), pc_const(kFinal1))},
             {is[kCompare], ir.mux(less, pc_const(kSwap1), pc_const(kLoop))},
             {is[kSwap1], pc_const(kSwap2)},
             {is[kSwap2], pc_const(kLoop)},
             {is[kFinal1], pc_const(kFinal2)},
             {is[kFinal2], pc_const(kPushLeft)},
             {is[kPushLeft], pc_const(kCall)},
             {is[kReturn], ret_next},
             {is[kCallRight], pc_const(kCall)},
             {is[kCheck0], pc_const(kCheck1)},
             {is[kCheck1], pc_const(kCheck2)},
             {is[kCheck2], pc_const(kFinish)},
             {ge_error, pc_const(kError)}},
            "pc", "pc_nx");

  const std::string i1 = ir.add1("i");
  const std::string j1 = ir.add1("j");
  ir.select({{is[kInit], ir.constant(iw, 0)}, {is[kCallRight], i1}}, "lo", "lo_nx");
  ir.select({{is[kInit], ir.constant(iw, p.n - 1)},
             {is[kPushLeft], ir.mux(ir.gate("eq", {"i", "lo"}), "lo", ir.sub1("i"))},
             {"pop", f_hi}},
            "hi", "hi_nx");
  ir.select({{is[kCall], "lo"}, {is[kSwap2], i1}, {"pop", f_i}}, "i", "i_nx");
  ir.select({{is[kCall], "lo"},
             {ir.gate("and", {is[kCompare], ir.lnot(less)}), j1},
             {is[kSwap2], j1}},
            "j", "j_nx");
  ir.select({{is[kWaitPivot], "rd_a"}}, "piv", "piv_nx");
  ir.select({{is[kCompare], "rd_a"}, {is[kFinal1], "rd_a"}}, "tmp", "tmp_nx");
  ir.select({{"s_we", ir.add1("sp")}, {"pop", ir.sub1("sp")}}, "sp", "sp_nx");

  // Registered array interface.
  const std::string call_go = ir.gate("and", {is[kCall], ir.lnot(lo_ge_hi)});
  const std::string cmp_swap = ir.gate("and", {is[kCompare], less});
  ir.gate("or", {call_go, is[kLoop], cmp_swap, is[kCheck0], is[kCheck1]}, "ar_re_nx");
  ir.select({{is[kCall], "hi"},
             {is[kLoop], ir.mux(j_lt_hi, "j", "i")},
             {is[kCompare], "i"},
             {is[kCheck0], ir.constant(iw, 0)},
             {is[kCheck1], ir.constant(iw, 1)}},
            "ar_addr", "ar_addr_nx");
  ir.gate("or", {is[kSwap1], is[kSwap2], is[kFinal1], is[kFinal2]}, "aw_we_nx");
  ir.select({{is[kSwap1], "j"}, {is[kSwap2], "i"}, {is[kFinal1], "i"}, {is[kFinal2], "hi"}},
            "aw_addr", "aw_addr_nx");
  ir.select({{is[kSwap1], "rd_a"}, {is[kSwap2], "tmp"}, {is[kFinal1], "piv"}, {is[kFinal2], "tmp"}},
            "aw_data", "aw_data_nx");
  ir.select({{is[kCheck1], "rd_a"}}, "a0", "a0_nx");
  ir.select({{is[kCheck2], ir.gate("ltu", {"rd_a", "a0"})}}, "bad", "bad_nx");

  ir.line(memory_line("arr", iw, dw, 1, 1, false));
  ir.line("wport arr 0 addr aw_addr data aw_data en aw_we");
  ir.line("rport arr 0 addr ar_addr en ar_re out rd_a");
  ir.line(memory_line("stk", p.stack_aw, p.stack_dw, 1, 1, true));
  ir.line("wport stk 0 addr sp data s_wdata en s_we");
  ir.line("rport stk 0 addr s_raddr en pop out rd_s");

  ir.gate("not", {"bad"}, "p1_sig");
  ir.gate("or", {ir.lnot("just_popped"), is[kCallRight], is[kReturn]}, "p2_sig");
  ir.gate("not", {is[kFinish]}, "never_done_sig");
  ir.line("property p1 p1_sig");
  ir.line("property p2 p2_sig");
  ir.line("property never_done never_done_sig");
  return ir.text();
}

std::string gen_stack(unsigned aw, unsigned dw, bool guard) {
  if (aw < 1 || aw > 16 || dw < 1 || dw > 64) throw GeneratorError("stack: width out of range");
  IrWriter ir("stack");
  ir.comment("gen stack aw=" + std::to_string(aw) + " dw=" + std::to_string(dw) +
             " underflow_guard=" + (guard ? "1" : "0"));
  ir.input("push", 1);
  ir.input("pop", 1);
  ir.input("val", dw);
  ir.latch("sp", aw, "0", "sp_nx");
  ir.latch("prev_push", 1, "0", "do_push");
  ir.latch("prev_val", dw, "0", "val");
  ir.declare("rd", dw);
  const std::string sp_zero = ir.eqc("sp", 0);
  ir.gate("and", {"push", ir.lnot("pop")}, "do_push");
  std::vector<std::string> pop_terms{"pop", ir.lnot("push")};
  if (guard) pop_terms.push_back(ir.lnot(sp_zero));
  ir.gate("and", pop_terms, "do_pop");
  ir.select({{"do_push", ir.add1("sp")}, {"do_pop", ir.sub1("sp")}}, "sp", "sp_nx");
  ir.gate("sub", {"sp", ir.constant(aw, 1)}, "top");
  ir.line(memory_line("stk", aw, dw, 1, 1, true));
  ir.line("wport stk 0 addr sp data val en do_push");
  ir.line("rport stk 0 addr top en do_pop out rd");
  ir.gate("or", {ir.lnot(ir.gate("and", {"prev_push", "do_pop"})), ir.gate("eq", {"rd", "prev_val"})},
          "pap");
  ir.gate("not", {ir.gate("and", {"do_pop", sp_zero})}, "nu");
  ir.line("property pop_after_push pap");
  ir.line("property no_underflow nu");
  return ir.text();
}

std::string gen_fifo(unsigned aw, unsigned dw, unsigned writes) {
  if (aw < 1 || aw > 16 || dw < 1 || dw > 64) throw GeneratorError("fifo: width out of range");
  if (writes < 1 || writes > 8 || writes > (1u << aw)) {
    throw GeneratorError("fifo: writes must be in 1..min(8, 2^aw)");
  }
  IrWriter ir("fifo");
  ir.comment("gen fifo aw=" + std::to_string(aw) + " dw=" + std::to_string(dw) +
             " writes=" + std::to_string(writes));
  ir.comment("phase 0 pushes, phase 1 pops and compares, phase 2 halts");
  const unsigned cw = 4;
  ir.input("din", dw);
  ir.latch("phase", 2, "0", "phase_nx");
  ir.latch("cnt", cw, "0", "cnt_nx");
  ir.latch("wptr", aw, "0", "wptr_nx");
  ir.latch("rptr", aw, "0", "rptr_nx");
  ir.declare("rd", dw);
  const std::string pushing = ir.eqc("phase", 0);
  const std::string popping = ir.gate("eq", {"phase", ir.constant(2, 1)}, "popping");
  const std::string last = ir.eqc("cnt", writes - 1);
  std::vector<std::string> expected;
  for (unsigned k = 0; k < writes; ++k) {
    const std::string name = "exp" + std::to_string(k);
    ir.latch(name, dw, "0", name + "_nx");
    ir.mux(ir.gate("and", {pushing, ir.eqc("cnt", k)}), "din", name, name + "_nx");
    expected.push_back(name);
  }
  std::string want = expected[0];
  for (unsigned k = 1; k < writes; ++k) want = ir.mux(ir.eqc("cnt", k), expected[k], want);
  ir.select({{ir.gate("and", {pushing, last}), ir.constant(2, 1)},
             {ir.gate("and", {popping, last}), ir.constant(2, 2)}},
            "phase", "phase_nx");
  ir.select({{last, ir.constant(cw, 0)}, {ir.gate("or", {pushing, popping}), ir.add1("cnt")}},
            "cnt", "cnt_nx");
  ir.select({{pushing, ir.add1("wptr")}}, "wptr", "wptr_nx");
  ir.select({{popping, ir.add1("rptr")}}, "rptr", "rptr_nx");
  ir.line(memory_line("fifo", aw, dw, 1, 1, true));
  ir.line("wport fifo 0 addr wptr data din en " + pushing);
  ir.line("rport fifo 0 addr rptr en popping out rd");
  ir.gate("or", {ir.lnot(popping), ir.gate("eq", {"rd", want})}, "order_ok");
  ir.line("property fifo_order order_ok");
  return ir.text();
}

namespace {

// Deterministic draws independent of the standard library's distributions.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}
  std::uint64_t below(std::uint64_t n) { return n <= 1 ? 0 : rng_() % n; }
  unsigned range(unsigned lo, unsigned hi) { return lo + static_cast<unsigned>(below(hi - lo + 1)); }
  bool coin(unsigned percent = 50) { return below(100) < percent; }
  template <typename T>
  const T& pick(const std::vector<T>& v) { return v[below(v.size())]; }

 private:
  std::mt19937_64 rng_;
};

class RandomDesign {
 public:
  RandomDesign(std::uint64_t seed, const RandomCaps& caps)
      : d_(seed), caps_(caps), ir_("random_" + std::to_string(seed)) {}

  std::string build(std::uint64_t seed);

 private:
  std::string leaf(unsigned w, bool allow_rd) {
    std::vector<std::string> pool;
    for (const auto& s : base_[w]) pool.push_back(s);
    if (allow_rd) {
      for (const auto& s : rds_[w]) pool.push_back(s);
    }
    if (pool.empty() || d_.coin(15)) return ir_.constant(w, d_.below(std::uint64_t{1} << w));
    return d_.pick(pool);
  }

  std::string expr(unsigned w, int depth, bool allow_rd) {
    if (depth == 0 || d_.coin(30)) {
      // Widen or narrow a leaf of another width now and then.
      if (d_.coin(20)) {
        const unsigned ow = d_.pick(widths_);
        return ir_.resize(leaf(ow, allow_rd), w);
      }
      return leaf(w, allow_rd);
    }
    switch (d_.below(w == 1 ? 8 : 6)) {
      case 0: return ir_.gate("and", {expr(w, depth - 1, allow_rd), expr(w, depth - 1, allow_rd)});
      case 1: return ir_.gate("or", {expr(w, depth - 1, allow_rd), expr(w, depth - 1, allow_rd)});
      case 2: return ir_.gate("xor", {expr(w, depth - 1, allow_rd), expr(w, depth - 1, allow_rd)});
      case 3: return ir_.gate(d_.coin() ? "add" : "sub",
                              {expr(w, depth - 1, allow_rd), expr(w, depth - 1, allow_rd)});
      case 4: return ir_.lnot(expr(w, depth - 1, allow_rd));
      case 5: return ir_.mux(expr(1, depth - 1, allow_rd), expr(w, depth - 1, allow_rd),
                             expr(w, depth - 1, allow_rd));
      default: {
        const unsigned ow = d_.pick(widths_);
        return ir_.gate(d_.coin() ? "eq" : "ltu", {expr(ow, depth - 1, allow_rd), leaf(ow, allow_rd)});
      }
    }
  }

  Draw d_;
  RandomCaps caps_;
  IrWriter ir_;
  std::map<unsigned, std::vector<std::string>> base_, rds_;
  std::vector<unsigned> widths_;
};

std::string RandomDesign::build(std::uint64_t seed) {
  const unsigned m = d_.range(1, caps_.max_aw);
  const unsigned n = d_.range(1, caps_.max_dw);
  const unsigned W = d_.range(1, caps_.max_wports);
  const unsigned R = d_.range(1, caps_.max_rports);
  const bool zero = d_.coin();
  ir_.comment("gen random seed=" + std::to_string(seed) + " aw=" + std::to_string(m) +
              " dw=" + std::to_string(n) + " wports=" + std::to_string(W) +
              " rports=" + std::to_string(R));
  widths_ = {1, m, n};

  const unsigned ninputs = d_.range(1, 3);
  for (unsigned k = 0; k < ninputs; ++k) {
    const unsigned w = d_.pick(widths_);
    base_[w].push_back(ir_.input("in" + std::to_string(k), w));
  }
  struct LatchDecl {
    std::string name;
    unsigned w;
  };
  std::vector<LatchDecl> latches;
  const unsigned nlatches = d_.range(1, caps_.max_latches);
  for (unsigned k = 0; k < nlatches; ++k) {
    const unsigned w = d_.pick(widths_);
    const std::string name = "l" + std::to_string(k);
    std::string init = d_.coin(20) ? "x" : std::to_string(d_.below(std::uint64_t{1} << w));
    if (d_.coin(40)) init = "0";
    ir_.latch(name, w, init, name + "_nx");
    base_[w].push_back(name);
    latches.push_back({name, w});
  }

  // Port signals come from inputs, latches and constants only.
  std::vector<std::string> waddr, wdata, wen;
  for (unsigned p = 0; p < W; ++p) {
    waddr.push_back(expr(m, d_.coin(30) ? 1 : 0, false));
    wdata.push_back(expr(n, d_.coin(30) ? 1 : 0, false));
    std::string en = d_.coin(15) ? ir_.constant(1, 1) : leaf(1, false);
    if (p > 0) {
      // Race guard: yield to lower ports writing the same address.
      std::vector<std::string> clash;
      for (unsigned q = 0; q < p; ++q) {
        clash.push_back(ir_.gate("and", {wen[q], ir_.gate("eq", {waddr[q], waddr[p]})}));
      }
      std::string any = clash.size() == 1 ? clash[0] : ir_.gate("or", clash);
      en = ir_.gate("and", {en, ir_.lnot(any)});
    }
    wen.push_back(en);
  }
  std::vector<std::string> raddr, ren;
  for (unsigned r = 0; r < R; ++r) {
    raddr.push_back(expr(m, d_.coin(30) ? 1 : 0, false));
    ren.push_back(d_.coin(30) ? ir_.constant(1, 1) : leaf(1, false));
    const std::string rd = "rd" + std::to_string(r);
    ir_.declare(rd, n);
    rds_[n].push_back(rd);
  }

  for (const auto& l : latches) {
    ir_.gate("or", {expr(l.w, 2, true), ir_.constant(l.w, 0)}, l.name + "_nx");
  }

  // Property: forbid a conjunction of one or two random atoms, preferring
  // atoms over enabled reads. The shadow atom records the last port-0 write
  // and fails only if a later read of that address returns something else.
  std::vector<std::string> atoms;
  if (d_.coin(35)) {
    ir_.declare("sv", 1);
    ir_.declare("sa", m);
    ir_.declare("sd", n);
    const std::string v = ir_.latch("sv", 1, "0", ir_.gate("or", {wen[0], "sv"}));
    const std::string a = ir_.latch("sa", m, "0", ir_.mux(wen[0], waddr[0], "sa"));
    const std::string dt = ir_.latch("sd", n, "0", ir_.mux(wen[0], wdata[0], "sd"));
    const unsigned r = static_cast<unsigned>(d_.below(R));
    const std::string hit = ir_.gate("and", {ren[r], v, ir_.gate("eq", {raddr[r], a})});
    atoms.push_back(ir_.gate("and", {hit, ir_.lnot(ir_.gate("eq", {"rd" + std::to_string(r), dt}))}));
  }
  const unsigned natoms = atoms.empty() ? d_.range(1, 2) : d_.range(0, 1);
  for (unsigned k = 0; k < natoms; ++k) {
    if (d_.coin(60)) {
      const unsigned r = static_cast<unsigned>(d_.below(R));
      const std::string cmp = d_.coin(70)
          ? ir_.eqc("rd" + std::to_string(r), d_.below(std::uint64_t{1} << n))
          : ir_.gate("eq", {"rd" + std::to_string(r), leaf(n, false)});
      atoms.push_back(ir_.gate("and", {ren[r], cmp}));
    } else {
      atoms.push_back(expr(1, 2, true));
    }
  }
  // Delay: a saturating step counter keeps the violation away from the
  // first frames.
  if (d_.coin(50)) {
    const std::string cnt = ir_.declare("cnt", 3);
    ir_.latch(cnt, 3, "0", ir_.mux(ir_.eqc(cnt, 7), cnt, ir_.add1(cnt)));
    atoms.push_back(ir_.lnot(ir_.gate("ltu", {cnt, ir_.constant(3, d_.range(1, 5))})));
  }
  const std::string bad = atoms.size() == 1 ? atoms[0] : ir_.gate("and", atoms);
  ir_.gate("not", {bad}, "p_sig");

  ir_.line(memory_line("mem", m, n, W, R, zero));
  for (unsigned p = 0; p < W; ++p) {
    ir_.line("wport mem " + std::to_string(p) + " addr " + waddr[p] + " data " + wdata[p] +
             " en " + wen[p]);
  }
  for (unsigned r = 0; r < R; ++r) {
    ir_.line("rport mem " + std::to_string(r) + " addr " + raddr[r] + " en " + ren[r] +
             " out rd" + std::to_string(r));
  }
  ir_.line("property p p_sig");
  return ir_.text();
}

}  // namespace

std::string gen_random(std::uint64_t seed, const RandomCaps& caps) {
  if (caps.max_aw < 1 || caps.max_dw < 1 || caps.max_wports < 1 || caps.max_rports < 1 ||
      caps.max_latches < 1 || caps.max_aw > 16 || caps.max_dw > 64) {
    throw GeneratorError("random: caps out of range");
  }
  return RandomDesign(seed, caps).build(seed);
}

std::string gen_unwritten(unsigned aw, unsigned dw) {
  if (aw < 1 || aw > 16 || dw < 1 || dw > 64) throw GeneratorError("unwritten: width out of range");
  IrWriter ir("unwritten_reads");
  ir.comment("gen unwritten aw=" + std::to_string(aw) + " dw=" + std::to_string(dw));
  ir.input("addr", aw);
  ir.latch("prev", dw, "0", "rd");
  ir.latch("prev_addr", aw, "0", "addr");
  ir.latch("valid", 1, "0", ir.constant(1, 1));
  ir.declare("rd", dw);
  ir.line(memory_line("mem", aw, dw, 1, 1, false));
  ir.line("wport mem 0 addr " + ir.constant(aw, 0) + " data " + ir.constant(dw, 0) + " en " +
          ir.constant(1, 0));
  ir.line("rport mem 0 addr addr en " + ir.constant(1, 1) + " out rd");
  const std::string same = ir.gate("and", {"valid", ir.gate("eq", {"prev_addr", "addr"})});
  ir.gate("or", {ir.lnot(same), ir.gate("eq", {"prev", "rd"})}, "ok");
  ir.line("property same_addr_same_data ok");
  return ir.text();
}

std::string gen_gated(unsigned aw, unsigned dw) {
  if (aw < 1 || aw > 16 || dw < 1 || dw > 64) throw GeneratorError("gated: width out of range");
  IrWriter ir("gated");
  ir.comment("gen gated aw=" + std::to_string(aw) + " dw=" + std::to_string(dw));
  ir.comment("the write gate clears itself, so write data is zero from cycle 2 on");
  ir.input("we", 1);
  ir.input("re", 1);
  ir.input("din", dw);
  ir.input("waddr", aw);
  ir.input("raddr", aw);
  ir.latch("gate", 1, "0", ir.constant(1, 0));
  ir.latch("wd", dw, "0", "wd_nx");
  ir.latch("acc", dw, "0", "acc_nx");
  ir.declare("rd", dw);
  ir.mux("gate", "din", ir.constant(dw, 0), "wd_nx");
  ir.gate("or", {"acc", ir.mux("re", "rd", ir.constant(dw, 0))}, "acc_nx");
  ir.line(memory_line("ram", aw, dw, 1, 1, true));
  ir.line("wport ram 0 addr waddr data wd en we");
  ir.line("rport ram 0 addr raddr en re out rd");
  ir.gate("eq", {"acc", ir.constant(dw, 0)}, "acc_ok");
  ir.line("property acc_zero acc_ok");
  return ir.text();
}

}  // namespace emmbmc
