#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "emmbmc/design.hpp"

namespace testutil {

// Small fixed designs shared by several test files.
inline const char* kToggle =
    "design toggle\n"
    "input unused 1\n"
    "latch t 1 init 0 next nt\n"
    "not nt t\n"
    "not p t\n"
    "property p p\n";

inline const char* kFrozen =
    "design frozen\n"
    "latch f 1 init 0 next f\n"
    "not p f\n"
    "property p p\n";

inline const char* kCounter2 =
    "design counter\n"
    "const one 2 1\n"
    "const three 2 3\n"
    "latch c 2 init 0 next cn\n"
    "add cn c one\n"
    "eq at3 c three\n"
    "not p at3\n"
    "property p p\n";

// Writes `wd` at address `wa` when `we`; reads `ra` when `re`. The property
// says the read returns the value held in `expect`.
inline std::string ram_design(unsigned aw, unsigned dw, const std::string& init = "zero") {
  std::string s = "design ram\n";
  s += "input we 1\ninput wa " + std::to_string(aw) + "\ninput wd " + std::to_string(dw) + "\n";
  s += "input re 1\ninput ra " + std::to_string(aw) + "\ninput expect " + std::to_string(dw) + "\n";
  s += "memory m aw " + std::to_string(aw) + " dw " + std::to_string(dw) +
       " wports 1 rports 1 init " + init + "\n";
  s += "wport m 0 addr wa data wd en we\n";
  s += "rport m 0 addr ra en re out rd\n";
  s += "eq same rd expect\nnot nre re\nor p nre same\n";
  s += "property p p\n";
  return s;
}

// One memory `<name>` of the given shape whose ports are driven by inputs
// `<name>_we<p>`, `<name>_wa<p>`, `<name>_wd<p>`, `<name>_re<r>`, `<name>_ra<r>`; read
// data `<name>_rd<r>`. Appends to `s` without a design line or property.
inline void add_shaped_memory(std::string& s, const std::string& name, unsigned m, unsigned n,
                              unsigned W, unsigned R, const std::string& init = "zero") {
  const std::string M = std::to_string(m), N = std::to_string(n);
  for (unsigned p = 0; p < W; ++p) {
    const std::string i = std::to_string(p);
    s += "input " + name + "_we" + i + " 1\ninput " + name + "_wa" + i + " " + M + "\ninput " +
         name + "_wd" + i + " " + N + "\n";
  }
  for (unsigned r = 0; r < R; ++r) {
    const std::string i = std::to_string(r);
    s += "input " + name + "_re" + i + " 1\ninput " + name + "_ra" + i + " " + M + "\n";
  }
  s += "memory " + name + " aw " + M + " dw " + N + " wports " + std::to_string(W) + " rports " +
       std::to_string(R) + " init " + init + "\n";
  for (unsigned p = 0; p < W; ++p) {
    const std::string i = std::to_string(p);
    s += "wport " + name + " " + i + " addr " + name + "_wa" + i + " data " + name + "_wd" + i +
         " en " + name + "_we" + i + "\n";
  }
  for (unsigned r = 0; r < R; ++r) {
    const std::string i = std::to_string(r);
    s += "rport " + name + " " + i + " addr " + name + "_ra" + i + " en " + name + "_re" + i +
         " out " + name + "_rd" + i + "\n";
  }
}

// Single memory `m` of the given shape; property `p` reads read port 0.
inline std::string shaped_design(unsigned m, unsigned n, unsigned W, unsigned R,
                                 const std::string& init = "zero") {
  std::string s = "design shape\n";
  add_shaped_memory(s, "m", m, n, W, R, init);
  s += "slice 0 0 p m_rd0\nproperty p p\n";
  return s;
}

inline std::uint64_t mask(unsigned w) { return w >= 64 ? ~0ull : (1ull << w) - 1; }

}  // namespace testutil
