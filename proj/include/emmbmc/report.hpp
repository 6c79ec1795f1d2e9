#pragma once

#include <string>

#include "emmbmc/engine.hpp"

namespace emmbmc {

/// Exit status for a verdict: 10 CE, 20 PROOF, 30 NO_CE, 40 unknown.
int verdict_exit_code(const Verdict& v);

/// Line-oriented key=value report including per-depth statistics.
std::string verdict_text(const Verdict& v, bool with_timings = true);

/// Machine-readable JSON report of the same content.
std::string verdict_json(const Verdict& v);

}  // namespace emmbmc
