#pragma once

#include <string>

#include "poro/measure.hpp"
#include "poro/sets.hpp"

namespace poro {

// Front-end entry point; returns the process exit code
// (0 ok, 2 validation error, 3 check failure).
int run_cli(int argc, const char* const* argv);

// Measure / set construction from a short inline spec ("lebesgue",
// "bernoulli:0.25", "comb:2:0;3", "counterexample", "example:1:2:1:4", ...)
// or from a key-value spec file path.
CascadeMeasure load_measure(const std::string& spec, int max_depth);
DyadicSet load_set(const std::string& spec, int build_depth);

}  // namespace poro
