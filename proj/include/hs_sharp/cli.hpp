#pragma once

// Command-line front end. run_cli is the whole program minus argv handling,
// so tests can drive it with in-memory streams.
//
//   hs_sharp constants          --n 3,4 --p 1,2,inf [--format csv|json]
//   hs_sharp profile            --n 3 --p 2 [--count 33]
//   hs_sharp verify             --n 3 --p inf [--mode extremal|random] [--samples k]
//                               [--seed s] [--truncation R] [--beta b]
//   hs_sharp scan-inequalities  [--which lemma|corollary1|corollary2|all] [grid flags]
//
// Global: --config <file> (key=value lines: base_order, max_refinements,
// abs_tol, rel_tol). HS_SHARP_THREADS caps worker threads.

#include <iosfwd>
#include <string>
#include <vector>

#include "hs_sharp/quadrature.hpp"

namespace hs_sharp {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitUsage = 2,
  kExitNonConvergence = 3,
  kExitViolation = 4,
};

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Applies key=value overrides to `base`. Blank lines and '#' comments are
/// skipped. Throws std::invalid_argument on unknown keys or bad values.
QuadratureSpec parse_config(std::istream& in, QuadratureSpec base = {});
QuadratureSpec load_config(const std::string& path, QuadratureSpec base = {});

}  // namespace hs_sharp
