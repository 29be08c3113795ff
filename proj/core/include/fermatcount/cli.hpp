#pragma once
#include <iosfwd>
#include <string>
#include <vector>

#include "fermatcount/rational.hpp"

namespace fermat {

// One fully-specified invocation.  Identical configs produce byte-identical
// output regardless of the worker count.
struct RunConfig {
  std::string command;
  i64 bound = 0;
  i64 s = 0, t = 0;   // fibre parameters; residue pair for pairsum
  i64 p = 0, pmax = 0;
  i64 x = 0;
  i64 modulus = 1;
  i64 residue = 0;
  std::vector<i64> twist;      // empty, or four coordinates
  std::string format = "csv";  // "csv" or "json"
  std::string out_path;        // empty writes to the given stream
  std::string in_path;         // fit input table
  int workers = 1;
  u64 seed = 0;  // reserved for sampled suites
};

// Executes one command, writing the result table to `out` (or to
// cfg.out_path when set) and diagnostics to `diag`.  Returns 0 on success,
// 1 on invalid input, 2 on an internal invariant violation.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& diag);

}  // namespace fermat
