#pragma once
#include "fermatcount/conics.hpp"

#include <string>
#include <utility>
#include <vector>

namespace fermat {

struct PrimVec4 {
  i64 x0 = 0, x1 = 0, x2 = 0, x3 = 0;
};

// The three rational lines of x0^3 + x1^3 + x2^3 + x3^3 = 0: coordinates pair
// off with opposite signs.
bool on_fermat_line(const PrimVec4& v);
// The rational lines of x0(x0^2+3x1^2) = x2(x2^2+3x3^2): x0*x2*(x2-x0) = 0.
bool on_x_line(const PrimVec4& v);

// Primitive integer vectors of sup norm <= B lying on the three lines of
// either surface: 24 * sum_{k<=B} phi(k) - 6 (the pairwise intersection
// points are shared).
i64 excluded_on_lines(i64 B);

struct FibreContribution {
  i64 s = 0, t = 0;
  i64 points = 0;  // vectors contributed by the fibre pair +-(s,t)
};

struct CountReport {
  i64 bound = 0;
  i64 count = 0;  // primitive vectors off the lines, both signs; always even
  i64 excluded_on_lines = 0;
  std::string method;  // "direct" or "fibration"
  std::vector<FibreContribution> breakdown;  // fibration only; sums to count
};

// Primitive vectors on the Fermat cubic, off the lines, sup norm <= B.
// Meet-in-the-middle on a^3 + b^3; primitivity and line membership checked on
// each assembled vector.  Resource guard: B <= 5000.
CountReport count_N(i64 B, int workers = 1);

// The vectors themselves (sorted), for orbit inspection at small B.
std::vector<PrimVec4> fermat_solutions(i64 B, int workers = 1);

// Primitive vectors on X, off the lines, via tabulation of a(a^2+3b^2).
// Resource guard: B <= 10000.
CountReport count_NX_direct(i64 B, int workers = 1);

// The same count as a sum of per-fibre conic counts: coprime (s,t) with
// t > 0 (or t = 0, s > 0) and nonsingular isotropic fibre, each contributing
// twice its x >= 1 solution count.  Exactly equal to count_NX_direct.
CountReport count_NX_fibration(i64 B, int workers = 1);

struct LogPowerFit {
  double c0 = 0, c1 = 0, c2 = 0, c3 = 0;  // count/B ~ c3 L^3 + ... + c0, L = log B
  double rms_residual = 0;                // in units of count/B
};

// Least squares for count/B against a cubic in log B.  Requires >= 6 samples
// with strictly increasing positive B; degenerate design matrix errors.
LogPowerFit fit_log_power(const std::vector<std::pair<i64, double>>& samples);

}  // namespace fermat
