#pragma once
#include "fermatcount/conics.hpp"

#include <vector>

namespace fermat {

// N*(p^n): primitive solutions of Q = 0 mod p^n.  Exact; below 2*10^4 the
// residue-table convolution and the Hensel splitting tree are both run and
// cross-checked.  Resource guard: p^n <= 10^8.
i64 count_primitive_zeros(const Fibre& f, i64 p, int n);

struct PadicDensity {
  i64 p = 0;
  Rat value;
  int stabilized_at = 0;  // least n with N*(p^m) p^{-2m} = value for all m >= n
};

// Exact p-adic density sigma_p = lim N*(p^n) p^{-2n}.
//  - p not dividing the discriminant: 1 - 1/p^2, stabilized at 1.
//  - odd p dividing it: closed form from the unit-coefficient character.
//  - p = 2, 3: exhaustive class splitting with Hensel certificates.
// Errors if the splitting tree exceeds its resource cap (message carries the
// partial normalized sequence).
PadicDensity sigma_p(const Fibre& f, i64 p);

struct ArchimedeanDensity {
  double value = 0;    // Richardson extrapolation over {epsilon, epsilon/10}
  double epsilon = 0;  // base epsilon
  i64 grid = 0;        // midpoint-rule panels on the y axis
};

// sigma_inf = (1/2 eps) vol{ |x| <= 1/max(|s|,|t|), |y|,|z| <= 1, |Q| <= eps }
// with the x-z slice areas in closed form and midpoint quadrature over y only.
ArchimedeanDensity sigma_infinity(const Fibre& f, double epsilon, i64 grid);
ArchimedeanDensity sigma_infinity(const Fibre& f);  // epsilon 1e-2, grid 8192
// Single-epsilon estimate without extrapolation (cross-check hook).
double sigma_infinity_raw(const Fibre& f, double epsilon, i64 grid);

struct DensityProduct {
  double sigma_inf = 0;
  std::vector<PadicDensity> finite;  // all p <= P plus every p | discriminant
  Rat tail_lower;                    // certified lower bound for prod over the rest
  double total() const;
};

// Error on anisotropic fibres.  The omitted primes all satisfy
// sigma_p = 1 - 1/p^2, and prod_{p > P} (1 - 1/p^2) >= 1 - 1/P.
DensityProduct density_product(const Fibre& f, i64 P);

}  // namespace fermat
