#pragma once
#include "fermatcount/arith.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace fermat {

// Multiplicative function with f(p) = 1 + delta*chi3(p) + O(1/p), evaluated
// on squarefree arguments.  delta declares the twist; the Euler-product
// routines verify the shape and reject divergent inputs.
struct GClassFunction {
  std::string name;
  std::function<Rat(const FactoredInteger&)> eval;
  int delta = 0;  // 0 or 1
};

GClassFunction gclass_one();      // f = 1                          (delta 0)
GClassFunction gclass_u_tilde();  // f(p) = 1 - 2/p                 (delta 0)
GClassFunction gclass_c_tilde();  // f(p) = 1 - chi3(p)/p           (delta 0)
GClassFunction gclass_twist();    // f(p) = 1 + chi3(p)             (delta 1)
GClassFunction gclass_r_tilde();  // f(p) = (1 + chi3(p))(1 - 1/p)  (delta 1)

struct ProgressionQuery {
  i64 X = 0;  // summation range n <= X
  i64 q = 1;  // modulus; q = 1 means no congruence condition
  i64 a = 0;  // residue class mod q
  i64 k = 1;  // extra gcd(n,k) = 1 constraint (squarefree engine only)
  bool squarefree = false;
};

struct ProgressionSum {
  double exact = 0;      // the sum (also in exact_int for the integer engine)
  i64 exact_int = 0;
  double main_term = 0;
  double error = 0;       // exact - main_term
  double normalized = 0;  // |error| / (X^{1/3} sqrt(q) tau(q)^2)
};

// Sum of (1*chi3)(n) over n <= X, n = a mod q, exactly, via a divisor sieve.
// The predicted main term is (pi/3^{3/2}) c_tilde(q) X / q and requires
// gcd(q, 3a) = 1.  Guard: X <= 10^7; k and squarefree must be left default.
ProgressionSum progression_sum(const ProgressionQuery& qry);

// Same query for a G-class function over squarefree n with gcd(n,k) = 1:
// exact sum in extended precision, main term c(f) (phi(k)/k) fhat(kq) X/q.
// The main term requires gcd(q, 3ak) = 1 and kq squarefree, coprime to 3.
// Here the normalization denominator is X^{1/2} sqrt(q) tau(kq)^2.
ProgressionSum progression_sum(const ProgressionQuery& qry, const GClassFunction& f);

struct EulerConstant {
  double value = 0;          // pi/3^{3/2} * prod_{p <= cutoff} local factor
  double tail_relative = 0;  // first-omitted-term bound on the relative tail
  double shape_bound = 0;    // 1 + sup_p |p (f(p) - 1 - delta chi3(p))| observed
  i64 cutoff = 0;
};

// The constant c(f) = pi/3^{3/2} prod_p (1 + f(p)/p)(1 - 1/p)(1 - chi3(p)/p).
// Errors when the observed shape bound exceeds 1000 (divergent input).
EulerConstant euler_constant(const GClassFunction& f, i64 cutoff = 1000000);

// fhat(n) = c_tilde(n) prod_{p|n} (1 + f(p)/p)^{-1}(1 - 1/p)^{-1}(1 - chi3(p)/p)^{-1}
// for squarefree n coprime to 3.
Rat f_hat(const GClassFunction& f, const FactoredInteger& n);
Rat f_hat(const GClassFunction& f, i64 n);

struct PairSumQuery {
  i64 x = 0, y = 0;        // box t <= x, s <= y
  i64 q = 1;               // congruence modulus
  i64 sigma = 0, tau = 0;  // s = sigma, t = tau mod q
  i64 k = 1;               // gcd(st, k) = 1
};

struct PairSum {
  double exact = 0;      // sum of f1(s) f2(t) over coprime squarefree pairs
  double main_term = 0;  // c1 c2 Lambda fhat1(kq) fhat2(kq) (phi(k)/k)^2 xy/q^2
  double error = 0;
  double ratio = 0;  // exact / main_term (0 when the main term vanishes)
};

// Double sum over coprime squarefree (s,t) in the box with the congruence
// and gcd conditions.  Requires gcd(q, 3 k sigma tau) = 1 and kq squarefree
// coprime to 3.  Guard: x, y <= 10^5.
PairSum coprime_pair_sum(const PairSumQuery& qry, const GClassFunction& f1,
                         const GClassFunction& f2);

// Residue classes (sigma, tau) mod 8 d1 d2 with sigma = tau = 1 mod 8,
// d1 | sigma^2 + sigma tau + tau^2, d2 | sigma - tau, gcd(sigma, tau, d) = 1.
// Requires d1, d2 squarefree and coprime to 6, d1 d2 <= 100.
std::vector<std::pair<i64, i64>> fugue_residues(i64 d1, i64 d2);

// D(x) = sum over coprime (s,t), s in (x/4, x/2], t in (x/2, x], both
// 1 mod 8, of div(t^3 - s^3) r_tilde(st).  Exact.  Guard: 2 <= x <= 4096.
Rat D_sum(i64 x);

struct DyadicSum {
  i64 x = 0;
  std::vector<std::pair<int, Rat>> levels;  // (n, D(2^n)) for 2 <= n <= log2(x)
  Rat aggregate;                            // sum of 4^{-n} D(2^n)
  double gfrak_direct = -1;  // direct density sum over the top box; -1 if skipped
};

// Dyadic lower-bound aggregate for the singular-series average.  With
// direct_check and x <= 256, also sums sigma_inf * prod_{p <= 30} sigma_p
// over the isotropic fibres of the top box as an inequality cross-check.
DyadicSum gfrak_lower(i64 x, bool direct_check = false);

}  // namespace fermat
