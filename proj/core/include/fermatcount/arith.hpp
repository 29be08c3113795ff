#pragma once
#include "fermatcount/rational.hpp"

#include <utility>
#include <vector>

namespace fermat {

// Signed factored integer: value = sign * prod p^e, factors sorted by p.
struct FactoredInteger {
  int sign = 0;  // -1, 0 never stored (factorize rejects 0), +1
  std::vector<std::pair<i64, int>> factors;
  i64 value() const;
  i64 abs_value() const;
};

// All primes up to at least limit (the shared cache holds the full 2e6
// sieve); callers iterating to a smaller bound must break past it.
const std::vector<i64>& primes_to(i64 limit);  // limit <= 2e6
bool is_prime(u64 n);                          // deterministic Miller-Rabin
FactoredInteger factorize(i64 n);              // error on n == 0
std::vector<i64> divisors(const FactoredInteger& n);

i64 gcd64(i64 a, i64 b);
i64 mod_pow(i64 base, i64 exp, i64 mod);
i64 mod_inverse(i64 a, i64 mod);  // error if gcd(a, mod) != 1
i64 isqrt64(i64 n);               // floor(sqrt(n)), exact; error if n < 0

// Cubic residue character mod 3: chi3(n) = +1, -1, 0 for n = 1, 2, 0 mod 3.
int chi3(i64 n);

// Jacobi symbol (a|n); error when n is even or n <= 0.
int jacobi(i64 a, i64 n);

// Multiplicative functions, evaluated exactly from a factorization.
Rat phi_over_n(const FactoredInteger& n);  // phi(n)/n
Rat div_fn(const FactoredInteger& n);      // prod over p^e || n of local divisor density
Rat r_tilde(const FactoredInteger& n);     // normalized chi3 divisor count
Rat u_tilde(const FactoredInteger& n);     // Dirichlet inverse-style weight with div = 1 * u_tilde
Rat c_tilde(const FactoredInteger& n);     // prod_{p|n} (1 - chi3(p)/p)
i64 tau_fn(const FactoredInteger& n);
int mu_fn(const FactoredInteger& n);
int omega_fn(const FactoredInteger& n);
i64 euler_phi(const FactoredInteger& n);

// Convenience overloads on plain integers (factorize internally).
Rat phi_over_n(i64 n);
Rat div_fn(i64 n);
Rat r_tilde(i64 n);
Rat u_tilde(i64 n);
Rat c_tilde(i64 n);
i64 tau_fn(i64 n);
int mu_fn(i64 n);
int omega_fn(i64 n);
i64 euler_phi(i64 n);

// (1 * chi3)(n) = sum over d | n of chi3(d), n >= 1.
i64 one_star_chi3(i64 n);

// Phi(n) = sum_{k<=n} phi(k); sieve-backed, n >= 0.
i64 phi_summatory(i64 n);

struct KloostermanValue {
  i64 a, b, c;
  double value;                 // the sum is real; imaginary part checked < 1e-9
  double weil_bound() const;    // tau(c) * sqrt(gcd(a,b,c)) * sqrt(c)
};
// S(a,b;c) = sum over x mod c, gcd(x,c)=1 of e((ax + b*xinv)/c); S(a,b;1) = 1.
KloostermanValue kloosterman(i64 a, i64 b, i64 c);

}  // namespace fermat
