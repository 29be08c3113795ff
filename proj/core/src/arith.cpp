#include "fermatcount/arith.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>

namespace fermat {

i64 FactoredInteger::value() const {
  i64 v = sign;
  for (auto& [p, e] : factors)
    for (int i = 0; i < e; i++) v *= p;
  return v;
}

i64 FactoredInteger::abs_value() const {
  i64 v = value();
  return v < 0 ? -v : v;
}

i64 gcd64(i64 a, i64 b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

i64 isqrt64(i64 n) {
  if (n < 0) throw std::invalid_argument("isqrt64: negative input");
  if (n == 0) return 0;
  i64 r = (i64)std::sqrt((double)n);
  while (r > 0 && r * r > n) r--;
  while ((r + 1) * (r + 1) <= n) r++;
  return r;
}

const std::vector<i64>& primes_to(i64 limit) {
  static std::vector<i64> primes;
  static i64 sieved = 0;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  if (limit > 2000000) throw std::invalid_argument("primes_to: limit above 2e6");
  if (limit > sieved) {
    i64 n = 2000000;
    std::vector<bool> comp(n + 1, false);
    primes.clear();
    for (i64 p = 2; p <= n; p++) {
      if (!comp[p]) {
        primes.push_back(p);
        for (i64 q = p * p; q <= n; q += p) comp[q] = true;
      }
    }
    sieved = n;
  }
  return primes;
}

static u64 mulmod_u(u64 a, u64 b, u64 m) { return (unsigned __int128)a * b % m; }

static u64 powmod_u(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod_u(r, b, m);
    b = mulmod_u(b, b, m);
    e >>= 1;
  }
  return r;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, s++;
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod_u(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 0; i < s - 1 && witness; i++) {
      x = mulmod_u(x, x, n);
      if (x == n - 1) witness = false;
    }
    if (witness) return false;
  }
  return true;
}

// Pollard rho with a deterministic parameter schedule.
static u64 pollard_rho(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; c++) {
    auto f = [&](u64 v) { return (mulmod_u(v, v, n) + c) % n; };
    u64 x = 2, y = 2, d = 1;
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      if (x == y) break;  // cycle closed without a factor; retry with next c
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != 1 && d != n) return d;
  }
}

static void factor_large(u64 n, std::vector<i64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back((i64)n);
    return;
  }
  u64 d = pollard_rho(n);
  factor_large(d, out);
  factor_large(n / d, out);
}

FactoredInteger factorize(i64 n) {
  if (n == 0) throw std::invalid_argument("factorize: zero has no factorization");
  FactoredInteger f;
  f.sign = n < 0 ? -1 : 1;
  u64 m = n < 0 ? (u64)(-(n + 1)) + 1 : (u64)n;
  std::vector<i64> ps;
  for (i64 p : primes_to(1000000)) {
    if ((u64)p * (u64)p > m) break;
    while (m % (u64)p == 0) {
      ps.push_back(p);
      m /= (u64)p;
    }
  }
  factor_large(m, ps);
  std::sort(ps.begin(), ps.end());
  for (size_t i = 0; i < ps.size();) {
    size_t j = i;
    while (j < ps.size() && ps[j] == ps[i]) j++;
    f.factors.push_back({ps[i], (int)(j - i)});
    i = j;
  }
  return f;
}

std::vector<i64> divisors(const FactoredInteger& n) {
  std::vector<i64> ds = {1};
  for (auto& [p, e] : n.factors) {
    size_t sz = ds.size();
    i64 pk = 1;
    for (int i = 1; i <= e; i++) {
      pk *= p;
      for (size_t j = 0; j < sz; j++) ds.push_back(ds[j] * pk);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

i64 mod_pow(i64 base, i64 exp, i64 mod) {
  if (mod <= 0) throw std::invalid_argument("mod_pow: modulus must be positive");
  i64 b = base % mod;
  if (b < 0) b += mod;
  return (i64)powmod_u((u64)b, (u64)exp, (u64)mod);
}

i64 mod_inverse(i64 a, i64 mod) {
  if (mod <= 0) throw std::invalid_argument("mod_inverse: modulus must be positive");
  i64 r0 = mod, r1 = ((a % mod) + mod) % mod, s0 = 0, s1 = 1;
  while (r1 != 0) {
    i64 q = r0 / r1;
    i64 r2 = r0 - q * r1, s2 = s0 - q * s1;
    r0 = r1; r1 = r2;
    s0 = s1; s1 = s2;
  }
  if (r0 != 1) throw std::invalid_argument("mod_inverse: arguments not coprime");
  return ((s0 % mod) + mod) % mod;
}

int chi3(i64 n) {
  int r = (int)(((n % 3) + 3) % 3);
  return r == 0 ? 0 : (r == 1 ? 1 : -1);
}

int jacobi(i64 a, i64 n) {
  if (n <= 0 || n % 2 == 0) throw std::invalid_argument("jacobi: modulus must be positive odd");
  a %= n;
  if (a < 0) a += n;
  int result = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      i64 r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

// Local factors at p^e (e >= 1) of the multiplicative functions.
static Rat local_phi_over_n(i64 p, int) { return rat(p - 1, p); }
static Rat local_div(i64 p, int) { return rat(2 * (p - 1), p); }
static Rat local_r_tilde(i64 p, int) { return rat((p - 1) * (1 + chi3(p)), p); }
static Rat local_u_tilde(i64 p, int e) { return e == 1 ? rat(p - 2, p) : rat(0); }
static Rat local_c_tilde(i64 p, int) { return rat(p - chi3(p), p); }

static Rat mult_eval(const FactoredInteger& n, Rat (*local)(i64, int)) {
  Rat v = rat(1);
  for (auto& [p, e] : n.factors) v *= local(p, e);
  return v;
}

Rat phi_over_n(const FactoredInteger& n) { return mult_eval(n, local_phi_over_n); }
Rat div_fn(const FactoredInteger& n) { return mult_eval(n, local_div); }
Rat r_tilde(const FactoredInteger& n) { return mult_eval(n, local_r_tilde); }
Rat u_tilde(const FactoredInteger& n) { return mult_eval(n, local_u_tilde); }
Rat c_tilde(const FactoredInteger& n) { return mult_eval(n, local_c_tilde); }

i64 tau_fn(const FactoredInteger& n) {
  i64 t = 1;
  for (auto& [p, e] : n.factors) t *= (e + 1);
  return t;
}

int mu_fn(const FactoredInteger& n) {
  for (auto& [p, e] : n.factors)
    if (e >= 2) return 0;
  return n.factors.size() % 2 == 0 ? 1 : -1;
}

int omega_fn(const FactoredInteger& n) { return (int)n.factors.size(); }

i64 euler_phi(const FactoredInteger& n) {
  i64 v = 1;
  for (auto& [p, e] : n.factors) {
    v *= p - 1;
    for (int i = 1; i < e; i++) v *= p;
  }
  return v;
}

Rat phi_over_n(i64 n) { return phi_over_n(factorize(n)); }
Rat div_fn(i64 n) { return div_fn(factorize(n)); }
Rat r_tilde(i64 n) { return r_tilde(factorize(n)); }
Rat u_tilde(i64 n) { return u_tilde(factorize(n)); }
Rat c_tilde(i64 n) { return c_tilde(factorize(n)); }
i64 tau_fn(i64 n) { return tau_fn(factorize(n)); }
int mu_fn(i64 n) { return mu_fn(factorize(n)); }
int omega_fn(i64 n) { return omega_fn(factorize(n)); }
i64 euler_phi(i64 n) { return euler_phi(factorize(n)); }

i64 one_star_chi3(i64 n) {
  if (n < 1) throw std::invalid_argument("one_star_chi3: n must be positive");
  // Multiplicative: at p^e the local sum is sum_{j<=e} chi3(p)^j.
  i64 v = 1;
  for (auto& [p, e] : factorize(n).factors) {
    int c = chi3(p);
    i64 local = c == 0 ? 1 : (c == 1 ? e + 1 : (e % 2 == 0 ? 1 : 0));
    v *= local;
  }
  return v;
}

i64 phi_summatory(i64 n) {
  if (n < 0) throw std::invalid_argument("phi_summatory: negative input");
  if (n > 20000000) throw std::invalid_argument("phi_summatory: input above 2e7");
  static std::vector<i64> phi;  // phi[k], linear in memory; rebuilt when outgrown
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  if ((i64)phi.size() <= n) {
    i64 m = std::max<i64>(n, 1024);
    phi.assign(m + 1, 0);
    for (i64 k = 0; k <= m; k++) phi[k] = k;
    for (i64 p = 2; p <= m; p++) {
      if (phi[p] == p) {  // p prime
        for (i64 q = p; q <= m; q += p) phi[q] -= phi[q] / p;
      }
    }
  }
  i64 s = 0;
  for (i64 k = 1; k <= n; k++) s += phi[k];
  return s;
}

double KloostermanValue::weil_bound() const {
  i64 g = gcd64(gcd64(a, b), c);
  return (double)tau_fn(c) * std::sqrt((double)g) * std::sqrt((double)c);
}

KloostermanValue kloosterman(i64 a, i64 b, i64 c) {
  if (c < 1) throw std::invalid_argument("kloosterman: modulus must be positive");
  if (c == 1) return {a, b, c, 1.0};
  // Cache the twiddle/inverse tables for the most recent modulus: callers
  // typically sweep (a, b) with c fixed.
  static thread_local i64 cached_c = 0;
  static thread_local std::vector<i64> units, inv;
  static thread_local std::vector<double> cs, sn;
  if (cached_c != c) {
    units.clear();
    inv.assign(c, 0);
    cs.assign(c, 0.0);
    sn.assign(c, 0.0);
    for (i64 x = 1; x < c; x++) {
      if (std::gcd(x, c) == 1) {
        units.push_back(x);
        inv[x] = mod_inverse(x, c);
      }
    }
    for (i64 k = 0; k < c; k++) {
      double ang = 2.0 * M_PI * (double)k / (double)c;
      cs[k] = std::cos(ang);
      sn[k] = std::sin(ang);
    }
    cached_c = c;
  }
  double re = 0.0, im = 0.0;
  i64 am = ((a % c) + c) % c, bm = ((b % c) + c) % c;
  for (i64 x : units) {
    i64 idx = (i64)(((unsigned __int128)am * (u64)x + (unsigned __int128)bm * (u64)inv[x]) % (u64)c);
    re += cs[idx];
    im += sn[idx];
  }
  if (std::abs(im) > 1e-9) throw internal_error("kloosterman: sum has nonreal part");
  return {a, b, c, re};
}

}  // namespace fermat
