#include "fermatcount/sums.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fermatcount/densities.hpp"

namespace fermat {

namespace {

constexpr double kLeadingConstant = 0.6045997880780726;  // pi / 3^{3/2}

std::vector<int> spf_sieve(i64 n) {
  std::vector<int> spf(n + 1, 0);
  for (i64 i = 2; i <= n; i++) {
    if (spf[i]) continue;
    for (i64 j = i; j <= n; j += i)
      if (!spf[j]) spf[j] = (int)i;
  }
  return spf;
}

// Factors n from the sieve; false when n is not squarefree.
bool factor_spf(const std::vector<int>& spf, i64 n, FactoredInteger& out) {
  out.sign = 1;
  out.factors.clear();
  while (n > 1) {
    i64 p = spf[n];
    n /= p;
    if (n % p == 0) return false;
    out.factors.push_back({p, 1});
  }
  return true;
}

FactoredInteger prime_arg(i64 p) {
  FactoredInteger fi;
  fi.sign = 1;
  fi.factors = {{p, 1}};
  return fi;
}

i64 normalize_residue(i64 a, i64 q) { return (a % q + q) % q; }

// fhat(p) as a double; the c_tilde factor cancels the (1 - chi3/p)^{-1}.
double f_hat_local(const GClassFunction& f, i64 p) {
  double fp = rat_double(f.eval(prime_arg(p)));
  return 1.0 / ((1.0 + fp / (double)p) * (1.0 - 1.0 / (double)p));
}

void require_kq_admissible(i64 k, i64 q, const char* who) {
  FactoredInteger kq = factorize(k * q);
  for (auto& [p, e] : kq.factors) {
    if (e > 1) throw std::invalid_argument(std::string(who) + ": kq must be squarefree");
    if (p == 3) throw std::invalid_argument(std::string(who) + ": kq must be coprime to 3");
  }
}

}  // namespace

GClassFunction gclass_one() {
  return {"one", [](const FactoredInteger&) { return rat(1); }, 0};
}

GClassFunction gclass_u_tilde() {
  return {"u_tilde", [](const FactoredInteger& n) { return u_tilde(n); }, 0};
}

GClassFunction gclass_c_tilde() {
  return {"c_tilde", [](const FactoredInteger& n) { return c_tilde(n); }, 0};
}

GClassFunction gclass_twist() {
  return {"twist",
          [](const FactoredInteger& n) {
            Rat out = rat(1);
            for (auto& [p, e] : n.factors) out *= rat(1 + chi3(p));
            return out;
          },
          1};
}

GClassFunction gclass_r_tilde() {
  return {"r_tilde", [](const FactoredInteger& n) { return r_tilde(n); }, 1};
}

ProgressionSum progression_sum(const ProgressionQuery& qry) {
  if (qry.X < 1 || qry.X > 10000000)
    throw std::invalid_argument("progression_sum: need 1 <= X <= 1e7");
  if (qry.q < 1) throw std::invalid_argument("progression_sum: need q >= 1");
  if (qry.k != 1 || qry.squarefree)
    throw std::invalid_argument("progression_sum: the divisor engine takes k = 1, plain n");
  i64 a = normalize_residue(qry.a, qry.q);
  if (gcd64(qry.q, 3) != 1 || (qry.q > 1 && gcd64(qry.q, a) != 1))
    throw std::invalid_argument("progression_sum: main term needs gcd(q, 3a) = 1");

  std::vector<int> conv(qry.X + 1, 0);
  for (i64 d = 1; d <= qry.X; d++) {
    int c = chi3(d);
    if (!c) continue;
    for (i64 m = d; m <= qry.X; m += d) conv[m] += c;
  }
  i64 total = 0;
  for (i64 n = (a == 0 ? qry.q : a); n <= qry.X; n += qry.q) total += conv[n];

  ProgressionSum out;
  out.exact_int = total;
  out.exact = (double)total;
  out.main_term = kLeadingConstant * rat_double(c_tilde(qry.q)) * (double)qry.X / (double)qry.q;
  out.error = out.exact - out.main_term;
  double tq = (double)tau_fn(qry.q);
  out.normalized =
      std::abs(out.error) / (std::cbrt((double)qry.X) * std::sqrt((double)qry.q) * tq * tq);
  return out;
}

ProgressionSum progression_sum(const ProgressionQuery& qry, const GClassFunction& f) {
  if (qry.X < 1 || qry.X > 10000000)
    throw std::invalid_argument("progression_sum: need 1 <= X <= 1e7");
  if (qry.q < 1 || qry.k < 1) throw std::invalid_argument("progression_sum: need q, k >= 1");
  if (!qry.squarefree)
    throw std::invalid_argument("progression_sum: the G-class engine sums squarefree n only");
  i64 a = normalize_residue(qry.a, qry.q);
  if (gcd64(qry.q, 3) != 1 || gcd64(qry.q, qry.k) != 1 || (qry.q > 1 && gcd64(qry.q, a) != 1))
    throw std::invalid_argument("progression_sum: main term needs gcd(q, 3ak) = 1");
  require_kq_admissible(qry.k, qry.q, "progression_sum");

  auto spf = spf_sieve(qry.X);
  FactoredInteger fi;
  long double total = 0;
  for (i64 n = 1; n <= qry.X; n++) {
    if (qry.q > 1 && n % qry.q != a) continue;
    if (qry.k > 1 && gcd64(n, qry.k) != 1) continue;
    if (!factor_spf(spf, n, fi)) continue;
    total += (long double)rat_double(f.eval(fi));
  }

  ProgressionSum out;
  out.exact = (double)total;
  double c = euler_constant(f).value;
  out.main_term = c * rat_double(phi_over_n(qry.k)) * rat_double(f_hat(f, qry.k * qry.q)) *
                  (double)qry.X / (double)qry.q;
  out.error = out.exact - out.main_term;
  double tkq = (double)tau_fn(qry.k * qry.q);
  out.normalized =
      std::abs(out.error) / (std::sqrt((double)qry.X) * std::sqrt((double)qry.q) * tkq * tkq);
  return out;
}

EulerConstant euler_constant(const GClassFunction& f, i64 cutoff) {
  if (cutoff < 100 || cutoff > 2000000)
    throw std::invalid_argument("euler_constant: cutoff in [100, 2e6]");
  long double prod = 1;
  double shape = 0;
  for (i64 p : primes_to(cutoff)) {
    if (p > cutoff) break;
    double fp = rat_double(f.eval(prime_arg(p)));
    shape = std::max(shape, std::abs((double)p * (fp - 1.0 - (double)(f.delta * chi3(p)))));
    if (1 + shape > 1000)
      throw std::invalid_argument("euler_constant: divergent input (shape is not 1 + delta chi3 + O(1/p))");
    long double lp = (long double)p;
    prod *= (1 + (long double)fp / lp) * (1 - 1 / lp) * (1 - (long double)chi3(p) / lp);
  }
  EulerConstant out;
  out.value = (double)((long double)kLeadingConstant * prod);
  out.shape_bound = 1 + shape;
  out.tail_relative = (out.shape_bound + 2) / ((double)cutoff * std::log((double)cutoff));
  out.cutoff = cutoff;
  return out;
}

Rat f_hat(const GClassFunction& f, const FactoredInteger& n) {
  if (n.sign <= 0) throw std::invalid_argument("f_hat: need n >= 1");
  Rat out = c_tilde(n);
  for (auto& [p, e] : n.factors) {
    if (e > 1) throw std::invalid_argument("f_hat: n must be squarefree");
    if (p == 3) throw std::invalid_argument("f_hat: n must be coprime to 3");
    Rat a = rat(1) + f.eval(prime_arg(p)) / rat(p);
    if (a == 0) throw std::invalid_argument("f_hat: local factor vanishes");
    out /= a * rat(p - 1, p) * (rat(1) - rat(chi3(p), p));
  }
  return out;
}

Rat f_hat(const GClassFunction& f, i64 n) { return f_hat(f, factorize(n)); }

PairSum coprime_pair_sum(const PairSumQuery& qry, const GClassFunction& f1,
                         const GClassFunction& f2) {
  if (qry.x < 0 || qry.y < 0 || qry.x > 100000 || qry.y > 100000)
    throw std::invalid_argument("coprime_pair_sum: need 0 <= x, y <= 1e5");
  if (qry.q < 1 || qry.k < 1) throw std::invalid_argument("coprime_pair_sum: need q, k >= 1");
  i64 q = qry.q;
  i64 sg = normalize_residue(qry.sigma, q), tu = normalize_residue(qry.tau, q);
  if (gcd64(q, 3) != 1 || gcd64(q, qry.k) != 1 ||
      (q > 1 && (gcd64(q, sg) != 1 || gcd64(q, tu) != 1)))
    throw std::invalid_argument("coprime_pair_sum: need gcd(q, 3 k sigma tau) = 1");
  require_kq_admissible(qry.k, q, "coprime_pair_sum");

  long double exact = 0;
  if (qry.x >= 1 && qry.y >= 1) {
    auto spf = spf_sieve(std::max(qry.x, qry.y));
    FactoredInteger fi;
    std::vector<double> vs(qry.y + 1, 0), vt(qry.x + 1, 0);
    for (i64 s = 1; s <= qry.y; s++) {
      if (q > 1 && s % q != sg) continue;
      if (qry.k > 1 && gcd64(s, qry.k) != 1) continue;
      if (factor_spf(spf, s, fi)) vs[s] = rat_double(f1.eval(fi));
    }
    for (i64 t = 1; t <= qry.x; t++) {
      if (q > 1 && t % q != tu) continue;
      if (qry.k > 1 && gcd64(t, qry.k) != 1) continue;
      if (factor_spf(spf, t, fi)) vt[t] = rat_double(f2.eval(fi));
    }
    for (i64 s = 1; s <= qry.y; s++) {
      if (vs[s] == 0) continue;
      for (i64 t = 1; t <= qry.x; t++) {
        if (vt[t] == 0 || gcd64(s, t) != 1) continue;
        exact += (long double)vs[s] * vt[t];
      }
    }
  }

  auto e1 = euler_constant(f1);
  auto e2 = euler_constant(f2);
  i64 kq = qry.k * q;
  long double lambda = 1;
  for (i64 p : primes_to(1000000)) {
    if (p > 1000000) break;
    if (kq % p == 0) continue;
    double fp1 = rat_double(f1.eval(prime_arg(p)));
    double fp2 = rat_double(f2.eval(prime_arg(p)));
    double unit = ((double)p - 1) / (double)p;
    lambda -= lambda * fp1 * fp2 * f_hat_local(f1, p) * f_hat_local(f2, p) * unit * unit /
              ((double)p * (double)p);
  }

  PairSum out;
  out.exact = (double)exact;
  double phik = rat_double(phi_over_n(qry.k));
  out.main_term = e1.value * e2.value * (double)lambda * rat_double(f_hat(f1, kq)) *
                  rat_double(f_hat(f2, kq)) * phik * phik * (double)qry.x * (double)qry.y /
                  ((double)q * (double)q);
  out.error = out.exact - out.main_term;
  out.ratio = out.main_term != 0 ? out.exact / out.main_term : 0;
  return out;
}

std::vector<std::pair<i64, i64>> fugue_residues(i64 d1, i64 d2) {
  if (d1 < 1 || d2 < 1 || d1 * d2 > 100)
    throw std::invalid_argument("fugue_residues: need 1 <= d1 d2 <= 100");
  if (gcd64(d1 * d2, 6) != 1)
    throw std::invalid_argument("fugue_residues: need gcd(d1 d2, 6) = 1");
  if (mu_fn(d1 * d2) == 0)
    throw std::invalid_argument("fugue_residues: need d1 d2 squarefree");
  i64 d = 8 * d1 * d2;
  std::vector<std::pair<i64, i64>> out;
  for (i64 sg = 1; sg < d; sg += 8)
    for (i64 tu = 1; tu < d; tu += 8) {
      if (gcd64(gcd64(sg, tu), d) != 1) continue;
      if ((sg * sg + sg * tu + tu * tu) % d1 != 0) continue;
      if ((sg - tu) % d2 != 0) continue;
      out.push_back({sg, tu});
    }
  return out;
}

Rat D_sum(i64 x) {
  if (x < 2 || x > 4096) throw std::invalid_argument("D_sum: need 2 <= x <= 4096");
  Rat total = rat(0);
  for (i64 s = x / 4 + 1; s <= x / 2; s++) {
    if (s % 8 != 1) continue;
    for (i64 t = x / 2 + 1; t <= x; t++) {
      if (t % 8 != 1 || gcd64(s, t) != 1) continue;
      Rat r = r_tilde(s * t);
      if (r == 0) continue;  // skips factoring the cube difference
      total += div_fn(t * t * t - s * s * s) * r;
    }
  }
  return total;
}

DyadicSum gfrak_lower(i64 x, bool direct_check) {
  if (x < 4 || x > 4096) throw std::invalid_argument("gfrak_lower: need 4 <= x <= 4096");
  DyadicSum out;
  out.x = x;
  out.aggregate = rat(0);
  for (int n = 2; (1LL << n) <= x; n++) {
    Rat d = D_sum(1LL << n);
    if (d < 0) throw internal_error("gfrak_lower: negative level");
    out.levels.push_back({n, d});
    out.aggregate += d * rat(1, 1LL << (2 * n));
  }
  if (direct_check && x <= 256) {
    double g = 0;
    for (i64 s = x / 4 + 1; s <= x / 2; s++)
      for (i64 t = x / 2 + 1; t <= x; t++) {
        if (gcd64(s, t) != 1) continue;
        Fibre f = fibre(s, t);
        if (f.singular || !is_isotropic(f)) continue;
        g += density_product(f, 30).total();
      }
    out.gfrak_direct = g;
  }
  return out;
}

}  // namespace fermat
