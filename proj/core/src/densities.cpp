#include "fermatcount/densities.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <vector>

namespace fermat {

static i64 abs64(i64 v) { return v < 0 ? -v : v; }

static i64 ipow(i64 p, int n) {
  i64 r = 1;
  for (int i = 0; i < n; i++) r *= p;
  return r;
}

static int vp128(i128 n, i64 p) {
  int v = 0;
  while (n % p == 0) n /= p, v++;
  return v;
}

static int disc_valuation(const Fibre& f, i64 p) {
  int v = p == 3 ? 2 : 0;
  v += vp128(f.a, p) + vp128(f.s, p) + vp128(f.t, p);
  return v;
}

static bool divides_disc(const Fibre& f, i64 p) { return disc_valuation(f, p) > 0; }

// ---- exact primitive zero counts ---------------------------------------

// All-solution count mod q by residue tables, O(q^2); paranoid cross-check.
static i64 brute_all_zeros(const Fibre& f, i64 q) {
  auto table = [&](i64 coef) {
    std::vector<i64> cnt(q, 0);
    for (i64 x = 0; x < q; x++) cnt[(i64)((((i128)coef * x * x) % q + q) % q)]++;
    return cnt;
  };
  auto ca = table(f.a), cb = table(f.b), cc = table(f.c);
  std::vector<i64> conv(q, 0);
  for (i64 u = 0; u < q; u++) {
    if (ca[u] == 0) continue;
    for (i64 v = 0; v < q; v++) conv[(u + v) % q] += ca[u] * cb[v];
  }
  i64 total = 0;
  for (i64 u = 0; u < q; u++) total += conv[u] * cc[(q - u) % q];
  return total;
}

static i64 brute_primitive_zeros(const Fibre& f, i64 p, int n) {
  i64 all = brute_all_zeros(f, ipow(p, n));
  if (n == 1) return all - 1;
  return all - p * p * p * brute_all_zeros(f, ipow(p, n - 2));
}

// Exact count by class splitting with Hensel certificates (used for p = 2, 3
// where at most 27 root classes exist).  A class x0 mod p^k contributes
//   p^{2(n-k)+w}        if w < k, k+w <= n and v_p(Q(x0)) >= k+w,
//   p^{3(n-k)} or 0     if v_p(Q(x0)) < min(k+w, 2k)  (the valuation of Q is
//                       then constant on the class),
// and splits into p^3 children otherwise.
static i64 tree_primitive_zeros(const Fibre& f, i64 p, int n) {
  struct Node {
    i64 x, y, z;
    int k;
  };
  std::vector<Node> stack;
  for (i64 x = 0; x < p; x++)
    for (i64 y = 0; y < p; y++)
      for (i64 z = 0; z < p; z++)
        if (x || y || z) stack.push_back({x, y, z, 1});
  const int big = 1 << 20;
  auto vq_of = [&](i128 v) { return v == 0 ? big : vp128(v, p); };
  i64 total = 0;
  i64 budget = 20000000;
  while (!stack.empty()) {
    if (--budget < 0) throw std::runtime_error("count_primitive_zeros: node budget exceeded");
    Node nd = stack.back();
    stack.pop_back();
    i128 q = (i128)f.a * nd.x * nd.x + (i128)f.b * nd.y * nd.y + (i128)f.c * nd.z * nd.z;
    int vq = vq_of(q);
    if (nd.k == n) {
      if (vq >= n) total += 1;
      continue;
    }
    int w = std::min({vq_of((i128)2 * f.a * nd.x), vq_of((i128)2 * f.b * nd.y),
                      vq_of((i128)2 * f.c * nd.z)});
    if (vq < std::min(nd.k + w, 2 * nd.k)) {
      if (vq >= n) total += ipow(p, 3 * (n - nd.k));
      continue;
    }
    if (w < nd.k && nd.k + w <= n && vq >= nd.k + w) {
      total += ipow(p, 2 * (n - nd.k) + w);
      continue;
    }
    i64 pk = ipow(p, nd.k);
    for (i64 dx = 0; dx < p; dx++)
      for (i64 dy = 0; dy < p; dy++)
        for (i64 dz = 0; dz < p; dz++)
          stack.push_back({nd.x + dx * pk, nd.y + dy * pk, nd.z + dz * pk, nd.k + 1});
  }
  return total;
}

// Unit-coefficient character and valuation for odd p dividing the
// discriminant: exactly one coefficient is divisible by p.
static void odd_local_data(const Fibre& f, i64 p, int& e, int& chi) {
  i64 coefs[3] = {f.a, f.b, f.c};
  int idx = -1;
  for (int i = 0; i < 3; i++)
    if (coefs[i] % p == 0) {
      if (idx != -1) throw internal_error("odd_local_data: two coefficients divisible");
      idx = i;
    }
  if (idx == -1) throw internal_error("odd_local_data: no coefficient divisible");
  e = vp128(coefs[idx], p);
  i128 prod = -(i128)coefs[(idx + 1) % 3] * coefs[(idx + 2) % 3];
  chi = jacobi((i64)((prod % p + p) % p), p);
}

// Exact N*(p^n) for odd p >= 5 dividing the discriminant, by the standard
// split into classes with (x_unit-pair) nonzero mod p versus both divisible.
static i64 structured_primitive_zeros(i64 p, int n, int e, int chi) {
  // y-unit solution count of <unit, p^eps unit, unit> mod p^m
  std::function<i64(int, int)> M = [&](int eps, int m) -> i64 {
    if (m <= 0) throw internal_error("structured_primitive_zeros: M needs m >= 1");
    if (eps == 0) return (p * p - 1 - (1 + chi) * (p - 1)) * ipow(p, 2 * (m - 1));
    if (m == 1) return (1 + chi) * (p - 1) * (p - 1) + (p - 1);
    i64 head = (1 + chi) * (p - 1) * (p - 1) * ipow(p, 2 * (m - 1));
    if (eps == 1) return head;
    if (m == 2) return head + p * p * p * (p - 1);
    return head + ipow(p, 4) * M(eps - 2, m - 2);
  };
  i64 caseA = (i64)(1 + chi) * (p - 1) * ipow(p, 2 * n - 1);
  i64 caseB;
  if (n == 1)
    caseB = p - 1;
  else if (e == 1)
    caseB = 0;
  else if (n == 2)
    caseB = p * p * p * (p - 1);
  else
    caseB = ipow(p, 4) * M(e - 2, n - 2);
  return caseA + caseB;
}

i64 count_primitive_zeros(const Fibre& f, i64 p, int n) {
  if (f.singular) throw std::invalid_argument("count_primitive_zeros: singular fibre");
  if (n < 1) throw std::invalid_argument("count_primitive_zeros: level must be >= 1");
  if (p < 2 || !is_prime((u64)p)) throw std::invalid_argument("count_primitive_zeros: p must be prime");
  double qd = std::pow((double)p, (double)n);
  if (qd > 1e8 + 0.5) throw std::invalid_argument("count_primitive_zeros: p^n above 1e8 guard");
  i64 result;
  if (!divides_disc(f, p)) {
    result = (p * p - 1) * ipow(p, 2 * (n - 1));
  } else if (p >= 5) {
    int e, chi;
    odd_local_data(f, p, e, chi);
    result = structured_primitive_zeros(p, n, e, chi);
  } else {
    result = tree_primitive_zeros(f, p, n);
  }
  if (ipow(p, n) <= 3000 && brute_primitive_zeros(f, p, n) != result)
    throw internal_error("count_primitive_zeros: table enumeration disagrees");
  return result;
}

// ---- p-adic densities ---------------------------------------------------

static Rat normalized_count(const Fibre& f, i64 p, int n) {
  return rat(count_primitive_zeros(f, p, n), ipow(p, 2 * n));
}

// Splitting engine for p = 2, 3: resolves every primitive class into a live
// Hensel certificate (density p^{w-2k}) or a dead class (valuation of Q
// frozen below the requirement).  Returns value and the exact level from
// which the normalized sequence is constant.
static PadicDensity sigma_small_prime(const Fibre& f, i64 p) {
  int cap = 2 * disc_valuation(f, p) + 6;
  if (cap > 80) throw std::runtime_error("sigma_p: valuation too large for the splitting cap");
  struct Node {
    i128 x, y, z;
    int k;
  };
  std::vector<Node> stack;
  for (i64 x = 0; x < p; x++)
    for (i64 y = 0; y < p; y++)
      for (i64 z = 0; z < p; z++)
        if (x || y || z) stack.push_back({x, y, z, 1});
  const int big = 1 << 20;
  auto vq_of = [&](i128 v) { return v == 0 ? big : vp128(v, p); };
  Rat value = rat(0);
  int stab = 1;
  i64 budget = 20000000;
  while (!stack.empty()) {
    if (--budget < 0) {
      std::ostringstream os;
      os << "sigma_p: node budget exceeded; partial sequence";
      for (int n = 1; n <= 4 && ipow(p, n) <= 100000000; n++)
        os << " " << rat_str(normalized_count(f, p, n));
      throw std::runtime_error(os.str());
    }
    Node nd = stack.back();
    stack.pop_back();
    i128 q = (i128)f.a * nd.x * nd.x + (i128)f.b * nd.y * nd.y + (i128)f.c * nd.z * nd.z;
    int vq = vq_of(q);
    int w = std::min({vq_of((i128)2 * f.a * nd.x), vq_of((i128)2 * f.b * nd.y),
                      vq_of((i128)2 * f.c * nd.z)});
    if (w < nd.k && vq >= nd.k + w) {
      Int pw;
      mpz_ui_pow_ui(pw.get_mpz_t(), (unsigned long)p, (unsigned long)(2 * nd.k - w));
      Rat contrib(Int(1), pw);
      contrib.canonicalize();
      value += contrib;
      stab = std::max(stab, nd.k + w);
      continue;
    }
    if (vq < std::min(nd.k + w, 2 * nd.k)) {
      stab = std::max(stab, vq + 1);
      continue;
    }
    if (nd.k >= cap) {
      std::ostringstream os;
      os << "sigma_p: split depth cap reached; partial sequence";
      for (int n = 1; n <= 4 && ipow(p, n) <= 100000000; n++)
        os << " " << rat_str(normalized_count(f, p, n));
      throw std::runtime_error(os.str());
    }
    i128 pk = 1;
    for (int i = 0; i < nd.k; i++) pk *= p;
    for (i64 dx = 0; dx < p; dx++)
      for (i64 dy = 0; dy < p; dy++)
        for (i64 dz = 0; dz < p; dz++)
          stack.push_back({nd.x + dx * pk, nd.y + dy * pk, nd.z + dz * pk, nd.k + 1});
  }
  return {p, value, stab};
}

// Closed form for odd p >= 5 dividing the discriminant, from the same class
// split as structured_primitive_zeros in the limit:
//   sigma_p = (1+chi)(p-1)/p + [e >= 2] T(e-2),
//   T(0) = (p^2 - 1 - (1+chi)(p-1)) / p^2,
//   T(eps) = (1+chi)(p-1)^2/p^2 + [eps >= 2] T(eps-2).
static Rat sigma_odd_closed_form(i64 p, int e, int chi) {
  Rat value = rat((1 + chi) * (p - 1), p);
  if (e >= 2) {
    int eps = e - 2;
    Rat t = rat(0);
    while (eps >= 2) {
      t += rat((1 + chi) * (p - 1) * (p - 1), p * p);
      eps -= 2;
    }
    if (eps == 1)
      t += rat((1 + chi) * (p - 1) * (p - 1), p * p);
    else
      t += rat(p * p - 1 - (1 + chi) * (p - 1), p * p);
    value += t;
  }
  return value;
}

PadicDensity sigma_p(const Fibre& f, i64 p) {
  if (f.singular) throw std::invalid_argument("sigma_p: singular fibre");
  if (p < 2 || !is_prime((u64)p)) throw std::invalid_argument("sigma_p: p must be prime");
  PadicDensity d;
  if (!divides_disc(f, p)) {
    d = {p, rat(p * p - 1, p * p), 1};
    return d;
  }
  if (p >= 5) {
    int e, chi;
    odd_local_data(f, p, e, chi);
    d = {p, sigma_odd_closed_form(p, e, chi), e + 1};
  } else {
    d = sigma_small_prime(f, p);
  }
  // Tighten to the least level, and check constancy on the next level up,
  // wherever the count guard allows it.
  while (d.stabilized_at > 1 && std::pow((double)p, d.stabilized_at - 1) <= 1e8) {
    if (normalized_count(f, p, d.stabilized_at - 1) != d.value) break;
    d.stabilized_at--;
  }
  for (int n = d.stabilized_at; n <= d.stabilized_at + 1; n++) {
    if (std::pow((double)p, n) > 1e8) break;
    if (normalized_count(f, p, n) != d.value)
      throw internal_error("sigma_p: normalized counts disagree with the computed density");
  }
  return d;
}

// ---- archimedean density ------------------------------------------------

// Area of {A x^2 + C z^2 <= V} within [-X,X] x [-Z,Z] for A, C > 0.
static double ellipse_area(double A, double C, double V, double X, double Z) {
  if (V <= 0) return 0;
  auto anti = [&](double x) {
    // integral of sqrt((V - A x^2)/C)
    double s = std::sqrt(std::max(V - A * x * x, 0.0));
    double arg = std::clamp(x * std::sqrt(A / V), -1.0, 1.0);
    return (x * s / 2 + V / (2 * std::sqrt(A)) * std::asin(arg)) / std::sqrt(C);
  };
  double xe = std::min(X, std::sqrt(V / A));
  double xc = std::min(xe, std::sqrt(std::max(V - C * Z * Z, 0.0) / A));
  double quarter = xc * Z + (anti(xe) - anti(xc));
  return 4 * quarter;
}

// Area of {A x^2 - Cm z^2 <= V} within the box, A, Cm > 0.
static double hyperbola_area(double A, double Cm, double V, double X, double Z) {
  if (V < -Cm * Z * Z) return 0;  // the branch clears the box entirely
  auto anti = [&](double x) {
    // integral of sqrt((A x^2 - V)/Cm)
    double s = std::sqrt(std::max(A * x * x - V, 0.0));
    double arg = x * std::sqrt(A) + s;
    return (x * s / 2 - V / (2 * std::sqrt(A)) * std::log(std::max(arg, 1e-300))) / std::sqrt(Cm);
  };
  double x0 = V > 0 ? std::min(X, std::sqrt(V / A)) : 0.0;
  double x1 = std::sqrt((V + Cm * Z * Z) / A);
  double deficit = 0;
  double hi = std::min(X, x1);
  if (hi > x0) deficit += anti(hi) - anti(x0);
  if (X > x1) deficit += (X - x1) * Z;
  return 4 * (X * Z - deficit);
}

static double slice_region_area(double A, double C, double V, double X, double Z) {
  if (A > 0 && C > 0) return ellipse_area(A, C, V, X, Z);
  if (A < 0 && C < 0) return 4 * X * Z - ellipse_area(-A, -C, -V, X, Z);
  if (A > 0 && C < 0) return hyperbola_area(A, -C, V, X, Z);
  return hyperbola_area(C, -A, V, Z, X);
}

double sigma_infinity_raw(const Fibre& f, double epsilon, i64 grid) {
  if (f.singular) throw std::invalid_argument("sigma_infinity: singular fibre");
  if (!(epsilon > 0) || epsilon > 0.5) throw std::invalid_argument("sigma_infinity: epsilon must lie in (0, 1/2]");
  if (grid < 1) throw std::invalid_argument("sigma_infinity: grid must be positive");
  double X = 1.0 / std::max(abs64(f.s), abs64(f.t));
  double A = (double)f.a, B = (double)f.b, C = (double)f.c;
  double total = 0;
  for (i64 i = 0; i < grid; i++) {
    double y = (i + 0.5) / grid;
    double by = B * y * y;
    double hi = slice_region_area(A, C, epsilon - by, X, 1.0);
    double lo = slice_region_area(A, C, -epsilon - by, X, 1.0);
    total += (hi - lo) * 2.0 / grid;  // both signs of y
  }
  return total / (2 * epsilon);
}

ArchimedeanDensity sigma_infinity(const Fibre& f, double epsilon, i64 grid) {
  double v1 = sigma_infinity_raw(f, epsilon, grid);
  double v2 = sigma_infinity_raw(f, epsilon / 10, grid);
  return {(10 * v2 - v1) / 9, epsilon, grid};
}

ArchimedeanDensity sigma_infinity(const Fibre& f) { return sigma_infinity(f, 1e-2, 8192); }

// ---- full product -------------------------------------------------------

double DensityProduct::total() const {
  double v = sigma_inf;
  for (auto& d : finite) v *= rat_double(d.value);
  return v * rat_double(tail_lower);
}

DensityProduct density_product(const Fibre& f, i64 P) {
  if (f.singular) throw std::invalid_argument("density_product: singular fibre");
  if (P < 2) throw std::invalid_argument("density_product: P must be >= 2");
  if (!is_isotropic(f)) throw std::invalid_argument("density_product: anisotropic fibre");
  std::vector<i64> ps = {2, 3};
  for (i64 v : {abs64(f.s), abs64(f.t), abs64(f.a)})
    for (auto& [q, e] : factorize(v).factors) ps.push_back(q);
  for (i64 q : primes_to(P))
    if (q <= P) ps.push_back(q);
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  DensityProduct dp;
  dp.sigma_inf = sigma_infinity(f).value;
  for (i64 q : ps) dp.finite.push_back(sigma_p(f, q));
  dp.tail_lower = rat(P - 1, P);
  return dp;
}

}  // namespace fermat
