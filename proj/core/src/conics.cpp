#include "fermatcount/conics.hpp"

#include <algorithm>
#include <vector>

namespace fermat {

static i64 abs64(i64 v) { return v < 0 ? -v : v; }

Fibre fibre(i64 s, i64 t) {
  if (s == 0 && t == 0) throw std::invalid_argument("fibre: (0,0) is not a parameter");
  if (gcd64(s, t) != 1) throw std::invalid_argument("fibre: parameters must be coprime");
  Fibre f;
  f.s = s;
  f.t = t;
  i128 a = (i128)t * t * t - (i128)s * s * s;
  i128 disc = (i128)-9 * a * s * t;
  const i128 lim = (i128)1 << 62;
  if (a > lim || a < -lim || disc > lim || disc < -lim)
    throw std::invalid_argument("fibre: parameters too large, discriminant overflows");
  f.a = (i64)a;
  f.b = -3 * s;
  f.c = 3 * t;
  f.discriminant = (i64)disc;
  f.singular = (s == 0 || t == 0 || s == t);
  return f;
}

static int v_p(i128 n, i64 p) {
  int v = 0;
  while (n % p == 0) n /= p, v++;
  return v;
}

static int eps2(i64 u) { return (int)(((u - 1) / 2) & 1); }          // u odd, u in [1,8)
static int omega2(i64 u) { return (int)(((u * u - 1) / 8) & 1); }    // u odd, u in [1,8)

static int hilbert128(i128 a, i128 b, i64 place) {
  if (a == 0 || b == 0) throw std::invalid_argument("hilbert_symbol: zero entry");
  if (place == PLACE_INF) return (a < 0 && b < 0) ? -1 : 1;
  if (place < 2 || !is_prime((u64)place))
    throw std::invalid_argument("hilbert_symbol: place must be prime or infinity");
  i64 p = place;
  int alpha = v_p(a, p), beta = v_p(b, p);
  i128 u = a, v = b;
  for (int i = 0; i < alpha; i++) u /= p;
  for (int i = 0; i < beta; i++) v /= p;
  if (p == 2) {
    i64 uu = (i64)((u % 8 + 8) % 8), vv = (i64)((v % 8 + 8) % 8);
    int expo = eps2(uu) * eps2(vv) + alpha * omega2(vv) + beta * omega2(uu);
    return (expo & 1) ? -1 : 1;
  }
  i64 up = (i64)((u % p + p) % p), vp = (i64)((v % p + p) % p);
  int sym = 1;
  if ((alpha & 1) && (beta & 1) && jacobi(-1, p) == -1) sym = -sym;
  if (beta & 1) sym *= jacobi(up, p);
  if (alpha & 1) sym *= jacobi(vp, p);
  return sym;
}

int hilbert_symbol(i64 a, i64 b, i64 place) { return hilbert128(a, b, place); }

// Q = 0 has a nontrivial zero over the completion iff (-ac, -bc) splits there.
static int form_symbol(const Fibre& f, i64 place) {
  return hilbert128(-(i128)f.a * f.c, -(i128)f.b * f.c, place);
}

// Exhaustive primitive-residue search with a Hensel certificate, for p = 2, 3.
// A class x0 mod p^k with w = v_p(grad Q(x0)) < k and v_p(Q(x0)) >= k + w
// contains a p-adic zero; a class with v_p(Q(x0)) < min(k + w, 2k) contains
// none; anything else splits into p^3 children one level down.
static bool soluble_by_search(const Fibre& f, i64 p) {
  int cap = 2 * v_p((i128)f.discriminant, p) + 6;
  struct Node {
    i64 x, y, z;
    int k;
  };
  std::vector<Node> stack;
  i64 m0 = p == 2 ? 64 : 27;
  int k0 = p == 2 ? 6 : 3;
  for (i64 x = 0; x < m0; x++)
    for (i64 y = 0; y < m0; y++)
      for (i64 z = 0; z < m0; z++)
        if (x % p || y % p || z % p) stack.push_back({x, y, z, k0});
  auto vp_or = [&](i128 n, int huge) { return n == 0 ? huge : v_p(n, p); };
  while (!stack.empty()) {
    Node n = stack.back();
    stack.pop_back();
    i128 q = (i128)f.a * n.x * n.x + (i128)f.b * n.y * n.y + (i128)f.c * n.z * n.z;
    int big = 4 * cap + 64;
    int vq = vp_or(q, big);
    int w = std::min({vp_or((i128)2 * f.a * n.x, big), vp_or((i128)2 * f.b * n.y, big),
                      vp_or((i128)2 * f.c * n.z, big)});
    if (w < n.k && vq >= n.k + w) return true;
    if (vq < std::min(n.k + w, 2 * n.k)) continue;
    if (n.k >= cap) throw internal_error("soluble_by_search: split depth cap reached");
    i64 pk = 1;
    for (int i = 0; i < n.k; i++) pk *= p;
    for (i64 dx = 0; dx < p; dx++)
      for (i64 dy = 0; dy < p; dy++)
        for (i64 dz = 0; dz < p; dz++)
          stack.push_back({n.x + dx * pk, n.y + dy * pk, n.z + dz * pk, n.k + 1});
  }
  return false;
}

bool is_locally_soluble(const Fibre& f, i64 place) {
  if (f.singular) throw std::invalid_argument("is_locally_soluble: singular fibre");
  bool predicted = form_symbol(f, place) == 1;
  if (place == 2 || place == 3) {
    bool searched = soluble_by_search(f, place);
    if (searched != predicted)
      throw internal_error("is_locally_soluble: residue search disagrees with Hilbert symbol");
    return searched;
  }
  if (place == PLACE_INF) {
    bool mixed = !((f.a > 0 && f.b > 0 && f.c > 0) || (f.a < 0 && f.b < 0 && f.c < 0));
    if (mixed != predicted)
      throw internal_error("is_locally_soluble: sign test disagrees with Hilbert symbol");
    return mixed;
  }
  return predicted;
}

bool is_isotropic(const Fibre& f) {
  if (f.singular) throw std::invalid_argument("is_isotropic: singular fibre");
  std::vector<i64> places = {PLACE_INF, 2, 3};
  for (i64 v : {abs64(f.s), abs64(f.t), abs64(f.a)})
    for (auto& [p, e] : factorize(v).factors) places.push_back(p);
  std::sort(places.begin(), places.end());
  places.erase(std::unique(places.begin(), places.end()), places.end());
  bool all = true;
  int prod = 1;
  for (i64 v : places) {
    int sym = form_symbol(f, v);
    prod *= sym;
    if (sym != 1) all = false;
  }
  if (prod != 1) throw internal_error("is_isotropic: Hilbert product formula violated");
  for (i64 v : {(i64)PLACE_INF, (i64)2, (i64)3})
    if (is_locally_soluble(f, v) != (form_symbol(f, v) == 1))
      throw internal_error("is_isotropic: local solubility inconsistent");
  return all;
}

ConicPoint find_point(const Fibre& f) {
  if (f.singular) throw std::invalid_argument("find_point: singular fibre");
  if (!is_isotropic(f)) throw std::invalid_argument("find_point: anisotropic fibre");
  // The fibre constructor bounds |disc| = 9|a s t|, so each pairwise product
  // of coefficient magnitudes fits in 63 bits.
  i64 X0 = isqrt64((i64)((i128)abs64(f.b) * abs64(f.c)));
  i64 Y0 = isqrt64((i64)((i128)abs64(f.a) * abs64(f.c)));
  i64 Z0 = isqrt64((i64)((i128)abs64(f.a) * abs64(f.b)));
  for (int widen = 0; widen <= 2; widen++) {
    i64 X = X0 << widen, Y = Y0 << widen, Z = Z0 << widen;
    for (i64 x = 0; x <= X; x++) {
      for (i64 y = 0; y <= Y; y++) {
        i128 rest = -((i128)f.a * x * x + (i128)f.b * y * y);
        if (rest % f.c != 0) continue;
        i128 zz = rest / f.c;
        if (zz < 0 || zz > (i128)Z * Z) continue;
        i64 z = isqrt64((i64)zz);
        if ((i128)z * z != zz) continue;
        if (x == 0 && y == 0 && z == 0) continue;
        if (gcd64(gcd64(x, y), z) != 1)
          throw internal_error("find_point: first hit not primitive");
        return {x, y, z};
      }
    }
  }
  throw internal_error("find_point: Holzer box search exhausted");
}

// Shared enumeration: visit all solutions with x in [xlo, xmax], y, z >= 0,
// multiplying by the sign orbit.  signs_on_x controls whether the x != 0
// solutions get the factor 2 for x -> -x.
static i64 count_box(const Fibre& f, i64 B, bool include_x_zero, bool signs_on_x) {
  if (B < 0) throw std::invalid_argument("count_M: negative bound");
  i64 m = std::max(abs64(f.s), abs64(f.t));
  i64 xmax = B / m;
  i64 total = 0;
  for (i64 x = include_x_zero ? 0 : 1; x <= xmax; x++) {
    for (i64 y = 0; y <= B; y++) {
      i128 rest = -((i128)f.a * x * x + (i128)f.b * y * y);
      if (rest % f.c != 0) continue;
      i128 zz = rest / f.c;
      if (zz < 0 || zz > (i128)B * B) continue;
      i64 z = isqrt64((i64)zz);
      if ((i128)z * z != zz) continue;
      if (x == 0 && y == 0 && z == 0) continue;
      if (gcd64(gcd64(x, y), z) != 1) continue;
      int mult = 1;
      if (x > 0 && signs_on_x) mult *= 2;
      if (y > 0) mult *= 2;
      if (z > 0) mult *= 2;
      total += mult;
    }
  }
  return total;
}

i64 count_M(const Fibre& f, i64 B) {
  if (f.singular) throw std::invalid_argument("count_M: singular fibre");
  return count_box(f, B, true, true);
}

i64 count_M_positive(const Fibre& f, i64 B) {
  if (f.singular) throw std::invalid_argument("count_M_positive: singular fibre");
  return count_box(f, B, false, false);
}

}  // namespace fermat
