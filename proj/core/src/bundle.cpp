#include "fermatcount/bundle.hpp"

#include <algorithm>
#include <stdexcept>

#include "fermatcount/arith.hpp"
#include "parallel.hpp"

namespace fermat {

namespace {

constexpr int kSlots = 64;

i64 gcd4(i64 a, i64 b, i64 c, i64 d) { return gcd64(gcd64(a, b), gcd64(c, d)); }

i64 sup4(const PrimVec4& v) {
  return std::max(std::max(std::abs(v.x0), std::abs(v.x1)),
                  std::max(std::abs(v.x2), std::abs(v.x3)));
}

i128 cube(i128 n) { return n * n * n; }

void validate_twist(const TwistVector& tw) {
  const PrimVec4& t = tw.t;
  if (t.x0 == 0 || t.x1 == 0 || t.x2 == 0 || t.x3 == 0)
    throw std::invalid_argument("twist coordinates must be nonzero");
  if (gcd4(t.x0, t.x1, t.x2, t.x3) != 1)
    throw std::invalid_argument("twist vector must be primitive");
}

i64 checked_i64(i128 v, const char* what) {
  if (v > INT64_MAX || v < -(i128)INT64_MAX) throw std::invalid_argument(what);
  return (i64)v;
}

}  // namespace

i64 TwistVector::scale() const {
  validate_twist(*this);
  i128 p = (i128)t.x0 * t.x1 * t.x2 * t.x3;
  if (p < 0) p = -p;
  return checked_i64(p, "twist scale overflows");
}

i64 height(const BiPoint& p) {
  if (gcd4(p.x.x0, p.x.x1, p.x.x2, p.x.x3) != 1)
    throw std::invalid_argument("x is not primitive");
  if (gcd4(p.y.x0, p.y.x1, p.y.x2, p.y.x3) != 1)
    throw std::invalid_argument("y is not primitive");
  i128 rel = (i128)p.x.x0 * cube(p.y.x0) + (i128)p.x.x1 * cube(p.y.x1) +
             (i128)p.x.x2 * cube(p.y.x2) + (i128)p.x.x3 * cube(p.y.x3);
  if (rel != 0) throw std::invalid_argument("point is not on the bundle");
  return checked_i64(cube(sup4(p.x)) * sup4(p.y), "height overflows");
}

Rat BundleCount::value() const { return rat(pairs, 4); }

BundleCount count_bt(i64 bound, bool exclude_zero_y, int workers) {
  if (bound < 1) throw std::invalid_argument("bound must be >= 1");
  if (bound > 2048) throw std::invalid_argument("bound too large (max 2048)");
  i64 C = 1;
  while ((C + 1) * (C + 1) * (C + 1) <= bound) C++;

  std::vector<PrimVec4> xs;
  for (i64 a = -C; a <= C; a++)
    for (i64 b = -C; b <= C; b++)
      for (i64 c = -C; c <= C; c++)
        for (i64 d = -C; d <= C; d++)
          if (gcd4(a, b, c, d) == 1) xs.push_back({a, b, c, d});

  struct Rec {
    i64 v;
    int a, b;
    bool operator<(const Rec& o) const { return v < o.v; }
  };

  std::vector<i64> slot_pairs(kSlots, 0);
  detail::parallel_slots(workers, kSlots, [&](int slot) {
    std::vector<Rec> recs;
    for (size_t ix = slot; ix < xs.size(); ix += kSlots) {
      const PrimVec4& x = xs[ix];
      i64 nx = sup4(x);
      i64 M = bound / (nx * nx * nx);
      std::vector<i64> cb(2 * M + 1);
      for (i64 y = -M; y <= M; y++) cb[y + M] = y * y * y;
      recs.clear();
      recs.reserve((2 * M + 1) * (2 * M + 1));
      for (i64 y0 = -M; y0 <= M; y0++)
        for (i64 y1 = -M; y1 <= M; y1++)
          recs.push_back({x.x0 * cb[y0 + M] + x.x1 * cb[y1 + M], (int)y0, (int)y1});
      std::sort(recs.begin(), recs.end());
      i64 hits = 0;
      for (i64 y2 = -M; y2 <= M; y2++)
        for (i64 y3 = -M; y3 <= M; y3++) {
          if (exclude_zero_y && (y2 == 0 || y3 == 0)) continue;
          i64 w = -(x.x2 * cb[y2 + M] + x.x3 * cb[y3 + M]);
          auto lo = std::lower_bound(recs.begin(), recs.end(), Rec{w, 0, 0});
          for (auto it = lo; it != recs.end() && it->v == w; ++it) {
            if (exclude_zero_y && (it->a == 0 || it->b == 0)) continue;
            if (gcd4(it->a, it->b, y2, y3) == 1) hits++;
          }
        }
      slot_pairs[slot] += hits;
    }
  });

  BundleCount out;
  out.bound = bound;
  out.exclude_zero_y = exclude_zero_y;
  for (int s = 0; s < kSlots; s++) out.pairs += slot_pairs[s];
  if (out.pairs % 4 != 0) throw internal_error("pair count not divisible by 4");
  return out;
}

TransferResult transfer_point(const TwistVector& tw, const PrimVec4& z) {
  validate_twist(tw);
  if (gcd4(z.x0, z.x1, z.x2, z.x3) != 1)
    throw std::invalid_argument("z is not primitive");
  if (cube(z.x0) + cube(z.x1) + cube(z.x2) + cube(z.x3) != 0)
    throw std::invalid_argument("z is not a solution of the diagonal cubic");
  const PrimVec4& t = tw.t;
  i64 T = tw.scale();
  i64 w[4] = {checked_i64((i128)z.x0 * t.x1 * t.x2 * t.x3, "transfer overflows"),
              checked_i64((i128)z.x1 * t.x0 * t.x2 * t.x3, "transfer overflows"),
              checked_i64((i128)z.x2 * t.x0 * t.x1 * t.x3, "transfer overflows"),
              checked_i64((i128)z.x3 * t.x0 * t.x1 * t.x2, "transfer overflows")};
  i64 d = gcd4(w[0], w[1], w[2], w[3]);
  for (auto& c : w) c /= d;
  for (auto c : w) {
    if (c == 0) continue;
    if (c < 0)
      for (auto& e : w) e = -e;
    break;
  }
  TransferResult out;
  out.y = {w[0], w[1], w[2], w[3]};
  if (cube(t.x0) * cube(w[0]) + cube(t.x1) * cube(w[1]) +
          cube(t.x2) * cube(w[2]) + cube(t.x3) * cube(w[3]) !=
      0)
    throw internal_error("transfer image left the twisted surface");
  out.height = sup4(out.y);
  if ((i128)out.height > (i128)sup4(z) * T)
    throw internal_error("transfer height bound violated");
  return out;
}

i64 count_on_twist(const TwistVector& tw, i64 bound, bool exclude_lines) {
  validate_twist(tw);
  if (bound < 1) throw std::invalid_argument("bound must be >= 1");
  if (bound > 1024) throw std::invalid_argument("bound too large (max 1024)");
  const PrimVec4& t = tw.t;

  struct Rec {
    i128 v;
    int a, b;
    bool operator<(const Rec& o) const { return v < o.v; }
  };
  std::vector<Rec> recs;
  recs.reserve((2 * bound + 1) * (2 * bound + 1));
  for (i64 y0 = -bound; y0 <= bound; y0++)
    for (i64 y1 = -bound; y1 <= bound; y1++)
      recs.push_back({cube((i128)t.x0 * y0) + cube((i128)t.x1 * y1), (int)y0, (int)y1});
  std::sort(recs.begin(), recs.end());

  i64 vectors = 0;
  for (i64 y2 = -bound; y2 <= bound; y2++)
    for (i64 y3 = -bound; y3 <= bound; y3++) {
      i128 w = -(cube((i128)t.x2 * y2) + cube((i128)t.x3 * y3));
      auto lo = std::lower_bound(recs.begin(), recs.end(), Rec{w, 0, 0});
      for (auto it = lo; it != recs.end() && it->v == w; ++it) {
        if (gcd4(it->a, it->b, y2, y3) != 1) continue;
        if (exclude_lines &&
            on_fermat_line({t.x0 * it->a, t.x1 * it->b, t.x2 * y2, t.x3 * y3}))
          continue;
        vectors++;
      }
    }
  if (vectors % 2 != 0) throw internal_error("vector count not even");
  return vectors / 2;
}

}  // namespace fermat
