#include <doctest.h>

#include <cmath>
#include <map>
#include <set>
#include <tuple>

#include "fermatcount/bundle.hpp"

using namespace fermat;

namespace {

i64 gcd4(i64 a, i64 b, i64 c, i64 d) {
  return gcd64(gcd64(a, b), gcd64(c, d));
}

i64 sup4(const PrimVec4& v) {
  return std::max(std::max(std::abs(v.x0), std::abs(v.x1)),
                  std::max(std::abs(v.x2), std::abs(v.x3)));
}

// exact signed cube root, or INT64_MIN when none exists
i64 icbrt(i64 n) {
  i64 r = (i64)std::llround(std::cbrt((double)n));
  for (i64 c = r - 2; c <= r + 2; c++)
    if (c * c * c == n) return c;
  return INT64_MIN;
}

// pair count by fibre: fix x, solve for y3 (or sweep it when x3 = 0)
i64 bt_oracle(i64 B, bool exclude_zero_y) {
  i64 C = 1;
  while ((C + 1) * (C + 1) * (C + 1) <= B) C++;
  i64 pairs = 0;
  for (i64 a = -C; a <= C; a++)
    for (i64 b = -C; b <= C; b++)
      for (i64 c = -C; c <= C; c++)
        for (i64 d = -C; d <= C; d++) {
          if (gcd4(a, b, c, d) != 1) continue;
          i64 nx = sup4({a, b, c, d});
          i64 M = B / (nx * nx * nx);
          for (i64 y0 = -M; y0 <= M; y0++)
            for (i64 y1 = -M; y1 <= M; y1++)
              for (i64 y2 = -M; y2 <= M; y2++) {
                i64 rel = a * y0 * y0 * y0 + b * y1 * y1 * y1 + c * y2 * y2 * y2;
                if (d == 0) {
                  if (rel != 0) continue;
                  for (i64 y3 = -M; y3 <= M; y3++) {
                    if (exclude_zero_y && (y0 == 0 || y1 == 0 || y2 == 0 || y3 == 0))
                      continue;
                    if (gcd4(y0, y1, y2, y3) == 1) pairs++;
                  }
                } else {
                  if (rel % d != 0) continue;
                  i64 y3 = icbrt(-rel / d);
                  if (y3 == INT64_MIN || std::abs(y3) > M) continue;
                  if (exclude_zero_y && (y0 == 0 || y1 == 0 || y2 == 0 || y3 == 0))
                    continue;
                  if (gcd4(y0, y1, y2, y3) == 1) pairs++;
                }
              }
        }
  return pairs;
}

// all primitive solutions of the diagonal cubic with |z| <= B, lines included
std::vector<PrimVec4> all_solutions(i64 B) {
  std::vector<PrimVec4> out;
  for (i64 z0 = -B; z0 <= B; z0++)
    for (i64 z1 = -B; z1 <= B; z1++)
      for (i64 z2 = -B; z2 <= B; z2++) {
        i64 z3 = icbrt(-(z0 * z0 * z0 + z1 * z1 * z1 + z2 * z2 * z2));
        if (z3 == INT64_MIN || std::abs(z3) > B) continue;
        if (gcd4(z0, z1, z2, z3) == 1) out.push_back({z0, z1, z2, z3});
      }
  return out;
}

PrimVec4 canon(PrimVec4 v) {
  i64 lead = v.x0 ? v.x0 : v.x1 ? v.x1 : v.x2 ? v.x2 : v.x3;
  if (lead < 0) v = {-v.x0, -v.x1, -v.x2, -v.x3};
  return v;
}

std::tuple<i64, i64, i64, i64> key(const PrimVec4& v) {
  return {v.x0, v.x1, v.x2, v.x3};
}

}  // namespace

TEST_CASE("anticanonical height") {
  CHECK(height({{1, 1, 1, 1}, {3, 4, 5, -6}}) == 6);
  CHECK(height({{1, -1, 0, 0}, {1, 1, 1, 1}}) == 1);
  CHECK(height({{1, 1, -2, 0}, {1, 1, 1, 0}}) == 8);
  CHECK(height({{5, -2, -3, 7}, {1, 1, 1, 0}}) == 343);

  CHECK_THROWS_AS(height({{1, 1, 1, 1}, {1, 1, 1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(height({{2, 2, 2, 2}, {3, 4, 5, -6}}), std::invalid_argument);
  CHECK_THROWS_AS(height({{1, 1, 1, 1}, {6, 8, 10, -12}}), std::invalid_argument);
}

TEST_CASE("twist scale") {
  TwistVector unit{{1, 1, 1, 1}}, last2{{1, 1, 1, 2}}, mixed{{1, -1, 2, 3}};
  TwistVector zero{{1, 0, 1, 1}}, imprim{{2, 2, 2, 2}};
  CHECK(unit.scale() == 1);
  CHECK(last2.scale() == 2);
  CHECK(mixed.scale() == 6);
  CHECK_THROWS_AS(zero.scale(), std::invalid_argument);
  CHECK_THROWS_AS(imprim.scale(), std::invalid_argument);
}

TEST_CASE("bundle count at fixed spots") {
  auto b1 = count_bt(1);
  CHECK(b1.pairs == 4 * 440);
  CHECK(b1.value() == rat(440));
  CHECK(b1.value().get_den() == 1);
  CHECK(count_bt(2).value() == rat(1304));
  CHECK(count_bt(8).value() == rat(39944));

  CHECK_THROWS_AS(count_bt(0), std::invalid_argument);
  CHECK_THROWS_AS(count_bt(3000), std::invalid_argument);
  CHECK_THROWS_AS(count_bt(8, false, 0), std::invalid_argument);
}

TEST_CASE("bundle count against the fibre oracle") {
  for (i64 B : {1, 2, 5, 8, 64}) {
    CAPTURE(B);
    CHECK(count_bt(B).pairs == bt_oracle(B, false));
    CHECK(count_bt(B, true).pairs == bt_oracle(B, true));
  }
}

TEST_CASE("bundle count monotonicity and the zero-fibre flag") {
  i64 prev = 0;
  for (i64 B = 1; B <= 12; B++) {
    auto full = count_bt(B);
    auto open = count_bt(B, true);
    CHECK(full.pairs >= prev);
    CHECK(open.pairs <= full.pairs);
    CHECK(full.pairs % 4 == 0);
    CHECK(open.pairs % 4 == 0);
    prev = full.pairs;
  }
}

TEST_CASE("transfer of diagonal cubic solutions") {
  auto id = transfer_point({{1, 1, 1, 1}}, {3, 4, 5, -6});
  CHECK(key(id.y) == key({3, 4, 5, -6}));
  CHECK(id.height == 6);

  auto tw = transfer_point({{1, 1, 1, 2}}, {3, 4, 5, -6});
  CHECK(key(tw.y) == key({3, 4, 5, -3}));
  CHECK(tw.height == 5);

  CHECK_THROWS_AS(transfer_point({{1, 1, 1, 2}}, {6, 8, 10, -12}),
                  std::invalid_argument);
  CHECK_THROWS_AS(transfer_point({{1, 1, 1, 2}}, {1, 1, 1, 1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(transfer_point({{1, 0, 1, 1}}, {3, 4, 5, -6}),
                  std::invalid_argument);
}

TEST_CASE("transfer soundness and injectivity") {
  auto sols = all_solutions(12);
  CHECK((i64)sols.size() == 1242);
  std::set<std::tuple<i64, i64, i64, i64>> classes;
  for (auto& z : sols) classes.insert(key(canon(z)));
  CHECK((i64)classes.size() == 621);

  for (PrimVec4 t : {PrimVec4{1, 1, 1, 1}, {1, 1, 1, 2}, {1, -1, 2, 3}}) {
    TwistVector tw{t};
    i64 T = tw.scale();
    std::set<std::tuple<i64, i64, i64, i64>> images;
    for (auto& zk : classes) {
      PrimVec4 z{std::get<0>(zk), std::get<1>(zk), std::get<2>(zk),
                 std::get<3>(zk)};
      auto got = transfer_point(tw, z);
      CHECK(got.height <= sup4(z) * T);
      images.insert(key(got.y));
    }
    CAPTURE(t.x3);
    CHECK(images.size() == classes.size());
  }

  // the spec range for distinctness on the identity twist
  auto big = all_solutions(20);
  std::set<std::tuple<i64, i64, i64, i64>> zc, yc;
  for (auto& z : big) zc.insert(key(canon(z)));
  for (auto& zk : zc) {
    PrimVec4 z{std::get<0>(zk), std::get<1>(zk), std::get<2>(zk),
               std::get<3>(zk)};
    yc.insert(key(transfer_point({{1, 1, 1, 2}}, z).y));
  }
  CHECK(yc.size() == zc.size());
}

TEST_CASE("twisted surface counts") {
  CHECK(count_on_twist({{1, 1, 1, 1}}, 12, true) == 72);
  CHECK(count_on_twist({{1, 1, 1, 1}}, 12, true) == count_N(12).count / 2);
  CHECK(count_on_twist({{1, 1, 1, 2}}, 24, true) == 114);
  CHECK(count_on_twist({{1, 1, 1, 2}}, 48, true) == 300);
  CHECK(count_on_twist({{1, 1, 1, 2}}, 24, false) == 1203);

  // transfer lower bound: points of height <= B dominate the Fermat count at B/T
  CHECK(count_on_twist({{1, 1, 1, 2}}, 24, true) >= count_N(12).count / 2);
  CHECK(count_on_twist({{1, 1, 1, 2}}, 48, true) >= count_N(24).count / 2);

  CHECK_THROWS_AS(count_on_twist({{1, 1, 1, 2}}, 0, true), std::invalid_argument);
  CHECK_THROWS_AS(count_on_twist({{1, 1, 1, 2}}, 2000, true), std::invalid_argument);
  CHECK_THROWS_AS(count_on_twist({{1, 0, 1, 1}}, 10, true), std::invalid_argument);
}

TEST_CASE("twisted surface count against a direct oracle") {
  for (auto [t, B] : {std::pair<PrimVec4, i64>{{1, 1, 2, 1}, 6},
                      {{1, -1, 2, 3}, 5},
                      {{1, 1, 1, 2}, 8}}) {
    for (bool excl : {true, false}) {
      i64 vectors = 0;
      for (i64 y0 = -B; y0 <= B; y0++)
        for (i64 y1 = -B; y1 <= B; y1++)
          for (i64 y2 = -B; y2 <= B; y2++)
            for (i64 y3 = -B; y3 <= B; y3++) {
              i128 rel = (i128)t.x0 * t.x0 * t.x0 * y0 * y0 * y0 +
                         (i128)t.x1 * t.x1 * t.x1 * y1 * y1 * y1 +
                         (i128)t.x2 * t.x2 * t.x2 * y2 * y2 * y2 +
                         (i128)t.x3 * t.x3 * t.x3 * y3 * y3 * y3;
              if (rel != 0 || gcd4(y0, y1, y2, y3) != 1) continue;
              if (excl && on_fermat_line({t.x0 * y0, t.x1 * y1, t.x2 * y2,
                                          t.x3 * y3}))
                continue;
              vectors++;
            }
      CAPTURE(t.x2);
      CAPTURE(B);
      CAPTURE(excl);
      CHECK(count_on_twist({t}, B, excl) == vectors / 2);
    }
  }
}

TEST_CASE("bundle count worker determinism") {
  auto a = count_bt(32, false, 1);
  auto b = count_bt(32, false, 4);
  CHECK(a.pairs == b.pairs);
}
