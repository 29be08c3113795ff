#include "fermatcount/counting.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fermatcount/arith.hpp"
#include "parallel.hpp"

namespace fermat {

namespace {

constexpr int kSlots = 64;

using detail::parallel_slots;

struct Rec {
  i64 v;
  int a, b;
  bool operator<(const Rec& o) const {
    if (v != o.v) return v < o.v;
    if (a != o.a) return a < o.a;
    return b < o.b;
  }
};

i64 gcd4(i64 a, i64 b, i64 c, i64 d) { return gcd64(gcd64(a, b), gcd64(c, d)); }

bool vec_less(const PrimVec4& u, const PrimVec4& v) {
  if (u.x0 != v.x0) return u.x0 < v.x0;
  if (u.x1 != v.x1) return u.x1 < v.x1;
  if (u.x2 != v.x2) return u.x2 < v.x2;
  return u.x3 < v.x3;
}

struct Run {
  i64 v;
  size_t lo, hi;
};

std::vector<Run> find_runs(const std::vector<Rec>& recs) {
  std::vector<Run> runs;
  size_t i = 0;
  while (i < recs.size()) {
    size_t j = i;
    while (j < recs.size() && recs[j].v == recs[i].v) j++;
    runs.push_back({recs[i].v, i, j});
    i = j;
  }
  return runs;
}

// Shared engine for count_N and fermat_solutions.
CountReport fermat_count(i64 B, int workers, std::vector<PrimVec4>* collect) {
  if (B < 1 || B > 5000) throw std::invalid_argument("count_N: need 1 <= B <= 5000");
  if (workers < 1) throw std::invalid_argument("count_N: workers must be >= 1");

  std::vector<Rec> recs;
  recs.reserve((size_t)(2 * B + 1) * (2 * B + 1));
  for (i64 a = -B; a <= B; a++)
    for (i64 b = -B; b <= B; b++) recs.push_back({a * a * a + b * b * b, (int)a, (int)b});
  std::sort(recs.begin(), recs.end());
  auto runs = find_runs(recs);

  // Tasks: the zero run against itself, and each positive run against its
  // mirror.  (a,b) -> (-a,-b) negates the value, so the mirror always exists.
  struct Task {
    size_t pos, neg;  // run indices; pos == neg for the zero run
  };
  std::vector<Task> tasks;
  for (size_t r = 0; r < runs.size(); r++) {
    if (runs[r].v < 0) continue;
    if (runs[r].v == 0) {
      tasks.push_back({r, r});
      continue;
    }
    Run key{-runs[r].v, 0, 0};
    auto it = std::lower_bound(runs.begin(), runs.end(), key,
                               [](const Run& x, const Run& y) { return x.v < y.v; });
    if (it == runs.end() || it->v != key.v) throw internal_error("count_N: mirror run missing");
    tasks.push_back({r, (size_t)(it - runs.begin())});
  }

  std::vector<i64> slot_count(kSlots, 0);
  std::vector<std::vector<PrimVec4>> slot_vecs(collect ? kSlots : 0);
  parallel_slots(workers, kSlots, [&](int slot) {
    for (size_t t = slot; t < tasks.size(); t += kSlots) {
      const Run& rp = runs[tasks[t].pos];
      const Run& rn = runs[tasks[t].neg];
      bool zero = rp.v == 0;
      for (size_t i = rp.lo; i < rp.hi; i++)
        for (size_t j = rn.lo; j < rn.hi; j++) {
          PrimVec4 v{recs[i].a, recs[i].b, recs[j].a, recs[j].b};
          if (gcd4(v.x0, v.x1, v.x2, v.x3) != 1 || on_fermat_line(v)) continue;
          // Swapping the halves gives the partner vector with the negated
          // half-values; line membership and primitivity are symmetric.
          slot_count[slot] += zero ? 1 : 2;
          if (collect) {
            slot_vecs[slot].push_back(v);
            if (!zero) slot_vecs[slot].push_back({v.x2, v.x3, v.x0, v.x1});
          }
        }
    }
  });

  CountReport rep;
  rep.bound = B;
  rep.method = "direct";
  rep.excluded_on_lines = excluded_on_lines(B);
  for (int s = 0; s < kSlots; s++) rep.count += slot_count[s];
  if (collect) {
    for (auto& sv : slot_vecs) collect->insert(collect->end(), sv.begin(), sv.end());
    std::sort(collect->begin(), collect->end(), vec_less);
    if ((i64)collect->size() != rep.count) throw internal_error("count_N: collection mismatch");
  }
  return rep;
}

}  // namespace

bool on_fermat_line(const PrimVec4& v) {
  return (v.x0 + v.x1 == 0 && v.x2 + v.x3 == 0) || (v.x0 + v.x2 == 0 && v.x1 + v.x3 == 0) ||
         (v.x0 + v.x3 == 0 && v.x1 + v.x2 == 0);
}

bool on_x_line(const PrimVec4& v) { return v.x0 == 0 || v.x2 == 0 || v.x2 == v.x0; }

i64 excluded_on_lines(i64 B) {
  if (B < 1) throw std::invalid_argument("excluded_on_lines: need B >= 1");
  return 24 * phi_summatory(B) - 6;
}

CountReport count_N(i64 B, int workers) { return fermat_count(B, workers, nullptr); }

std::vector<PrimVec4> fermat_solutions(i64 B, int workers) {
  std::vector<PrimVec4> out;
  fermat_count(B, workers, &out);
  return out;
}

CountReport count_NX_direct(i64 B, int workers) {
  if (B < 1 || B > 10000) throw std::invalid_argument("count_NX_direct: need 1 <= B <= 10000");
  if (workers < 1) throw std::invalid_argument("count_NX_direct: workers must be >= 1");

  // x0 >= 1 representatives only (off the lines x0 and x2 are nonzero and the
  // value a(a^2+3b^2) is positive, forcing x2 >= 1 too); the global sign
  // doubles at the end.  b carries weight 2 when nonzero (x1 = +-b).
  std::vector<Rec> recs;
  recs.reserve((size_t)B * (B + 1));
  for (i64 a = 1; a <= B; a++)
    for (i64 b = 0; b <= B; b++) recs.push_back({a * (a * a + 3 * b * b), (int)a, (int)b});
  std::sort(recs.begin(), recs.end());
  auto runs = find_runs(recs);

  // Within a run, x2 = x0 forces |x3| = |x1|, so equal table indices are
  // exactly the line points: off-line vectors are the i != j pairs.
  std::vector<size_t> tasks;
  for (size_t r = 0; r < runs.size(); r++)
    if (runs[r].hi - runs[r].lo >= 2) tasks.push_back(r);

  std::vector<i64> slot_count(kSlots, 0);
  parallel_slots(workers, kSlots, [&](int slot) {
    for (size_t t = slot; t < tasks.size(); t += kSlots) {
      const Run& run = runs[tasks[t]];
      for (size_t i = run.lo; i < run.hi; i++)
        for (size_t j = run.lo; j < run.hi; j++) {
          if (i == j) continue;
          if (gcd4(recs[i].a, recs[i].b, recs[j].a, recs[j].b) != 1) continue;
          slot_count[slot] += (i64)(recs[i].b ? 2 : 1) * (recs[j].b ? 2 : 1);
        }
    }
  });

  CountReport rep;
  rep.bound = B;
  rep.method = "direct";
  rep.excluded_on_lines = excluded_on_lines(B);
  for (int s = 0; s < kSlots; s++) rep.count += slot_count[s];
  rep.count *= 2;
  return rep;
}

CountReport count_NX_fibration(i64 B, int workers) {
  if (B < 1 || B > 1000) throw std::invalid_argument("count_NX_fibration: need 1 <= B <= 1000");
  if (workers < 1) throw std::invalid_argument("count_NX_fibration: workers must be >= 1");

  // Half plane: t >= 1 covers every nonsingular fibre (t = 0 is singular);
  // (s,t) and (-s,-t) carry the same conic, hence the factor 2 per fibre.
  struct Cell {
    i64 s, t;
  };
  std::vector<Cell> fibres;
  for (i64 t = 1; t <= B; t++)
    for (i64 s = -B; s <= B; s++) {
      if (s == 0 || s == t || gcd64(s, t) != 1) continue;
      fibres.push_back({s, t});
    }

  std::vector<i64> points(fibres.size(), 0);
  parallel_slots(workers, kSlots, [&](int slot) {
    for (size_t i = slot; i < fibres.size(); i += kSlots) {
      Fibre f = fibre(fibres[i].s, fibres[i].t);
      if (f.singular) throw internal_error("count_NX_fibration: singular fibre slipped through");
      if (!is_isotropic(f)) continue;
      points[i] = 2 * count_M_positive(f, B);
    }
  });

  CountReport rep;
  rep.bound = B;
  rep.method = "fibration";
  rep.excluded_on_lines = excluded_on_lines(B);
  for (size_t i = 0; i < fibres.size(); i++)
    if (points[i] > 0) {
      rep.count += points[i];
      rep.breakdown.push_back({fibres[i].s, fibres[i].t, points[i]});
    }
  return rep;
}

LogPowerFit fit_log_power(const std::vector<std::pair<i64, double>>& samples) {
  size_t n = samples.size();
  if (n < 6) throw std::invalid_argument("fit_log_power: need at least 6 samples");
  for (size_t i = 0; i < n; i++) {
    if (samples[i].first < 1) throw std::invalid_argument("fit_log_power: bounds must be positive");
    if (i > 0 && samples[i].first <= samples[i - 1].first)
      throw std::invalid_argument("fit_log_power: bounds must be strictly increasing");
    if (samples[i].second < 0) throw std::invalid_argument("fit_log_power: negative count");
  }

  // Solve in the centered variable u = log B - mean(log B) for conditioning,
  // then expand: the leading coefficient is unchanged.
  std::vector<long double> L(n), y(n);
  long double lbar = 0;
  for (size_t i = 0; i < n; i++) {
    L[i] = logl((long double)samples[i].first);
    lbar += L[i];
    y[i] = (long double)samples[i].second / (long double)samples[i].first;
  }
  lbar /= (long double)n;

  long double m[4][5] = {};
  for (size_t i = 0; i < n; i++) {
    long double u = L[i] - lbar;
    long double f[4] = {1, u, u * u, u * u * u};
    for (int r = 0; r < 4; r++) {
      for (int c = 0; c < 4; c++) m[r][c] += f[r] * f[c];
      m[r][4] += f[r] * y[i];
    }
  }

  long double scale = 0;
  for (int r = 0; r < 4; r++) scale = std::max(scale, fabsl(m[r][r]));
  for (int col = 0; col < 4; col++) {
    int piv = col;
    for (int r = col + 1; r < 4; r++)
      if (fabsl(m[r][col]) > fabsl(m[piv][col])) piv = r;
    if (fabsl(m[piv][col]) < 1e-18L * scale)
      throw std::invalid_argument("fit_log_power: degenerate design matrix");
    if (piv != col)
      for (int c = 0; c < 5; c++) std::swap(m[piv][c], m[col][c]);
    for (int r = col + 1; r < 4; r++) {
      long double q = m[r][col] / m[col][col];
      for (int c = col; c < 5; c++) m[r][c] -= q * m[col][c];
    }
  }
  long double d[4];
  for (int r = 3; r >= 0; r--) {
    long double acc = m[r][4];
    for (int c = r + 1; c < 4; c++) acc -= m[r][c] * d[c];
    d[r] = acc / m[r][r];
  }

  LogPowerFit fit;
  fit.c3 = (double)d[3];
  fit.c2 = (double)(d[2] - 3 * d[3] * lbar);
  fit.c1 = (double)(d[1] - 2 * d[2] * lbar + 3 * d[3] * lbar * lbar);
  fit.c0 = (double)(d[0] - d[1] * lbar + d[2] * lbar * lbar - d[3] * lbar * lbar * lbar);
  long double ss = 0;
  for (size_t i = 0; i < n; i++) {
    long double u = L[i] - lbar;
    long double fitted = d[0] + u * (d[1] + u * (d[2] + u * d[3]));
    ss += (y[i] - fitted) * (y[i] - fitted);
  }
  fit.rms_residual = (double)sqrtl(ss / (long double)n);
  return fit;
}

}  // namespace fermat
