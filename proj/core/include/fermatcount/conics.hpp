#pragma once
#include "fermatcount/arith.hpp"
#include "fermatcount/rational.hpp"

#include <vector>

namespace fermat {

// The conic attached to a primitive parameter pair (s,t):
//   Q(x,y,z) = (t^3 - s^3) x^2 - 3s y^2 + 3t z^2.
// Points (x,y,z) with x != 0 correspond to surface points
// (s*x, y, t*x, z) of x0(x0^2+3x1^2) = x2(x2^2+3x3^2).
struct Fibre {
  i64 s = 0, t = 0;
  i64 a = 0, b = 0, c = 0;  // t^3-s^3, -3s, 3t
  i64 discriminant = 0;     // -9 (t^3-s^3) s t
  bool singular = true;     // s t (t - s) == 0
};

// Error on non-coprime (s,t) and on (0,0).
Fibre fibre(i64 s, i64 t);

constexpr i64 PLACE_INF = -1;

// Hilbert symbol (a,b)_v in {-1,+1}; v is a prime or PLACE_INF.
// Error when a or b is zero.
int hilbert_symbol(i64 a, i64 b, i64 place);

// Solubility of Q = 0 in the completion at `place` (primitive solutions).
// Error on singular fibres.
bool is_locally_soluble(const Fibre& f, i64 place);

// Solubility over the rationals by Hasse: the real place plus every prime
// dividing 2 * discriminant.  Error on singular fibres.
bool is_isotropic(const Fibre& f);

struct ConicPoint {
  i64 x = 0, y = 0, z = 0;
};

// A primitive rational point on Q = 0, deterministic: the solution
// minimizing (|x|, |y|, |z|) lexicographically, preferring nonnegative
// coordinates on ties.  Error if the fibre is anisotropic.
ConicPoint find_point(const Fibre& f);

// Number of primitive integer solutions of Q = 0 with
// max(|x s|, |x t|, |y|, |z|) <= B (all solutions, including x = 0).
i64 count_M(const Fibre& f, i64 B);

// Same height condition restricted to x >= 1.  Summing 2*count_M_positive
// over one fibre per antipodal parameter pair counts surface points off
// the three lines.
i64 count_M_positive(const Fibre& f, i64 B);

}  // namespace fermat
