#pragma once
#include "fermatcount/counting.hpp"

namespace fermat {

// Point of the biprojective hypersurface sum_i x_i y_i^3 = 0 in P^3 x P^3,
// held as the primitive integer representatives of the two factors.
struct BiPoint {
  PrimVec4 x;
  PrimVec4 y;
};

// Diagonal twist data: the fibre surface sum_i t_i^3 y_i^3 = 0 over the base
// point [t0^3 : t1^3 : t2^3 : t3^3].  Requires t primitive with every
// coordinate nonzero.
struct TwistVector {
  PrimVec4 t;
  i64 scale() const;  // T = |t0 t1 t2 t3|
};

// Anticanonical height H(x, y) = |x|^3 * |y| in sup norms.  Errors when a
// vector is imprimitive or the membership relation fails.
i64 height(const BiPoint& p);

struct BundleCount {
  i64 bound = 0;
  i64 pairs = 0;  // primitive vector pairs, all four sign combinations
  bool exclude_zero_y = false;
  Rat value() const;  // pairs / 4; always an integer
};

// Pairs x, y of primitive vectors with sum_i x_i y_i^3 = 0 and
// |x|^3 * |y| <= bound, divided by 4 to cancel the sign choices of the
// projective representatives.  exclude_zero_y drops the fibres where some
// y coordinate vanishes.  Resource guard: bound <= 2048.
BundleCount count_bt(i64 bound, bool exclude_zero_y = false, int workers = 1);

struct TransferResult {
  PrimVec4 y;      // primitive, sign-canonical point on the twisted surface
  i64 height = 0;  // |y|; at most |z| * scale()
};

// Sends a primitive solution z of z0^3 + .. + z3^3 = 0 to [z_i / t_i] on the
// twisted surface, i.e. the primitive representative of
// (z_i * prod_{j != i} t_j).  Distinct projective classes [z] land on
// distinct classes [y].
TransferResult transfer_point(const TwistVector& t, const PrimVec4& z);

// Projective points y on sum_i t_i^3 y_i^3 = 0 with |y| <= bound.  When
// exclude_lines is set, points whose rescaling (t_i y_i) lies on a line of
// the diagonal cubic are dropped.  Resource guard: bound <= 1024.
i64 count_on_twist(const TwistVector& t, i64 bound, bool exclude_lines);

}  // namespace fermat
