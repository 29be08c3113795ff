#pragma once
#include <gmpxx.h>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace fermat {

using i64 = long long;
using u64 = unsigned long long;
using i128 = __int128;

using Int = mpz_class;
using Rat = mpq_class;

// Raised when an internal invariant fails (as opposed to bad caller input).
// The CLI maps it to exit code 2.
struct internal_error : std::logic_error {
  explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

inline Int to_int(i64 v) { return Int(static_cast<long>(v)); }

inline Rat rat(i64 num, i64 den = 1) {
  if (den == 0) throw std::invalid_argument("rat: zero denominator");
  Rat r(to_int(num), to_int(den));
  r.canonicalize();
  return r;
}

// "n/d" with no spaces, or "n" when the denominator is 1.  Exact.
inline std::string rat_str(const Rat& r) { return r.get_str(); }

inline double rat_double(const Rat& r) { return r.get_d(); }

}  // namespace fermat
