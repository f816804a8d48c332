#pragma once

#include <gmpxx.h>

#include <string>

#include "qkrec/errors.hpp"

namespace qkrec {

// Exact rational scalar. All arithmetic in the engine bottoms out here;
// no floating point anywhere.
using Rat = mpq_class;

inline std::string rat_to_string(const Rat& r) { return r.get_str(); }

inline Rat rat_from_string(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0) {
    throw EngineError(ErrorKind::parse, "invalid rational literal: '" + s + "'");
  }
  r.canonicalize();
  return r;
}

inline Rat rat_factorial(long n) {
  Rat r = 1;
  for (long i = 2; i <= n; ++i) r *= i;
  return r;
}

inline Rat rat_binomial(long n, long k) {
  if (k < 0) return 0;
  Rat r = 1;
  for (long i = 0; i < k; ++i) {
    r *= Rat(n - i);
    r /= Rat(i + 1);
  }
  return r;
}

inline Rat rat_pow(const Rat& base, long e) {
  if (e < 0) {
    if (base == 0) throw EngineError(ErrorKind::non_unit, "0^negative");
    Rat inv = 1 / base;
    return rat_pow(inv, -e);
  }
  Rat r = 1, b = base;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

}  // namespace qkrec
