#pragma once

#include <gmpxx.h>

#include <string>

#include "necklace/error.hpp"

namespace necklace {

// Exact rational scalar. Ground field is Q, which is all the constructions
// need: everything downstream is characteristic 0 and finite-dimensional.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_zero(const Rat& q) { return sgn(q) == 0; }

inline Rat sign_pow(long e) { return (e % 2 != 0) ? Rat(-1) : Rat(1); }

// Parses "p", "-p/q" or "p/q" (whitespace-free).
inline Rat parse_rat(const std::string& s) {
  if (s.empty()) fail(errc::bad_input, "empty rational literal");
  try {
    Rat q(s);
    require(q.get_den() != 0, errc::bad_input, "zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    fail(errc::bad_input, "malformed rational literal '" + s + "'");
  }
}

// Canonical "p/q" / "p" rendering used by every serializer.
inline std::string rat_str(const Rat& q) { return q.get_str(); }

}  // namespace necklace
