#pragma once
// Exact rational numbers: a thin layer over GMP's mpq_class.  Everything in
// the library computes over these; there is no floating point anywhere.

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace coha {

using Rational = mpq_class;

// mpq_class(p, q) does not canonicalize; this does.
inline Rational ratio(long p, long q = 1) {
  if (q == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

// Accepts "p" or "p/q" with optional sign.  Throws on malformed input.
inline Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  Rational r;
  if (r.set_str(text, 10) != 0)
    throw std::invalid_argument("malformed rational literal: " + text);
  if (r.get_den() == 0) throw std::invalid_argument("rational with zero denominator: " + text);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

}  // namespace coha
