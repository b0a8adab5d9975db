#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace gvb {

using Rational = mpq_class;

/// Canonicalized num/den.
inline Rational ratio(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational factorial(unsigned k);
Rational binomial(unsigned n, unsigned k);

std::string to_string(const Rational& q);

}  // namespace gvb
