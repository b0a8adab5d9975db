#include "gvb/rational.hpp"

namespace gvb {

Rational factorial(unsigned k) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), k);
  return Rational(r);
}

Rational binomial(unsigned n, unsigned k) {
  if (k > n) return Rational(0);
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return Rational(r);
}

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace gvb
