#ifndef YBL_RATIONAL_HPP
#define YBL_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ybl {

// Arbitrary-precision rational scalar. GMP keeps values canonical
// (reduced, positive denominator) as long as inputs are canonical.
using Rat = mpq_class;

inline Rat rat_of(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rat_of: zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Parses "p", "-p/q" or "p/q". Whitespace is not accepted.
inline Rat rat_parse(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("rat_parse: empty string");
  Rat r;
  if (r.set_str(s, 10) != 0)
    throw std::invalid_argument("rat_parse: bad rational '" + s + "'");
  if (r.get_den() == 0)
    throw std::invalid_argument("rat_parse: zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

inline bool rat_is_zero(const Rat& r) { return sgn(r) == 0; }

inline Rat rat_pow(const Rat& base, long e) {
  if (e < 0) {
    if (rat_is_zero(base)) throw std::domain_error("rat_pow: 0^negative");
    return rat_pow(1 / base, -e);
  }
  Rat acc(1), b = base;
  while (e > 0) {
    if (e & 1) acc *= b;
    b *= b;
    e >>= 1;
  }
  return acc;
}

inline Rat rat_abs(const Rat& r) { return abs(r); }

}  // namespace ybl

#endif
