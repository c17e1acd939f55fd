#pragma once
#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace b0lie {

using Int = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                           boost::multiprecision::et_off>;
using Rat =
    boost::multiprecision::number<boost::multiprecision::rational_adaptor<
                                      boost::multiprecision::cpp_int_backend<>>,
                                  boost::multiprecision::et_off>;

inline Int rat_num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int rat_den(const Rat& q) { return boost::multiprecision::denominator(q); }

// g = s*a + t*b with g = gcd(a,b) >= 0.
Int xgcd(const Int& a, const Int& b, Int& s, Int& t);

// Inverse of a modulo m (m > 1); throws precondition_error if gcd(a,m) != 1.
Int mod_inverse(const Int& a, const Int& m);

inline Int mod_reduce(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

// Floor division (C++ integer division truncates toward zero).
inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

Int pow_int(Int base, unsigned long long e);

bool is_prime(long long n);

long long to_ll(const Int& v);

// p-adic valuation; pre: v != 0.
unsigned v_p(Int v, const Int& p);

}  // namespace b0lie
