#include "b0lie/ints.hpp"

#include "b0lie/error.hpp"

namespace b0lie {

Int xgcd(const Int& a, const Int& b, Int& s, Int& t) {
  Int old_r = a, r = b;
  Int old_s = 1, s1 = 0;
  Int old_t = 0, t1 = 1;
  while (r != 0) {
    Int q = old_r / r;
    Int tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s1;
    old_s = s1;
    s1 = tmp;
    tmp = old_t - q * t1;
    old_t = t1;
    t1 = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  s = old_s;
  t = old_t;
  return old_r;
}

Int mod_inverse(const Int& a, const Int& m) {
  Int s, t;
  Int g = xgcd(mod_reduce(a, m), m, s, t);
  if (g != 1) throw_precondition("denominator not invertible modulo " + m.str());
  return mod_reduce(s, m);
}

Int pow_int(Int base, unsigned long long e) {
  Int r = 1;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

long long to_ll(const Int& v) {
  if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
    throw_internal("integer out of machine range: " + v.str());
  return static_cast<long long>(v);
}

unsigned v_p(Int v, const Int& p) {
  check_internal(v != 0, "v_p of zero");
  if (v < 0) v = -v;
  unsigned k = 0;
  while (v % p == 0) {
    v /= p;
    ++k;
  }
  return k;
}

}  // namespace b0lie
