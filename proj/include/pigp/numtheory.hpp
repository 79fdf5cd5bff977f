#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

namespace pigp::nt {

using i64 = std::int64_t;

inline i64 mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

inline i64 powmod(i64 base, i64 exp, i64 m) {
  if (m == 1)
    return 0;
  base = mod(base, m);
  i64 result = 1;
  while (exp > 0) {
    if (exp & 1)
      result = static_cast<i64>((static_cast<__int128>(result) * base) % m);
    base = static_cast<i64>((static_cast<__int128>(base) * base) % m);
    exp >>= 1;
  }
  return result;
}

inline i64 ipow(i64 base, int exp) {
  i64 r = 1;
  while (exp-- > 0)
    r *= base;
  return r;
}

inline bool is_prime(i64 n) {
  if (n < 2)
    return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

/// Prime factorization as prime -> exponent, ascending primes.
inline std::map<i64, int> factorize(i64 n) {
  std::map<i64, int> f;
  for (i64 d = 2; d * d <= n; ++d)
    while (n % d == 0) {
      ++f[d];
      n /= d;
    }
  if (n > 1)
    ++f[n];
  return f;
}

/// Largest power of p dividing n, returned as (exponent, p^exponent).
inline std::pair<int, i64> p_part(i64 n, i64 p) {
  int e = 0;
  i64 pe = 1;
  while (n % p == 0) {
    n /= p;
    pe *= p;
    ++e;
  }
  return {e, pe};
}

/// Inverse of a modulo m, or -1 if gcd(a, m) != 1.
inline i64 inverse_mod(i64 a, i64 m) {
  if (m == 1)
    return 0;
  i64 g = m, x = 0, x1 = 1, a1 = mod(a, m);
  while (a1 != 0) {
    i64 q = g / a1;
    i64 t = g - q * a1;
    g = a1;
    a1 = t;
    t = x - q * x1;
    x = x1;
    x1 = t;
  }
  if (g != 1)
    return -1;
  return mod(x, m);
}

/// Solves x = r1 (mod m1), x = r2 (mod m2) for coprime moduli; result in [0, m1*m2).
inline i64 crt(i64 r1, i64 m1, i64 r2, i64 m2) {
  i64 m = m1 * m2;
  i64 t = mod((r2 - r1) % m2 * inverse_mod(m1 % m2, m2), m2);
  return mod(r1 + m1 * t, m);
}

/// Multiplicative order of a modulo m (a coprime to m), or 0 if not coprime.
inline i64 multiplicative_order(i64 a, i64 m) {
  if (m == 1)
    return 1;
  if (std::gcd(mod(a, m), m) != 1)
    return 0;
  i64 x = mod(a, m), k = 1;
  while (x != 1) {
    x = x * mod(a, m) % m;
    ++k;
  }
  return k;
}

inline bool is_primitive_root(i64 g, i64 p) {
  return multiplicative_order(g, p) == p - 1;
}

inline i64 least_primitive_root(i64 p) {
  for (i64 g = 1; g < p + 1; ++g)
    if (is_primitive_root(g, p))
      return g;
  return 0;
}

} // namespace pigp::nt
