#pragma once

// Test-side reference computations. Nothing here calls the library's
// relations, automorphism or counting code; only Group::mul and friends.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "pigp/catalog.hpp"
#include "pigp/group.hpp"

namespace oracle {

using pigp::Group;
using pigp::Index;

inline const std::vector<pigp::CatalogEntry> &bundled() {
  static const auto cat = pigp::load_catalog(pigp::default_catalog_path());
  return cat;
}

inline Group named(const std::string &name) {
  for (const auto &e : bundled())
    if (e.name == name)
      return e.group;
  throw std::runtime_error("no catalog group " + name);
}

/// x^k by repeated multiplication, k reduced modulo the order of x.
inline Index power(const Group &g, Index x, std::int64_t k) {
  std::uint32_t ord = 1;
  for (Index y = x; y != 0; y = g.mul(y, x))
    ++ord;
  k %= ord;
  if (k < 0)
    k += ord;
  Index out = 0;
  for (std::int64_t i = 0; i < k; ++i)
    out = g.mul(out, x);
  return out;
}

inline Index inverse(const Group &g, Index x) { return power(g, x, -1); }
inline Index conj(const Group &g, Index x, Index y) {
  return g.mul(g.mul(inverse(g, y), x), y);
}

/// a, b, h found by exhaustive search rather than CRT and Hensel lifting.
struct Arith {
  std::int64_t p, n, pr = 1, a = -1, b = -1, h = 1, b_mod = 0;
};

inline Arith arith(std::int64_t n, std::int64_t p, std::int64_t seed) {
  Arith r{p, n};
  std::int64_t m = n, two = 1, m2 = n;
  while (m % p == 0) {
    m /= p;
    r.pr *= p;
  }
  while (m2 % 2 == 0) {
    m2 /= 2;
    two *= 2;
  }
  for (std::int64_t x = 0; x < n && r.a < 0; ++x)
    if (x % m == 0 && ((p - 1) * x - 1) % r.pr == 0)
      r.a = x;
  for (std::int64_t x = 0; x < n && r.b < 0; ++x)
    if (x % m2 == 0 && (x - 1) % two == 0)
      r.b = x;
  if (n == 1)
    r.a = r.b = 0;
  // The unique (p-1)-st root of unity mod p^r congruent to the seed.
  if (r.pr > 1) {
    int found = 0;
    for (std::int64_t x = seed % p; x < r.pr; x += p) {
      std::int64_t y = 1;
      for (int i = 0; i < p - 1; ++i)
        y = y * x % r.pr;
      if (y == 1) {
        r.h = x;
        ++found;
      }
    }
    if (found != 1)
      throw std::logic_error("root of unity not unique");
  }
  // pi_2 acting on a (p-1)-st root of unity: the exponent that is 1 on the
  // 2-part of p-1 and 0 on its odd part.
  std::int64_t odd = p - 1, two_p = 1;
  while (odd % 2 == 0) {
    odd /= 2;
    two_p *= 2;
  }
  for (std::int64_t x = 0; x < p - 1; ++x)
    if (x % odd == 0 && (x - 1) % two_p == 0)
      r.b_mod = x;
  return r;
}

inline std::int64_t hpow(const Arith &c, std::int64_t e) {
  std::int64_t y = 1;
  e %= (c.p - 1);
  if (e < 0)
    e += c.p - 1;
  for (std::int64_t i = 0; i < e; ++i)
    y = y * c.h % c.pr;
  return y;
}

inline Index angle(const Group &g, Index x, Index y, const Arith &c) {
  Index w = 0;
  for (std::int64_t k = c.p - 1; k >= 1; --k)
    w = g.mul(g.mul(w, power(g, x, hpow(c, k))), y);
  return power(g, w, c.a);
}

inline Index curly(const Group &g, Index x, Index rho, std::int64_t beta_exp, const Arith &c) {
  const Index rho2 = g.mul(rho, rho);
  Index w = 0;
  for (std::int64_t k = 0; k <= c.p - 2; ++k)
    w = g.mul(g.mul(w, power(g, x, hpow(c, k * beta_exp))), rho2);
  return power(g, w, c.a);
}

inline Index y1(const Group &g, Index x1, Index sigma, Index tau, const Arith &c) {
  const auto p = c.p;
  const Index s2 = power(g, sigma, c.b), t2 = power(g, tau, c.b);
  const Index r1 = power(g, t2, p + 1);
  const Index r2 = g.mul(s2, power(g, t2, (p - 1) / 2));
  const Index c1 = curly(g, x1, r1, (p + 1) * c.b_mod, c);
  const Index c2 = curly(g, c1, r2, (p - 1) / 2 * c.b_mod, c);
  const Index e1 = g.mul(s2, power(g, t2, (p + 1) / 2));
  const Index e2 = power(g, t2, (p + 1) / 2);
  Index out = conj(g, x1, r1);
  out = g.mul(out, conj(g, c1, r2));
  out = g.mul(out, conj(g, c2, e1));
  return g.mul(out, conj(g, c2, e2));
}

inline bool wild(const Group &g, Index s, Index t, Index x0, Index x1, const Arith &c) {
  const Index y = y1(g, x1, s, t, c);
  const Index com = g.mul(g.mul(inverse(g, x1), inverse(g, y)), g.mul(x1, y));
  const Index rhs = g.mul(g.mul(angle(g, x0, t, c), power(g, x1, c.p)), com);
  return conj(g, x0, s) == rhs;
}

/// Closure of a set of elements by right multiplication with the set.
inline std::vector<char> closure(const Group &g, const std::vector<Index> &gens) {
  std::vector<char> in(g.order(), 0);
  std::vector<Index> q{0};
  in[0] = 1;
  for (std::size_t i = 0; i < q.size(); ++i)
    for (auto s : gens) {
      const Index y = g.mul(q[i], s);
      if (!in[y]) {
        in[y] = 1;
        q.push_back(y);
      }
    }
  return in;
}

inline std::size_t closure_size(const Group &g, const std::vector<Index> &gens) {
  const auto in = closure(g, gens);
  return static_cast<std::size_t>(std::count(in.begin(), in.end(), 1));
}

/// Largest normal p-subgroup: keep adjoining the normal closure of an element
/// while the result is still a p-group.
inline std::vector<char> naive_p_core(const Group &g, std::int64_t p) {
  const std::size_t n = g.order();
  std::vector<char> core(n, 0);
  core[0] = 1;
  bool grew = true;
  while (grew) {
    grew = false;
    for (Index x = 0; x < n; ++x) {
      if (core[x])
        continue;
      std::vector<Index> gens;
      for (Index y = 0; y < n; ++y)
        if (core[y])
          gens.push_back(y);
      for (Index y = 0; y < n; ++y)
        gens.push_back(conj(g, x, y));
      auto size = closure_size(g, gens);
      while (size % p == 0)
        size /= p;
      if (size == 1) {
        const auto in = closure(g, gens);
        for (Index y = 0; y < n; ++y)
          core[y] = core[y] || in[y];
        grew = true;
      }
    }
  }
  return core;
}

/// Number of automorphisms: every assignment of images to the stored
/// generators that extends to a bijective homomorphism.
inline std::uint64_t aut_order(const Group &g) {
  const std::vector<Index> gens(g.generators().begin(), g.generators().end());
  const std::size_t n = g.order();
  // Words: each element reached from the identity by one generator step.
  std::vector<std::pair<Index, std::size_t>> parent(n, {0, 0});
  std::vector<char> seen(n, 0);
  std::vector<Index> order{0};
  seen[0] = 1;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = 0; j < gens.size(); ++j) {
      const Index y = g.mul(order[i], gens[j]);
      if (!seen[y]) {
        seen[y] = 1;
        parent[y] = {order[i], j};
        order.push_back(y);
      }
    }
  std::vector<std::uint32_t> ords(n);
  for (Index x = 0; x < n; ++x) {
    std::uint32_t o = 1;
    for (Index y = x; y != 0; y = g.mul(y, x))
      ++o;
    ords[x] = o;
  }
  std::uint64_t count = 0;
  std::vector<Index> img(gens.size());
  std::vector<Index> map(n);
  auto check = [&] {
    map[0] = 0;
    for (std::size_t i = 1; i < order.size(); ++i) {
      const auto [par, j] = parent[order[i]];
      map[order[i]] = g.mul(map[par], img[j]);
    }
    std::vector<char> hit(n, 0);
    for (Index x = 0; x < n; ++x) {
      if (hit[map[x]])
        return false;
      hit[map[x]] = 1;
    }
    for (Index x = 0; x < n; ++x)
      for (Index y = 0; y < n; ++y)
        if (map[g.mul(x, y)] != g.mul(map[x], map[y]))
          return false;
    return true;
  };
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == gens.size()) {
      count += check() ? 1 : 0;
      return;
    }
    for (Index c = 0; c < n; ++c)
      if (ords[c] == ords[gens[k]]) {
        img[k] = c;
        rec(k + 1);
      }
  };
  rec(0);
  return count;
}

/// |X_G| / |Aut G|; Aut G acts freely on generating quadruples.
inline std::uint64_t brute_count(const Group &g, std::int64_t p, std::int64_t seed = 0) {
  if (seed == 0) {
    seed = 2;
    while (true) {
      bool prim = true;
      std::int64_t y = 1;
      for (int k = 1; k < p - 1; ++k) {
        y = y * seed % p;
        if (y == 1)
          prim = false;
      }
      if (prim)
        break;
      ++seed;
    }
  }
  const auto c = arith(static_cast<std::int64_t>(g.order()), p, seed);
  const auto core = naive_p_core(g, p);
  std::vector<Index> v;
  for (Index x = 0; x < g.order(); ++x)
    if (core[x])
      v.push_back(x);
  std::uint64_t xg = 0;
  for (Index s = 0; s < g.order(); ++s)
    for (Index t = 0; t < g.order(); ++t) {
      if (conj(g, t, s) != power(g, t, p))
        continue;
      for (auto x1 : v)
        for (auto x0 : v)
          if (wild(g, s, t, x0, x1, c) && closure_size(g, {s, t, x0, x1}) == g.order())
            ++xg;
    }
  const auto aut = aut_order(g);
  if (xg % aut != 0)
    throw std::logic_error("orbit count is not an integer");
  return xg / aut;
}

} // namespace oracle
