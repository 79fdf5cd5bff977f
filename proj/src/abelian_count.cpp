#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>

#include "pigp/analysis.hpp"
#include "pigp/counting.hpp"
#include "pigp/errors.hpp"
#include "pigp/numtheory.hpp"

namespace pigp {

namespace {

bool divides_pm1(std::int64_t ell, int e, std::int64_t p) { return (p - 1) % nt::ipow(ell, e) == 0; }

} // namespace

std::vector<AbelianPrimeData> abelian_prime_data(const Group &g, std::int64_t p) {
  if (!g.is_abelian())
    throw PreconditionError("closed-form count needs an abelian group, got '" + g.name() + "'");
  // Canonical model: factors grouped by prime, exponents ascending; transport its
  // unit vectors into g to get the basis elements.
  const auto inv = abelian_invariants(g);
  std::map<std::int64_t, std::vector<int>> primary;
  for (auto q : inv) {
    const auto f = nt::factorize(q);
    primary[f.begin()->first].push_back(f.begin()->second);
  }
  std::vector<std::int64_t> factors;
  std::vector<std::size_t> first_slot;
  for (auto &[ell, exps] : primary) {
    std::sort(exps.begin(), exps.end());
    first_slot.push_back(factors.size());
    for (auto e : exps)
      factors.push_back(nt::ipow(ell, e));
  }
  const auto model = abelian_group(factors);
  const auto iso = find_isomorphism(model, g);
  if (!iso)
    throw std::logic_error("abelian model of '" + g.name() + "' is not isomorphic to it");
  auto basis = [&](std::size_t slot) {
    std::vector<std::int64_t> coords(factors.size(), 0);
    coords[slot] = 1;
    return (*iso)(abelian_index(factors, coords));
  };

  std::vector<AbelianPrimeData> out;
  std::size_t idx = 0;
  for (const auto &[ell, exps] : primary) {
    AbelianPrimeData d{ell, exps, 0, 0, {}};
    const auto slot = first_slot[idx++];
    const auto m = exps.size();
    const Index alpha = basis(slot);
    const Index beta = m >= 2 ? basis(slot + 1) : 0;
    auto mul = [&](std::int64_t k, Index x) { return g.pow(x, k); };
    if (m >= 3) {
      d.case_number = 1;
      d.c = 0;
    } else if (m == 2) {
      const int a = exps[0], b = exps[1];
      // For a < b the generating pairs of Z/l^a x Z/l^b fall into more than two
      // Aut-orbits: (alpha + k beta, beta) for k < l^(b-a) and (beta, alpha + l j beta)
      // for j < l^(b-a-1). Only the second family keeps its second entry of order
      // at most l^a, so a bound on the order of tau selects part of it.
      auto add = [&](Index x, std::int64_t k, Index y) { return g.mul(x, g.pow(y, k)); };
      const auto c_free = nt::ipow(ell, b - a);
      const auto c_tied = c_free / ell;
      if (ell == p && a != b) {
        d.case_number = 2;
        for (std::int64_t k = 0; k < c_free; ++k) {
          const Index s = add(alpha, k, beta);
          d.reps.push_back({s, 0, mul(p, beta), beta});
        }
        for (std::int64_t j = 0; j < c_tied; ++j) {
          const Index x1 = add(alpha, ell * j, beta);
          d.reps.push_back({beta, 0, mul(p, x1), x1});
        }
        d.c = d.reps.size();
      } else if (ell == p) {
        d.case_number = 4;
        d.c = 1;
        d.reps = {{alpha, 0, mul(p, beta), beta}};
      } else if (a != b && divides_pm1(ell, b, p)) {
        d.case_number = 3;
        for (std::int64_t k = 0; k < c_free; ++k)
          d.reps.push_back({add(alpha, k, beta), beta, 0, 0});
        for (std::int64_t j = 0; j < c_tied; ++j)
          d.reps.push_back({beta, add(alpha, ell * j, beta), 0, 0});
        d.c = d.reps.size();
      } else if (divides_pm1(ell, a, p)) {
        d.case_number = 5;
        if (a == b) {
          d.reps = {{beta, alpha, 0, 0}};
        } else {
          // tau must have order dividing l^e, where l^e exactly divides p - 1.
          const int e = nt::p_part(p - 1, ell).first;
          const auto step = nt::ipow(ell, b - e);
          for (std::int64_t i = 0; i < nt::ipow(ell, e - a); ++i)
            d.reps.push_back({beta, add(alpha, step * i, beta), 0, 0});
        }
        d.c = d.reps.size();
      } else {
        d.case_number = 6;
        d.c = 0;
      }
    } else {
      const int a = exps[0];
      const auto la = nt::ipow(ell, a);
      if (ell == p) {
        d.case_number = 7;
        d.c = static_cast<std::uint64_t>(nt::ipow(p, a - 1) * (p + 1));
        for (std::int64_t k = 0; k < la; ++k)
          d.reps.push_back({alpha, 0, mul(p * k, alpha), mul(k, alpha)});
        for (std::int64_t k = 0; k < la / p; ++k)
          d.reps.push_back({mul(p * k, alpha), 0, mul(p, alpha), alpha});
      } else if (divides_pm1(ell, a, p)) {
        // The second family scales sigma by ell (not p): those are the non-unit sigmas.
        d.case_number = 8;
        d.c = static_cast<std::uint64_t>(nt::ipow(ell, a - 1) * (ell + 1));
        for (std::int64_t k = 0; k < la; ++k)
          d.reps.push_back({alpha, mul(k, alpha), 0, 0});
        for (std::int64_t k = 0; k < la / ell; ++k)
          d.reps.push_back({mul(ell * k, alpha), alpha, 0, 0});
      } else {
        d.case_number = 9;
        const auto c = std::gcd(la, p - 1);
        d.c = static_cast<std::uint64_t>(c);
        for (std::int64_t k = 0; k < c; ++k)
          d.reps.push_back({alpha, mul(la / c * k, alpha), 0, 0});
      }
    }
    if (d.reps.size() != d.c)
      throw std::logic_error("representative set size differs from its count");
    out.push_back(std::move(d));
  }
  return out;
}

CountResult Counter::count_abelian(const Group &g, std::int64_t p) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto ctx = context(g, p);
  const auto data = abelian_prime_data(g, p);
  std::vector<Quadruple> reps{{0, 0, 0, 0}};
  for (const auto &d : data) {
    std::vector<Quadruple> next;
    next.reserve(reps.size() * d.reps.size());
    for (const auto &r : reps)
      for (const auto &e : d.reps)
        next.push_back({g.mul(r.sigma, e.sigma), g.mul(r.tau, e.tau), g.mul(r.x0, e.x0),
                        g.mul(r.x1, e.x1)});
    reps = std::move(next);
  }
  const auto v = p_core(g, p);
  for (const auto &q : reps)
    if (auto bad = quadruple_defect(g, q, v, ctx))
      throw std::logic_error("closed-form representative rejected: " + *bad);
  std::sort(reps.begin(), reps.end());
  CountResult r;
  r.group = g.name();
  r.fingerprint = fingerprint(g);
  r.p = p;
  r.order = g.order();
  r.method = "abelian";
  r.count = reps.size();
  r.representatives = std::move(reps);
  r.seed_h = ctx.h_seed;
  r.millis = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
                 .count();
  return r;
}

} // namespace pigp
