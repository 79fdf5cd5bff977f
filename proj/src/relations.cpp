#include "pigp/relations.hpp"

#include <stdexcept>
#include <string>

#include "pigp/errors.hpp"
#include "pigp/numtheory.hpp"

namespace pigp {

std::int64_t RelationContext::h_power(std::int64_t e) const {
  if (p_r == 1)
    return 1;
  return nt::powmod(h, nt::mod(e, p - 1), p_r);
}

void RelationContext::verify() const {
  auto fail = [](const char *what) { throw std::logic_error(std::string("relation context: ") + what); };
  if (u_p * p_r != n || u_2 * two_s != n || u_p % p == 0 || u_2 % 2 == 0)
    fail("bad factorization");
  if (nt::mod(a, u_p) != 0 || nt::mod((p - 1) * a, p_r) != nt::mod(1, p_r))
    fail("a");
  if (nt::mod(b, u_2) != 0 || nt::mod(b, two_s) != nt::mod(1, two_s))
    fail("b");
  const auto [e2, two_part] = nt::p_part(p - 1, 2);
  (void)e2;
  if (nt::mod(b_unit, two_part) != nt::mod(1, two_part) || nt::mod(b_unit, (p - 1) / two_part) != 0)
    fail("b_unit");
  if (r > 0) {
    if (nt::powmod(h, p - 1, p_r) != nt::mod(1, p_r) || !nt::is_primitive_root(h % p, p))
      fail("h");
  } else if (h != 1) {
    fail("h must be 1 when p does not divide n");
  }
}

RelationContext make_context(std::int64_t n, std::int64_t p, std::optional<std::int64_t> h_seed) {
  if (n < 1)
    throw UsageError("group order must be positive");
  if (p < 3 || !nt::is_prime(p))
    throw UsageError("p must be an odd prime, got " + std::to_string(p));
  RelationContext c;
  c.p = p;
  c.n = n;
  std::tie(c.r, c.p_r) = nt::p_part(n, p);
  c.u_p = n / c.p_r;
  std::tie(c.s, c.two_s) = nt::p_part(n, 2);
  c.u_2 = n / c.two_s;
  c.a = nt::crt(0, c.u_p, nt::inverse_mod(nt::mod(p - 1, c.p_r), c.p_r) , c.p_r);
  if (c.p_r == 1)
    c.a = 0;
  c.b = nt::crt(0, c.u_2, 1 % c.two_s, c.two_s);
  const auto two_part = nt::p_part(p - 1, 2).second;
  c.b_unit = nt::crt(1 % two_part, two_part, 0, (p - 1) / two_part);
  const auto seed = h_seed.value_or(nt::least_primitive_root(p));
  if (!nt::is_primitive_root(nt::mod(seed, p), p))
    throw UsageError("h seed " + std::to_string(seed) + " is not a primitive root mod " +
                     std::to_string(p));
  c.h_seed = nt::mod(seed, p);
  if (c.r == 0) {
    c.h = 1;
  } else {
    std::int64_t x = nt::mod(seed, c.p_r);
    for (;;) {
      const auto next = nt::powmod(x, p, c.p_r);
      if (next == x)
        break;
      x = next;
    }
    c.h = x;
  }
  c.verify();
  return c;
}

RhoWord rho_word(const Group &g, Index sigma, Index tau, std::int64_t i, std::int64_t j) {
  return {g.mul(g.pow(sigma, i), g.pow(tau, j)), j};
}

RhoWord rho_word_2(const Group &g, const RelationContext &ctx, Index sigma, Index tau,
                   std::int64_t i, std::int64_t j) {
  const Index s2 = g.pow(sigma, ctx.b), t2 = g.pow(tau, ctx.b);
  return {g.mul(g.pow(s2, i), g.pow(t2, j)), nt::mod(j * ctx.b_unit, ctx.p - 1)};
}

namespace {

void check_order(const Group &g, const RelationContext &ctx) {
  if (static_cast<std::int64_t>(g.order()) != ctx.n)
    throw PreconditionError("relation context built for order " + std::to_string(ctx.n) +
                            " used with a group of order " + std::to_string(g.order()));
}

} // namespace

Index angle_bracket(const Group &g, Index x, Index y, const RelationContext &ctx) {
  check_order(g, ctx);
  Index w = 0;
  for (std::int64_t k = ctx.p - 1; k >= 1; --k)
    w = g.mul(g.mul(w, g.pow(x, ctx.h_power(k))), y);
  return g.pow(w, ctx.a);
}

Index curly_bracket(const Group &g, Index x, const RhoWord &rho, const RelationContext &ctx) {
  check_order(g, ctx);
  const Index rho2 = g.mul(rho.element, rho.element);
  Index w = 0;
  for (std::int64_t k = 0; k <= ctx.p - 2; ++k)
    w = g.mul(g.mul(w, g.pow(x, ctx.h_power(k * rho.beta_exponent))), rho2);
  return g.pow(w, ctx.a);
}

Index y1(const Group &g, Index x1, Index sigma, Index tau, const RelationContext &ctx) {
  const auto p = ctx.p;
  const auto rho1 = rho_word_2(g, ctx, sigma, tau, 0, p + 1);
  const auto rho2 = rho_word_2(g, ctx, sigma, tau, 1, (p - 1) / 2);
  const Index s2 = g.pow(sigma, ctx.b), t2 = g.pow(tau, ctx.b);
  const Index t2_half = g.pow(t2, (p + 1) / 2);
  const Index c1 = curly_bracket(g, x1, rho1, ctx);
  const Index c2 = curly_bracket(g, c1, rho2, ctx);
  // A sum in the exponent is the product of the two conjugates, left to right.
  const Index last = g.mul(g.conj(c2, g.mul(s2, t2_half)), g.conj(c2, t2_half));
  return g.mul(g.mul(g.conj(x1, rho1.element), g.conj(c1, rho2.element)), last);
}

bool tame_relation_holds(const Group &g, Index sigma, Index tau, std::int64_t p) {
  return g.conj(tau, sigma) == g.pow(tau, p);
}

bool wild_relation_holds(const Group &g, Index sigma, Index tau, Index x0, Index x1,
                         const RelationContext &ctx) {
  const Index lhs = g.conj(x0, sigma);
  const Index rhs = g.mul(g.mul(angle_bracket(g, x0, tau, ctx), g.pow(x1, ctx.p)),
                          g.comm(x1, y1(g, x1, sigma, tau, ctx)));
  return lhs == rhs;
}

namespace {

const Group &shared(std::initializer_list<const Elem *> elems) {
  const Group &g = (*elems.begin())->group();
  for (auto *e : elems)
    if (!e->group().same(g))
      throw UsageError("elements belong to different groups");
  return g;
}

} // namespace

Elem angle_bracket(const Elem &x, const Elem &y, const RelationContext &ctx) {
  const auto &g = shared({&x, &y});
  return Elem(g, angle_bracket(g, x.index(), y.index(), ctx));
}

Elem curly_bracket(const Elem &x, const RhoWord &rho, const RelationContext &ctx) {
  return Elem(x.group(), curly_bracket(x.group(), x.index(), rho, ctx));
}

Elem y1(const Elem &x1, const Elem &sigma, const Elem &tau, const RelationContext &ctx) {
  const auto &g = shared({&x1, &sigma, &tau});
  return Elem(g, y1(g, x1.index(), sigma.index(), tau.index(), ctx));
}

bool tame_relation_holds(const Elem &sigma, const Elem &tau, std::int64_t p) {
  const auto &g = shared({&sigma, &tau});
  return tame_relation_holds(g, sigma.index(), tau.index(), p);
}

bool wild_relation_holds(const Elem &sigma, const Elem &tau, const Elem &x0, const Elem &x1,
                         const RelationContext &ctx) {
  const auto &g = shared({&sigma, &tau, &x0, &x1});
  return wild_relation_holds(g, sigma.index(), tau.index(), x0.index(), x1.index(), ctx);
}

} // namespace pigp
