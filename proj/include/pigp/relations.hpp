#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pigp/group.hpp"

namespace pigp {

/// Arithmetic attached to a group order n and an odd prime p.
struct RelationContext {
  std::int64_t p = 3;
  std::int64_t n = 1;
  std::int64_t u_p = 1, r = 0, p_r = 1; // n = u_p p^r
  std::int64_t u_2 = 1, s = 0, two_s = 1; // n = u_2 2^s
  /// a = 0 mod u_p, (p-1) a = 1 mod p^r; raising to a projects onto the pi/(p-1) part.
  std::int64_t a = 0;
  /// b = 0 mod u_2, b = 1 mod 2^s; raising to b projects onto the 2-part.
  std::int64_t b = 0;
  /// The 2-projection as an exponent of h, i.e. modulo p-1.
  std::int64_t b_unit = 0;
  /// Primitive (p-1)-st root of unity mod p^r; 1 when r = 0.
  std::int64_t h = 1;
  /// Residue mod p that h lifts.
  std::int64_t h_seed = 2;

  /// h^e reduced mod p^r as a non-negative exponent; e is taken mod p-1.
  std::int64_t h_power(std::int64_t e) const;
  /// Re-checks the defining congruences; throws on failure.
  void verify() const;
};

/// Throws UsageError for even or non-prime p, n < 1, or a seed that is not a
/// primitive root mod p.
RelationContext make_context(std::int64_t n, std::int64_t p,
                             std::optional<std::int64_t> h_seed = std::nullopt);

/// rho = sigma^i tau^j inside <sigma, tau>, with beta(rho) = h^beta_exponent.
struct RhoWord {
  Index element;
  std::int64_t beta_exponent;
};

/// sigma^i tau^j with beta exponent j.
RhoWord rho_word(const Group &g, Index sigma, Index tau, std::int64_t i, std::int64_t j);
/// sigma_2^i tau_2^j where sigma_2 = sigma^b, tau_2 = tau^b; beta exponent j * b_unit.
RhoWord rho_word_2(const Group &g, const RelationContext &ctx, Index sigma, Index tau,
                   std::int64_t i, std::int64_t j);

/// <x, y> = (x^{h^{p-1}} y x^{h^{p-2}} y ... x^h y)^a.
Index angle_bracket(const Group &g, Index x, Index y, const RelationContext &ctx);
/// {x, rho} = (x rho^2 x^{beta(rho)} rho^2 ... x^{beta(rho^{p-2})} rho^2)^a.
Index curly_bracket(const Group &g, Index x, const RhoWord &rho, const RelationContext &ctx);
Index y1(const Group &g, Index x1, Index sigma, Index tau, const RelationContext &ctx);

bool tame_relation_holds(const Group &g, Index sigma, Index tau, std::int64_t p);
/// x0^sigma = <x0, tau> x1^p [x1, y1]
bool wild_relation_holds(const Group &g, Index sigma, Index tau, Index x0, Index x1,
                         const RelationContext &ctx);

// Element-level forms; all arguments must share one group.
Elem angle_bracket(const Elem &x, const Elem &y, const RelationContext &ctx);
Elem curly_bracket(const Elem &x, const RhoWord &rho, const RelationContext &ctx);
Elem y1(const Elem &x1, const Elem &sigma, const Elem &tau, const RelationContext &ctx);
bool tame_relation_holds(const Elem &sigma, const Elem &tau, std::int64_t p);
bool wild_relation_holds(const Elem &sigma, const Elem &tau, const Elem &x0, const Elem &x1,
                         const RelationContext &ctx);

} // namespace pigp
