#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pigp/automorphisms.hpp"
#include "pigp/construct.hpp"
#include "pigp/group.hpp"
#include "pigp/relations.hpp"

namespace pigp {

/// (sigma, tau, x0, x1) as element indices.
struct Quadruple {
  Index sigma = 0, tau = 0, x0 = 0, x1 = 0;
  auto operator<=>(const Quadruple &) const = default;
};

/// Every pair (sigma, tau) with tau^sigma = tau^p whose images generate G/V.
std::vector<std::pair<Index, Index>> enumerate_TG(const Group &g, std::int64_t p,
                                                  std::size_t max_order = kMaxOrder);

/// Empty when q lies in X_G; otherwise the first failing clause.
std::optional<std::string> quadruple_defect(const Group &g, const Quadruple &q,
                                            const Subgroup &v, const RelationContext &ctx);

enum class Method { Auto, Abelian, Tame, Lifting };
Method parse_method(const std::string &s);
std::string method_name(Method m);

struct CountOptions {
  Method method = Method::Auto;
  std::uint64_t aut_budget = kDefaultAutBudget;
  std::optional<std::int64_t> h_seed;
  /// Also run the lifting pass with x0 and x1 lifted from each other's images.
  bool dual_lift = false;
  /// Position in minimal_normal_subgroups(G) of the N used by the top-level lift.
  std::optional<std::size_t> forced_n;
  int max_depth = 64;
};

struct CountResult {
  std::string group;
  GroupFingerprint fingerprint;
  std::int64_t p = 3;
  std::size_t order = 1;
  std::string method;
  bool potentially_realizable = true;
  std::uint64_t count = 0;
  /// Sorted; orbit-minimal for the tame and lifting engines, the closed-form sums for abelian.
  std::vector<Quadruple> representatives;
  std::int64_t seed_h = 2;
  std::int64_t millis = 0;
  /// Lifting only: |N|, automorphism index, and the swapped-label count when requested.
  std::size_t n_order = 0;
  std::size_t automorphism_index = 0;
  std::optional<std::uint64_t> dual_count;
};

nlohmann::json to_json(const CountResult &r);

/// Counting engines sharing a cache of quotient representatives. Not thread-safe.
class Counter {
public:
  explicit Counter(CountOptions opts = {});

  /// Dispatches on the configured method (Auto: screen, abelian, tame, lifting).
  CountResult count(const Group &g, std::int64_t p);

  CountResult count_abelian(const Group &g, std::int64_t p);
  CountResult count_tame(const Group &g, std::int64_t p);
  /// Lifting through the minimal normal subgroup at position n_choice (default: first).
  CountResult count_lifting(const Group &g, std::int64_t p,
                            std::optional<std::size_t> n_choice = std::nullopt);

  const CountOptions &options() const { return opts_; }

private:
  struct CachedReps {
    Group group;
    std::vector<Quadruple> reps;
  };

  CountResult dispatch(const Group &g, std::int64_t p, Method m, int depth);
  CountResult lifting_impl(const Group &g, std::int64_t p, std::optional<std::size_t> n_choice,
                           int depth);
  std::vector<Quadruple> quotient_reps(const Group &q, std::int64_t p, int depth);
  RelationContext context(const Group &g, std::int64_t p) const;

  CountOptions opts_;
  std::map<std::pair<std::int64_t, GroupFingerprint>, std::vector<CachedReps>> cache_;
  std::vector<std::string> chain_;
};

/// Representatives of the abelian closed form for each prime, before combination.
struct AbelianPrimeData {
  std::int64_t ell;
  std::vector<int> exponents;
  int case_number;
  std::uint64_t c;
  std::vector<Quadruple> reps;
};
std::vector<AbelianPrimeData> abelian_prime_data(const Group &g, std::int64_t p);

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  bool is_integer() const { return den == 1; }
  friend bool operator==(const Rational &, const Rational &) = default;
};

/// (1/|Aut G|) (|G|/p^d)^2 prod_{i<d} (p^2 - p^i) for a p-group G with d generators.
Rational shafarevich_count(const Group &g, std::int64_t p,
                           std::uint64_t aut_budget = kDefaultAutBudget);

} // namespace pigp
