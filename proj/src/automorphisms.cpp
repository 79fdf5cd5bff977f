#include "pigp/automorphisms.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>

#include "hom_search.hpp"
#include "pigp/construct.hpp"
#include "pigp/errors.hpp"

namespace pigp {

namespace {

std::uint64_t hash_table(std::span<const std::uint16_t> t) {
  std::uint64_t h = 1469598103934665603ull;
  for (auto v : t) {
    h ^= v;
    h *= 1099511628211ull;
  }
  return h;
}

} // namespace

AutGroup::AutGroup(Group g, std::vector<std::uint16_t> flat_tables)
    : group_(std::move(g)), n_(group_.order()), count_(flat_tables.size() / n_),
      flat_(std::move(flat_tables)) {
  for (std::size_t i = 0; i < count_; ++i)
    by_hash_[hash_table(table(i))].push_back(static_cast<std::uint32_t>(i));
}

Homomorphism AutGroup::automorphism(std::size_t i) const {
  auto t = table(i);
  return Homomorphism(group_, group_, std::vector<Index>(t.begin(), t.end()));
}

std::ptrdiff_t AutGroup::find(std::span<const std::uint16_t> t) const {
  auto it = by_hash_.find(hash_table(t));
  if (it == by_hash_.end())
    return -1;
  for (auto i : it->second)
    if (std::equal(t.begin(), t.end(), table(i).begin()))
      return i;
  return -1;
}

bool AutGroup::verify_closed(std::size_t exhaustive_limit, std::size_t samples) const {
  std::vector<std::uint16_t> comp(n_);
  auto check = [&](std::size_t i, std::size_t j) {
    for (std::size_t x = 0; x < n_; ++x)
      comp[x] = flat_[i * n_ + flat_[j * n_ + x]];
    return find(comp) >= 0;
  };
  if (count_ <= exhaustive_limit) {
    for (std::size_t i = 0; i < count_; ++i)
      for (std::size_t j = 0; j < count_; ++j)
        if (!check(i, j))
          return false;
    return true;
  }
  std::mt19937_64 rng(count_);
  std::uniform_int_distribution<std::size_t> pick(0, count_ - 1);
  for (std::size_t s = 0; s < samples; ++s)
    if (!check(pick(rng), pick(rng)))
      return false;
  return true;
}

AutGroup automorphism_group(const Group &g, std::uint64_t node_budget, std::size_t max_order) {
  if (g.order() > max_order)
    throw CapacityError("group '" + g.name() + "' of order " + std::to_string(g.order()) +
                        " exceeds the automorphism bound " + std::to_string(max_order));
  const auto n = g.order();
  std::vector<std::uint16_t> flat;
  if (n == 1) {
    flat.push_back(0);
    return AutGroup(g, std::move(flat));
  }
  const auto gens = small_generating_set(g);
  auto cands = detail::signature_candidates(g, gens, g);
  detail::InjectiveHomSearch search(g, g, gens, std::move(cands), node_budget);
  search.run([&](const std::vector<Index> &img) {
    for (auto v : img)
      flat.push_back(static_cast<std::uint16_t>(v));
    return true;
  });
  // The identity is always tried first, but keep the guarantee explicit.
  for (std::size_t x = 0; x < n; ++x)
    if (flat[x] != x)
      throw std::logic_error("automorphism search did not start with the identity");
  return AutGroup(g, std::move(flat));
}

AutGroup stabilizer_of_subgroup(const AutGroup &a, const Subgroup &n) {
  const auto &g = a.group();
  std::vector<std::uint16_t> flat;
  for (std::size_t i = 0; i < a.size(); ++i) {
    bool ok = true;
    for (auto s : n.generators())
      if (!n.contains(a.apply(i, s))) {
        ok = false;
        break;
      }
    if (ok) {
      auto t = a.table(i);
      flat.insert(flat.end(), t.begin(), t.end());
    }
  }
  return AutGroup(g, std::move(flat));
}

InducedReps induced_coset_reps(const AutGroup &aut_g, const Subgroup &n, const Quotient &q,
                               const AutGroup &aut_q) {
  const auto &g = aut_g.group();
  if (!n.is_normal())
    throw PreconditionError("induced automorphisms need a normal subgroup");
  const auto qn = q.group.order();
  InducedReps out;
  std::vector<std::uint8_t> in_image(aut_q.size(), 0);
  std::vector<std::uint16_t> induced(qn);
  for (std::size_t i = 0; i < aut_g.size(); ++i) {
    bool stabilizes = true;
    for (auto s : n.generators())
      if (!n.contains(aut_g.apply(i, s))) {
        stabilizes = false;
        break;
      }
    if (!stabilizes)
      continue;
    for (Index x = 0; x < qn; ++x)
      induced[x] = static_cast<std::uint16_t>(q.projection(aut_g.apply(i, q.section[x])));
    const auto pos = aut_q.find(induced);
    if (pos < 0)
      throw std::logic_error("induced map on '" + g.name() + "' quotient is not an automorphism");
    if (!in_image[pos]) {
      in_image[pos] = 1;
      out.image.push_back(static_cast<std::uint32_t>(pos));
    }
  }
  std::sort(out.image.begin(), out.image.end());
  std::vector<std::uint8_t> covered(aut_q.size(), 0);
  std::vector<std::uint16_t> comp(qn);
  for (std::size_t c = 0; c < aut_q.size(); ++c) {
    if (covered[c])
      continue;
    out.coset_reps.push_back(static_cast<std::uint32_t>(c));
    for (auto i : out.image) {
      for (Index x = 0; x < qn; ++x)
        comp[x] = aut_q.apply(i, aut_q.apply(c, x));
      const auto pos = aut_q.find(comp);
      if (pos < 0)
        throw std::logic_error("Aut(Q) is not closed under composition");
      covered[pos] = 1;
    }
  }
  if (out.coset_reps.size() * out.image.size() != aut_q.size())
    throw std::logic_error("coset decomposition of Aut(Q) is inconsistent");
  return out;
}

std::vector<std::vector<Index>> tuple_orbit(std::span<const Index> t, const AutGroup &a) {
  std::set<std::vector<Index>> orbit;
  std::vector<Index> img(t.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < t.size(); ++k)
      img[k] = a.apply(i, t[k]);
    orbit.insert(img);
  }
  return {orbit.begin(), orbit.end()};
}

} // namespace pigp
