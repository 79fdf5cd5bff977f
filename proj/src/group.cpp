#include "pigp/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <unordered_set>

#include "pigp/errors.hpp"

namespace pigp {

struct GroupData {
  std::size_t n = 1;
  std::vector<std::uint16_t> table{0};
  std::vector<std::uint16_t> inverse{0};
  std::vector<std::uint32_t> order{1};
  std::vector<Index> gens;
  std::string name = "trivial";
  bool abelian = true;
  std::vector<std::vector<std::uint32_t>> perm_gens;
};

namespace {

std::shared_ptr<const GroupData> trivial_data() {
  static const auto data = std::make_shared<const GroupData>();
  return data;
}

} // namespace

Group::Group() : Group(trivial_data()) {}

Group::Group(std::shared_ptr<const GroupData> data)
    : data_(std::move(data)), table_(data_->table.data()), n_(data_->n) {}

Group Group::from_table(std::size_t n, std::vector<std::uint16_t> table, std::vector<Index> gens,
                        std::string name) {
  if (n == 0)
    throw UsageError("group order must be positive");
  if (n > kMaxOrder)
    throw CapacityError("group order " + std::to_string(n) + " exceeds supported bound " +
                        std::to_string(kMaxOrder));
  if (table.size() != n * n)
    throw UsageError("multiplication table has wrong size");
  auto d = std::make_shared<GroupData>();
  d->n = n;
  d->name = std::move(name);
  // Latin square and identity at 0.
  std::vector<std::uint8_t> seen(n);
  for (std::size_t a = 0; a < n; ++a) {
    if (table[a] != a || table[a * n] != a)
      throw PreconditionError("index 0 is not a two-sided identity");
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t b = 0; b < n; ++b) {
      auto v = table[a * n + b];
      if (v >= n || seen[v])
        throw PreconditionError("multiplication table row is not a permutation");
      seen[v] = 1;
    }
  }
  d->inverse.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b)
      if (table[a * n + b] == 0) {
        d->inverse[a] = static_cast<std::uint16_t>(b);
        break;
      }
    if (table[d->inverse[a] * n + a] != 0)
      throw PreconditionError("element has no two-sided inverse");
  }
  d->order.assign(n, 1);
  for (std::size_t a = 1; a < n; ++a) {
    std::uint32_t k = 1;
    std::size_t x = a;
    while (x != 0) {
      x = table[x * n + a];
      ++k;
      if (k > n)
        throw PreconditionError("element of infinite order in table");
    }
    d->order[a] = k;
  }
  d->abelian = true;
  for (std::size_t a = 0; a < n && d->abelian; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (table[a * n + b] != table[b * n + a]) {
        d->abelian = false;
        break;
      }
  gens.erase(std::remove(gens.begin(), gens.end(), Index{0}), gens.end());
  for (auto g : gens)
    if (g >= n)
      throw UsageError("generator index out of range");
  d->table = std::move(table);
  d->gens = std::move(gens);
  Group result(std::move(d));
  if (generated_size(result, result.generators()) != n)
    throw PreconditionError("generator list does not generate the group '" + result.name() + "'");
  return result;
}

std::size_t Group::order() const { return n_; }
const std::string &Group::name() const { return data_->name; }

Group Group::renamed(std::string name) const {
  auto d = std::make_shared<GroupData>(*data_);
  d->name = std::move(name);
  return Group(std::move(d));
}

Index Group::inv(Index a) const { return data_->inverse[a]; }

Index Group::pow(Index a, std::int64_t k) const {
  const std::int64_t ord = data_->order[a];
  k %= ord;
  if (k < 0)
    k += ord;
  Index result = 0, base = a;
  while (k > 0) {
    if (k & 1)
      result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

std::uint32_t Group::element_order(Index a) const { return data_->order[a]; }
std::span<const Index> Group::generators() const { return data_->gens; }
std::span<const std::uint16_t> Group::table() const { return data_->table; }
bool Group::is_abelian() const { return data_->abelian; }

const std::vector<std::vector<std::uint32_t>> &Group::permutation_generators() const {
  return data_->perm_gens;
}

Group Group::with_permutation_generators(std::vector<std::vector<std::uint32_t>> perms) const {
  auto d = std::make_shared<GroupData>(*data_);
  d->perm_gens = std::move(perms);
  return Group(std::move(d));
}

// ---------------------------------------------------------------- Elem

Elem::Elem(Group g, Index i) : group_(std::move(g)), index_(i) {
  if (i >= group_.order())
    throw UsageError("element index out of range");
}

namespace {

const Group &common_group(const Elem &x, const Elem &y) {
  if (!x.group().same(y.group()))
    throw UsageError("elements belong to different groups");
  return x.group();
}

} // namespace

Elem identity(const Group &g) { return Elem(g, 0); }

Elem operator*(const Elem &x, const Elem &y) {
  const auto &g = common_group(x, y);
  return Elem(g, g.mul(x.index(), y.index()));
}

Elem inverse(const Elem &x) { return Elem(x.group(), x.group().inv(x.index())); }

Elem power(const Elem &x, std::int64_t k) { return Elem(x.group(), x.group().pow(x.index(), k)); }

Elem conjugate(const Elem &x, const Elem &y) {
  const auto &g = common_group(x, y);
  return Elem(g, g.conj(x.index(), y.index()));
}

Elem commutator(const Elem &x, const Elem &y) {
  const auto &g = common_group(x, y);
  return Elem(g, g.comm(x.index(), y.index()));
}

std::uint32_t element_order(const Elem &x) { return x.group().element_order(x.index()); }

// ---------------------------------------------------------------- Subgroup

Subgroup::Subgroup(Group parent, std::vector<Index> sorted_elements, std::vector<Index> gens)
    : parent_(std::move(parent)), elements_(std::move(sorted_elements)),
      generators_(std::move(gens)), member_(parent_.order(), 0) {
  for (auto x : elements_)
    member_[x] = 1;
}

Subgroup Subgroup::whole(const Group &g) {
  std::vector<Index> all(g.order());
  std::iota(all.begin(), all.end(), Index{0});
  return Subgroup(g, std::move(all), {g.generators().begin(), g.generators().end()});
}

Subgroup Subgroup::trivial(const Group &g) { return Subgroup(g, {0}, {}); }

bool Subgroup::is_normal() const {
  for (auto g : parent_.generators())
    for (auto x : generators_)
      if (!contains(parent_.conj(x, g)))
        return false;
  return true;
}

bool Subgroup::is_subset_of(const Subgroup &other) const {
  for (auto x : elements_)
    if (!other.contains(x))
      return false;
  return true;
}

// ---------------------------------------------------------------- Homomorphism

Homomorphism::Homomorphism(Group domain, Group codomain, std::vector<Index> images)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), images_(std::move(images)) {
  if (images_.size() != domain_.order())
    throw UsageError("image table size differs from domain order");
}

bool Homomorphism::verify() const {
  const auto n = domain_.order();
  if (images_[0] != 0)
    return false;
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y)
      if (images_[domain_.mul(x, y)] != codomain_.mul(images_[x], images_[y]))
        return false;
  return true;
}

bool Homomorphism::is_injective() const {
  std::vector<std::uint8_t> seen(codomain_.order(), 0);
  for (auto y : images_) {
    if (seen[y])
      return false;
    seen[y] = 1;
  }
  return true;
}

bool Homomorphism::is_surjective() const {
  std::vector<std::uint8_t> seen(codomain_.order(), 0);
  std::size_t count = 0;
  for (auto y : images_)
    if (!seen[y]) {
      seen[y] = 1;
      ++count;
    }
  return count == codomain_.order();
}

Subgroup Homomorphism::kernel() const {
  std::vector<Index> elems;
  for (Index x = 0; x < domain_.order(); ++x)
    if (images_[x] == 0)
      elems.push_back(x);
  std::vector<Index> gens(elems.begin() + 1, elems.end());
  auto h = subgroup_generated(domain_, gens);
  return h;
}

// ---------------------------------------------------------------- generation

namespace {

/// Closure of {gens} into `member`/`elems`; returns the generators that
/// actually enlarged the subgroup.
std::vector<Index> close(const Group &g, std::span<const Index> gens, std::vector<std::uint8_t> &member,
                         std::vector<Index> &elems) {
  member.assign(g.order(), 0);
  elems.assign(1, 0);
  member[0] = 1;
  std::vector<Index> used;
  std::vector<Index> queue;
  for (auto gen : gens) {
    if (member[gen])
      continue;
    used.push_back(gen);
    queue.assign(elems.begin(), elems.end());
    std::size_t head = 0;
    while (head < queue.size()) {
      const Index x = queue[head++];
      for (auto u : used) {
        const Index y = g.mul(x, u);
        if (!member[y]) {
          member[y] = 1;
          elems.push_back(y);
          queue.push_back(y);
        }
      }
    }
  }
  return used;
}

} // namespace

Subgroup subgroup_generated(const Group &g, std::span<const Index> gens) {
  std::vector<std::uint8_t> member;
  std::vector<Index> elems;
  auto used = close(g, gens, member, elems);
  std::sort(elems.begin(), elems.end());
  return Subgroup(g, std::move(elems), std::move(used));
}

GenerationResult subgroup_generated_report(const Group &g, std::span<const Index> gens) {
  auto h = subgroup_generated(g, gens);
  const bool whole = h.is_whole();
  return {std::move(h), whole};
}

std::size_t generated_size(const Group &g, std::span<const Index> gens) {
  std::vector<std::uint8_t> member;
  std::vector<Index> elems;
  close(g, gens, member, elems);
  return elems.size();
}

bool generates(const Group &g, std::span<const Index> gens) {
  return generated_size(g, gens) == g.order();
}

bool is_cyclic(const Group &g) {
  for (Index x = 0; x < g.order(); ++x)
    if (g.element_order(x) == g.order())
      return true;
  return false;
}

bool is_cyclic(const Subgroup &h) {
  for (auto x : h.elements())
    if (h.parent().element_order(x) == h.size())
      return true;
  return false;
}

std::vector<std::vector<Index>> conjugacy_classes(const Group &g) {
  const auto n = g.order();
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<std::vector<Index>> classes;
  for (Index x = 0; x < n; ++x) {
    if (seen[x])
      continue;
    std::vector<Index> cls{x};
    seen[x] = 1;
    for (std::size_t head = 0; head < cls.size(); ++head)
      for (auto s : g.generators()) {
        const Index y = g.conj(cls[head], s);
        if (!seen[y]) {
          seen[y] = 1;
          cls.push_back(y);
        }
      }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

std::vector<std::uint32_t> class_sizes(const Group &g) {
  std::vector<std::uint32_t> sizes(g.order());
  for (const auto &cls : conjugacy_classes(g))
    for (auto x : cls)
      sizes[x] = static_cast<std::uint32_t>(cls.size());
  return sizes;
}

Subgroup center(const Group &g) {
  std::vector<Index> z;
  for (Index x = 0; x < g.order(); ++x) {
    bool central = true;
    for (auto s : g.generators())
      if (g.mul(x, s) != g.mul(s, x)) {
        central = false;
        break;
      }
    if (central)
      z.push_back(x);
  }
  return subgroup_generated(g, z);
}

Subgroup normal_closure(const Group &g, std::span<const Index> elems) {
  std::vector<Index> gens;
  std::vector<std::uint8_t> seen(g.order(), 0);
  for (auto x : elems) {
    if (seen[x])
      continue;
    seen[x] = 1;
    gens.push_back(x);
  }
  for (std::size_t head = 0; head < gens.size(); ++head)
    for (auto s : g.generators()) {
      const Index y = g.conj(gens[head], s);
      if (!seen[y]) {
        seen[y] = 1;
        gens.push_back(y);
      }
    }
  return subgroup_generated(g, gens);
}

std::vector<Subgroup> normal_subgroups(const Group &g, const std::optional<Subgroup> &above) {
  if (above && !above->is_normal())
    throw PreconditionError("subgroup passed as 'above' is not normal");
  // Normal closures of single classes; every normal subgroup is a join of these.
  std::vector<Subgroup> atoms;
  for (const auto &cls : conjugacy_classes(g)) {
    if (cls.front() == 0)
      continue;
    auto nc = normal_closure(g, std::span<const Index>(cls.data(), 1));
    if (std::find(atoms.begin(), atoms.end(), nc) == atoms.end())
      atoms.push_back(std::move(nc));
  }
  std::set<std::vector<Index>> seen;
  std::vector<Subgroup> found;
  auto start = above ? subgroup_generated(g, above->generators()) : Subgroup::trivial(g);
  seen.insert({start.elements().begin(), start.elements().end()});
  found.push_back(start);
  for (std::size_t head = 0; head < found.size(); ++head) {
    for (const auto &atom : atoms) {
      if (atom.is_subset_of(found[head]))
        continue;
      std::vector<Index> gens(found[head].generators().begin(), found[head].generators().end());
      gens.insert(gens.end(), atom.generators().begin(), atom.generators().end());
      auto joined = subgroup_generated(g, gens);
      std::vector<Index> key(joined.elements().begin(), joined.elements().end());
      if (seen.insert(key).second)
        found.push_back(std::move(joined));
    }
  }
  std::sort(found.begin(), found.end());
  return found;
}

std::vector<Subgroup> minimal_normal_subgroups(const Group &g) {
  std::vector<Subgroup> result;
  for (auto &n : normal_subgroups(g)) {
    if (n.is_trivial())
      continue;
    bool minimal = true;
    for (const auto &m : result)
      if (m.is_subset_of(n)) {
        minimal = false;
        break;
      }
    if (minimal)
      result.push_back(std::move(n));
  }
  std::sort(result.begin(), result.end());
  return result;
}

Quotient quotient(const Group &g, const Subgroup &n) {
  if (!n.parent().same(g))
    throw UsageError("subgroup belongs to a different group");
  if (!n.is_normal())
    throw PreconditionError("quotient by a subgroup that is not normal");
  const auto order = g.order();
  std::vector<Index> coset(order, ~Index{0});
  std::vector<Index> section;
  for (Index x = 0; x < order; ++x) {
    if (coset[x] != ~Index{0})
      continue;
    const auto id = static_cast<Index>(section.size());
    section.push_back(x);
    for (auto y : n.elements())
      coset[g.mul(x, y)] = id;
  }
  const auto q = section.size();
  std::vector<std::uint16_t> table(q * q);
  for (std::size_t a = 0; a < q; ++a)
    for (std::size_t b = 0; b < q; ++b)
      table[a * q + b] = static_cast<std::uint16_t>(coset[g.mul(section[a], section[b])]);
  std::vector<Index> gens;
  for (auto s : g.generators()) {
    const Index c = coset[s];
    if (c != 0 && std::find(gens.begin(), gens.end(), c) == gens.end())
      gens.push_back(c);
  }
  auto qg = Group::from_table(q, std::move(table), std::move(gens),
                              g.name() + "/N" + std::to_string(n.size()));
  Homomorphism proj(g, qg, std::move(coset));
  return {std::move(qg), std::move(proj), std::move(section)};
}

std::optional<Homomorphism> homomorphism_from_images(const Group &g, std::span<const Index> gens,
                                                     const Group &h,
                                                     std::span<const Index> images) {
  if (gens.size() != images.size())
    throw UsageError("generator and image lists differ in length");
  if (!generates(g, gens))
    throw PreconditionError("listed elements do not generate the domain");
  constexpr Index unset = ~Index{0};
  std::vector<Index> img(g.order(), unset);
  img[0] = 0;
  std::vector<Index> queue{0};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Index x = queue[head];
    for (std::size_t j = 0; j < gens.size(); ++j) {
      const Index y = g.mul(x, gens[j]);
      const Index iy = h.mul(img[x], images[j]);
      if (img[y] == unset) {
        img[y] = iy;
        queue.push_back(y);
      } else if (img[y] != iy) {
        return std::nullopt;
      }
    }
  }
  return Homomorphism(g, h, std::move(img));
}

bool verify_group_axioms(const Group &g, std::size_t exhaustive_limit, std::size_t sampled_triples) {
  const auto n = g.order();
  for (Index x = 0; x < n; ++x) {
    if (g.mul(0, x) != x || g.mul(x, 0) != x)
      return false;
    if (g.mul(x, g.inv(x)) != 0 || g.mul(g.inv(x), x) != 0)
      return false;
  }
  if (n <= exhaustive_limit) {
    for (Index x = 0; x < n; ++x)
      for (Index y = 0; y < n; ++y)
        for (Index z = 0; z < n; ++z)
          if (g.mul(g.mul(x, y), z) != g.mul(x, g.mul(y, z)))
            return false;
    return true;
  }
  std::mt19937_64 rng(0x5eedULL + n);
  std::uniform_int_distribution<Index> pick(0, static_cast<Index>(n - 1));
  for (std::size_t i = 0; i < sampled_triples; ++i) {
    const Index x = pick(rng), y = pick(rng), z = pick(rng);
    if (g.mul(g.mul(x, y), z) != g.mul(x, g.mul(y, z)))
      return false;
  }
  return true;
}

} // namespace pigp
