#include "pigp/construct.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <unordered_map>

#include "hom_search.hpp"
#include "pigp/errors.hpp"
#include "pigp/numtheory.hpp"

namespace pigp {

namespace {

std::string join_ints(std::span<const std::int64_t> xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i)
      s += ",";
    s += std::to_string(xs[i]);
  }
  return s;
}

void check_order(std::int64_t n) {
  if (n <= 0)
    throw UsageError("group order must be positive");
  if (static_cast<std::size_t>(n) > kMaxOrder)
    throw CapacityError("group order " + std::to_string(n) + " exceeds supported bound " +
                        std::to_string(kMaxOrder));
}

struct VecHash {
  std::size_t operator()(const std::vector<std::uint32_t> &v) const {
    std::size_t seed = v.size();
    for (auto x : v)
      seed ^= x + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
    return seed;
  }
};

/// Closure of `gens` under `mul` by breadth-first search; element indices
/// follow discovery order with the identity at 0.
template <class Mul>
Group build_from_generators(const std::vector<std::uint32_t> &identity,
                            const std::vector<std::vector<std::uint32_t>> &gens, Mul mul,
                            std::string name) {
  std::vector<std::vector<std::uint32_t>> elems{identity};
  std::unordered_map<std::vector<std::uint32_t>, Index, VecHash> index{{identity, 0}};
  std::vector<Index> parent{0}, via{0};
  std::vector<Index> right; // right[x * k + j] = x * gens[j]
  const std::size_t k = gens.size();
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (std::size_t j = 0; j < k; ++j) {
      auto y = mul(elems[head], gens[j]);
      auto it = index.find(y);
      Index yi;
      if (it == index.end()) {
        yi = static_cast<Index>(elems.size());
        if (elems.size() >= kMaxOrder)
          throw CapacityError("generated group exceeds supported order " +
                              std::to_string(kMaxOrder));
        index.emplace(y, yi);
        elems.push_back(std::move(y));
        parent.push_back(static_cast<Index>(head));
        via.push_back(static_cast<Index>(j));
      } else {
        yi = it->second;
      }
      right.push_back(yi);
    }
  }
  const std::size_t n = elems.size();
  std::vector<std::uint16_t> table(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    table[x * n] = static_cast<std::uint16_t>(x);
    for (std::size_t y = 1; y < n; ++y)
      table[x * n + y] =
          static_cast<std::uint16_t>(right[table[x * n + parent[y]] * k + via[y]]);
  }
  std::vector<Index> gen_idx;
  for (std::size_t j = 0; j < k; ++j)
    gen_idx.push_back(right[j]);
  return Group::from_table(n, std::move(table), std::move(gen_idx), std::move(name));
}

} // namespace

PrimaryDecomposition primary_decomposition(std::span<const std::int64_t> factors) {
  PrimaryDecomposition pd;
  for (auto f : factors)
    for (auto [l, e] : nt::factorize(f))
      pd[l].push_back(e);
  for (auto &[l, es] : pd)
    std::sort(es.begin(), es.end());
  return pd;
}

std::vector<std::int64_t> abelian_coordinates(std::span<const std::int64_t> factors, Index x) {
  std::vector<std::int64_t> c(factors.size());
  std::int64_t rest = x;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    c[i] = rest % factors[i];
    rest /= factors[i];
  }
  return c;
}

Index abelian_index(std::span<const std::int64_t> factors, std::span<const std::int64_t> coords) {
  std::int64_t idx = 0, stride = 1;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    idx += nt::mod(coords[i], factors[i]) * stride;
    stride *= factors[i];
  }
  return static_cast<Index>(idx);
}

Group abelian_group(std::span<const std::int64_t> factors) {
  std::int64_t n = 1;
  for (auto f : factors) {
    if (f < 2)
      throw UsageError("abelian invariant factors must be at least 2");
    n *= f;
    check_order(n);
  }
  const auto un = static_cast<std::size_t>(n);
  std::vector<std::vector<std::int64_t>> coords(un);
  for (std::size_t x = 0; x < un; ++x)
    coords[x] = abelian_coordinates(factors, static_cast<Index>(x));
  std::vector<std::uint16_t> table(un * un);
  std::vector<std::int64_t> sum(factors.size());
  for (std::size_t x = 0; x < un; ++x)
    for (std::size_t y = 0; y < un; ++y) {
      for (std::size_t i = 0; i < factors.size(); ++i)
        sum[i] = coords[x][i] + coords[y][i];
      table[x * un + y] = static_cast<std::uint16_t>(abelian_index(factors, sum));
    }
  std::vector<Index> gens;
  std::int64_t stride = 1;
  for (auto f : factors) {
    gens.push_back(static_cast<Index>(stride));
    stride *= f;
  }
  std::string name = factors.empty() ? "trivial" : "abelian(" + join_ints(factors) + ")";
  if (factors.size() == 1)
    name = "cyclic(" + std::to_string(factors[0]) + ")";
  return Group::from_table(un, std::move(table), std::move(gens), std::move(name));
}

Group abelian_group(std::initializer_list<std::int64_t> factors) {
  return abelian_group(std::span<const std::int64_t>(factors.begin(), factors.size()));
}

std::vector<std::vector<std::int64_t>> abelian_types(std::int64_t n) {
  std::vector<std::vector<std::int64_t>> out{{}};
  for (const auto &[l, e] : nt::factorize(n)) {
    // Partitions of e into non-increasing parts.
    std::vector<std::vector<int>> parts;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int left, int max_part) {
      if (left == 0) {
        parts.push_back(cur);
        return;
      }
      for (int k = std::min(left, max_part); k >= 1; --k) {
        cur.push_back(k);
        rec(left - k, k);
        cur.pop_back();
      }
    };
    rec(e, e);
    std::vector<std::vector<std::int64_t>> next;
    for (const auto &base : out)
      for (const auto &part : parts) {
        auto f = base;
        for (auto it = part.rbegin(); it != part.rend(); ++it)
          f.push_back(nt::ipow(l, *it));
        next.push_back(std::move(f));
      }
    out = std::move(next);
  }
  return out;
}

Group cyclic_group(std::int64_t n) {
  if (n == 1)
    return Group().renamed("cyclic(1)");
  return abelian_group({n});
}

Group elementary_abelian(std::int64_t p, int k) {
  std::vector<std::int64_t> f(static_cast<std::size_t>(k), p);
  return abelian_group(f);
}

std::vector<Index> abelian_scalar_automorphism(std::span<const std::int64_t> factors,
                                               std::int64_t scalar) {
  std::int64_t n = 1;
  for (auto f : factors)
    n *= f;
  std::vector<Index> img(static_cast<std::size_t>(n));
  for (Index x = 0; x < img.size(); ++x) {
    auto c = abelian_coordinates(factors, x);
    for (auto &ci : c)
      ci *= scalar;
    img[x] = abelian_index(factors, c);
  }
  return img;
}

Group semidirect_product(const Group &v, const Group &t,
                         std::span<const std::vector<Index>> gen_actions, std::string name) {
  const auto nv = v.order(), nt_ = t.order();
  check_order(static_cast<std::int64_t>(nv * nt_));
  const auto tgens = t.generators();
  if (gen_actions.size() != tgens.size())
    throw UsageError("one action table is required per generator of T");
  for (const auto &a : gen_actions) {
    if (a.size() != nv)
      throw UsageError("action table size differs from |V|");
    Homomorphism phi(v, v, a);
    if (!phi.is_injective() || !phi.verify())
      throw PreconditionError("action of a T-generator is not an automorphism of V");
  }
  // act[t] for every t, by BFS over T: act(t g) = act(t) o act(g).
  std::vector<std::vector<Index>> act(nt_);
  act[0].resize(nv);
  std::iota(act[0].begin(), act[0].end(), Index{0});
  std::vector<Index> queue{0};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Index x = queue[head];
    for (std::size_t j = 0; j < tgens.size(); ++j) {
      const Index y = t.mul(x, tgens[j]);
      std::vector<Index> comp(nv);
      for (Index w = 0; w < nv; ++w)
        comp[w] = act[x][gen_actions[j][w]];
      if (act[y].empty()) {
        act[y] = std::move(comp);
        queue.push_back(y);
      } else if (act[y] != comp) {
        throw PreconditionError("action on V does not define a homomorphism T -> Aut(V)");
      }
    }
  }
  const std::size_t n = nv * nt_;
  std::vector<std::uint16_t> table(n * n);
  for (Index t1 = 0; t1 < nt_; ++t1)
    for (Index v1 = 0; v1 < nv; ++v1)
      for (Index t2 = 0; t2 < nt_; ++t2) {
        const auto &a = act[t1];
        const Index tt = t.mul(t1, t2);
        for (Index v2 = 0; v2 < nv; ++v2)
          table[(t1 * nv + v1) * n + t2 * nv + v2] =
              static_cast<std::uint16_t>(tt * nv + v.mul(v1, a[v2]));
      }
  std::vector<Index> gens;
  for (auto g : v.generators())
    gens.push_back(g);
  for (auto g : tgens)
    gens.push_back(static_cast<Index>(g * nv));
  if (name.empty())
    name = "(" + v.name() + ":" + t.name() + ")";
  return Group::from_table(n, std::move(table), std::move(gens), std::move(name));
}

Group direct_product(const Group &a, const Group &b, std::string name) {
  std::vector<Index> id(a.order());
  std::iota(id.begin(), id.end(), Index{0});
  std::vector<std::vector<Index>> acts(b.generators().size(), id);
  if (name.empty())
    name = a.name() + "x" + b.name();
  return semidirect_product(a, b, acts, std::move(name));
}

std::optional<Group> metacyclic_group(std::int64_t k, std::int64_t m, std::int64_t l,
                                      std::int64_t r) {
  if (k < 1 || m < 1 || l < 0 || l >= m || r < 1)
    return std::nullopt;
  if (nt::mod(nt::powmod(r, k, m) - 1, m) != 0)
    return std::nullopt;
  if (nt::mod(l * (r - 1), m) != 0)
    return std::nullopt;
  check_order(k * m);
  const auto n = static_cast<std::size_t>(k * m);
  std::vector<std::int64_t> rpow(static_cast<std::size_t>(k));
  for (std::int64_t i = 0; i < k; ++i)
    rpow[i] = nt::powmod(r, i, m);
  std::vector<std::uint16_t> table(n * n);
  for (std::int64_t i = 0; i < k; ++i)
    for (std::int64_t j = 0; j < m; ++j)
      for (std::int64_t i2 = 0; i2 < k; ++i2)
        for (std::int64_t j2 = 0; j2 < m; ++j2) {
          std::int64_t ii = i + i2;
          std::int64_t jj = (j * rpow[i2] + j2) % m;
          if (ii >= k) {
            ii -= k;
            jj = (jj + l) % m;
          }
          table[static_cast<std::size_t>((i * m + j) * static_cast<std::int64_t>(n) + i2 * m +
                                         j2)] = static_cast<std::uint16_t>(ii * m + jj);
        }
  const Index x = k > 1 ? static_cast<Index>(m) : static_cast<Index>(l);
  const Index y = m > 1 ? 1 : 0;
  std::vector<Index> gens{x, y};
  std::string name = "metacyclic(" + std::to_string(k) + "," + std::to_string(m) + "," +
                     std::to_string(l) + "," + std::to_string(r) + ")";
  return Group::from_table(n, std::move(table), std::move(gens), std::move(name));
}

Group quaternion8() { return metacyclic_group(2, 4, 2, 3)->renamed("quaternion8"); }

Group heisenberg(std::int64_t p) {
  check_order(p * p * p);
  const auto up = static_cast<std::size_t>(p);
  const std::size_t n = up * up * up;
  std::vector<std::uint16_t> table(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t a = x % up, b = (x / up) % up, c = x / (up * up);
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t a2 = y % up, b2 = (y / up) % up, c2 = y / (up * up);
      const std::size_t ra = (a + a2) % up, rb = (b + b2) % up, rc = (c + c2 + a * b2) % up;
      table[x * n + y] = static_cast<std::uint16_t>(ra + up * rb + up * up * rc);
    }
  }
  return Group::from_table(n, std::move(table), {1, static_cast<Index>(up)},
                           "heisenberg(" + std::to_string(p) + ")");
}

Group dihedral(std::int64_t m) {
  return metacyclic_group(2, m, 0, m - 1)->renamed("dihedral(" + std::to_string(2 * m) + ")");
}

Group generalized_dihedral(std::int64_t p, int k) {
  auto v = elementary_abelian(p, k);
  std::vector<std::int64_t> f(static_cast<std::size_t>(k), p);
  std::vector<std::vector<Index>> acts{abelian_scalar_automorphism(f, -1)};
  return semidirect_product(v, cyclic_group(2), acts,
                            "gendihedral(" + std::to_string(p) + "," + std::to_string(k) + ")");
}

Group permutation_group(std::span<const std::vector<std::uint32_t>> gens, std::string name) {
  std::size_t degree = gens.empty() ? 0 : gens.front().size();
  for (const auto &g : gens) {
    if (g.size() != degree)
      throw UsageError("permutation generators have inconsistent degree");
    std::vector<std::uint8_t> seen(degree, 0);
    for (auto x : g) {
      if (x >= degree || seen[x])
        throw UsageError("generator image list is not a bijection");
      seen[x] = 1;
    }
  }
  std::vector<std::uint32_t> id(degree);
  std::iota(id.begin(), id.end(), 0u);
  std::vector<std::vector<std::uint32_t>> gv(gens.begin(), gens.end());
  auto compose = [](const std::vector<std::uint32_t> &x, const std::vector<std::uint32_t> &y) {
    std::vector<std::uint32_t> z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
      z[i] = y[x[i]];
    return z;
  };
  auto g = build_from_generators(id, gv, compose, std::move(name));
  return g.with_permutation_generators(std::move(gv));
}

Group symmetric_group(int degree) {
  std::vector<std::vector<std::uint32_t>> gens;
  if (degree >= 2) {
    std::vector<std::uint32_t> t(degree), c(degree);
    std::iota(t.begin(), t.end(), 0u);
    std::swap(t[0], t[1]);
    for (int i = 0; i < degree; ++i)
      c[i] = static_cast<std::uint32_t>((i + 1) % degree);
    gens = {t, c};
  }
  return permutation_group(gens, "symmetric(" + std::to_string(degree) + ")");
}

Group alternating_group(int degree) {
  std::vector<std::vector<std::uint32_t>> gens;
  for (int i = 2; i < degree; ++i) {
    std::vector<std::uint32_t> c(degree);
    std::iota(c.begin(), c.end(), 0u);
    c[0] = 1;
    c[1] = static_cast<std::uint32_t>(i);
    c[i] = 0;
    gens.push_back(c);
  }
  return permutation_group(gens, "alternating(" + std::to_string(degree) + ")");
}

// ---------------------------------------------------------------- invariants

std::vector<std::int64_t> abelian_invariants(const Group &g) {
  if (!g.is_abelian())
    throw PreconditionError("abelian_invariants needs an abelian group");
  std::vector<std::int64_t> inv;
  const auto n = static_cast<std::int64_t>(g.order());
  for (auto [l, e] : nt::factorize(n)) {
    // c_k = #{x : x^(l^k) = 1} = l^(sum_i min(k, n_i))
    std::vector<int> logc(static_cast<std::size_t>(e) + 1, 0);
    for (int k = 1; k <= e; ++k) {
      const std::int64_t lk = nt::ipow(l, k);
      std::int64_t c = 0;
      for (Index x = 0; x < g.order(); ++x)
        if (lk % g.element_order(x) == 0)
          ++c;
      int lg = 0;
      while (c > 1) {
        c /= l;
        ++lg;
      }
      logc[k] = lg;
    }
    // number of parts >= k is logc[k] - logc[k-1]
    std::vector<int> ge(static_cast<std::size_t>(e) + 2, 0);
    for (int k = 1; k <= e; ++k)
      ge[k] = logc[k] - logc[k - 1];
    for (int k = 1; k <= e; ++k) {
      const int exactly = ge[k] - ge[k + 1];
      for (int i = 0; i < exactly; ++i)
        inv.push_back(nt::ipow(l, k));
    }
  }
  std::sort(inv.begin(), inv.end());
  return inv;
}

GroupFingerprint fingerprint(const Group &g) {
  GroupFingerprint fp;
  fp.order = g.order();
  std::map<std::uint32_t, std::uint32_t> orders;
  for (Index x = 0; x < g.order(); ++x)
    ++orders[g.element_order(x)];
  fp.element_orders.assign(orders.begin(), orders.end());

  auto classes = conjugacy_classes(g);
  std::map<std::uint32_t, std::uint32_t> sizes;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> profile;
  for (const auto &cls : classes) {
    ++sizes[static_cast<std::uint32_t>(cls.size())];
    profile[{g.element_order(cls.front()), static_cast<std::uint32_t>(cls.size())}] +=
        static_cast<std::uint32_t>(cls.size());
  }
  fp.class_sizes.assign(sizes.begin(), sizes.end());
  for (auto &[k, c] : profile)
    fp.order_class_profile.emplace_back(k.first, k.second, c);

  // derived series
  Group cur = g;
  fp.derived_series.push_back(cur.order());
  bool first = true;
  while (true) {
    std::vector<Index> comms;
    std::vector<std::uint8_t> seen(cur.order(), 0);
    for (Index x = 0; x < cur.order(); ++x)
      for (Index y = 0; y < cur.order(); ++y) {
        const Index c = cur.comm(x, y);
        if (!seen[c]) {
          seen[c] = 1;
          comms.push_back(c);
        }
      }
    auto d = subgroup_generated(cur, comms);
    if (first) {
      auto ab = quotient(cur, d).group;
      fp.abelian_invariants = abelian_invariants(ab);
      first = false;
    }
    if (d.size() == cur.order())
      break;
    fp.derived_series.push_back(d.size());
    if (d.size() == 1)
      break;
    // Materialize D as a group to continue the series.
    std::vector<Index> elems(d.elements().begin(), d.elements().end());
    std::vector<Index> pos(cur.order(), 0);
    for (std::size_t i = 0; i < elems.size(); ++i)
      pos[elems[i]] = static_cast<Index>(i);
    const auto m = elems.size();
    std::vector<std::uint16_t> table(m * m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        table[i * m + j] = static_cast<std::uint16_t>(pos[cur.mul(elems[i], elems[j])]);
    std::vector<Index> gens;
    for (auto x : d.generators())
      gens.push_back(pos[x]);
    cur = Group::from_table(m, std::move(table), std::move(gens), "derived");
  }
  return fp;
}

std::vector<Index> small_generating_set(const Group &g) {
  std::vector<Index> elems(g.order());
  std::iota(elems.begin(), elems.end(), Index{0});
  std::stable_sort(elems.begin(), elems.end(), [&](Index a, Index b) {
    return g.element_order(a) > g.element_order(b);
  });
  std::vector<Index> gens;
  std::vector<std::uint8_t> member(g.order(), 0);
  member[0] = 1;
  std::size_t size = 1;
  for (auto x : elems) {
    if (size == g.order())
      break;
    if (member[x])
      continue;
    gens.push_back(x);
    auto h = subgroup_generated(g, gens);
    for (auto y : h.elements())
      member[y] = 1;
    size = h.size();
  }
  // Drop redundant generators, latest first.
  for (std::size_t i = gens.size(); i-- > 0;) {
    std::vector<Index> rest;
    for (std::size_t j = 0; j < gens.size(); ++j)
      if (j != i)
        rest.push_back(gens[j]);
    if (generated_size(g, rest) == g.order())
      gens = std::move(rest);
  }
  std::stable_sort(gens.begin(), gens.end(), [&](Index a, Index b) {
    return g.element_order(a) > g.element_order(b);
  });
  return gens;
}

namespace detail {

std::vector<std::uint64_t> element_signatures(const Group &g) {
  const auto cs = class_sizes(g);
  std::vector<std::uint64_t> sig(g.order());
  for (Index x = 0; x < g.order(); ++x) {
    const auto ord = g.element_order(x);
    std::uint64_t h = ord * 0x100000001b3ULL;
    for (std::uint32_t d = 1; d <= ord; ++d)
      if (ord % d == 0) {
        h ^= cs[g.pow(x, d)] + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h *= 1099511628211ULL;
      }
    sig[x] = h;
  }
  return sig;
}

std::vector<std::vector<Index>> signature_candidates(const Group &g, std::span<const Index> gens,
                                                     const Group &h) {
  const auto sg = element_signatures(g);
  const auto sh = g.same(h) ? sg : element_signatures(h);
  std::vector<std::vector<Index>> cands;
  for (auto x : gens) {
    std::vector<Index> c;
    for (Index y = 0; y < h.order(); ++y)
      if (sh[y] == sg[x] && h.element_order(y) == g.element_order(x))
        c.push_back(y);
    // Prefer the identity map first when searching a group against itself.
    if (g.same(h)) {
      auto it = std::find(c.begin(), c.end(), x);
      if (it != c.end())
        std::rotate(c.begin(), it, it + 1);
    }
    cands.push_back(std::move(c));
  }
  return cands;
}

} // namespace detail

std::optional<Homomorphism> find_isomorphism(const Group &g, const Group &h,
                                             std::uint64_t node_budget) {
  if (g.order() != h.order())
    return std::nullopt;
  if (g.same(h)) {
    std::vector<Index> id(g.order());
    std::iota(id.begin(), id.end(), Index{0});
    return Homomorphism(g, h, std::move(id));
  }
  if (fingerprint(g) != fingerprint(h))
    return std::nullopt;
  auto gens = small_generating_set(g);
  auto cands = detail::signature_candidates(g, gens, h);
  detail::InjectiveHomSearch search(g, h, gens, std::move(cands), node_budget);
  std::optional<Homomorphism> found;
  search.run([&](const std::vector<Index> &img) {
    found.emplace(g, h, img);
    return false;
  });
  return found;
}

bool are_isomorphic(const Group &g, const Group &h, std::uint64_t node_budget) {
  return find_isomorphism(g, h, node_budget).has_value();
}

} // namespace pigp
