#include "pigp/realizability.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "pigp/analysis.hpp"
#include "pigp/counting.hpp"
#include "pigp/errors.hpp"
#include "pigp/numtheory.hpp"
#include "pigp/potential.hpp"
#include "pigp/relations.hpp"

namespace pigp {

fp::Vec FpTModule::coordinates(Index x) const {
  const auto &el = v.elements();
  const auto it = std::lower_bound(el.begin(), el.end(), x);
  if (it == el.end() || *it != x)
    throw PreconditionError("element is not in the p-core");
  return coords[static_cast<std::size_t>(it - el.begin())];
}

fp::Mat FpTModule::action_of(Index g) const {
  const int d = static_cast<int>(basis.size());
  fp::Mat m(d, d);
  for (int j = 0; j < d; ++j) {
    const auto c = coordinates(group.conj(basis[j], g));
    for (int i = 0; i < d; ++i)
      m.at(i, j) = c[i];
  }
  return m;
}

FpTModule vw_module(const Group &g, std::int64_t p) {
  auto v = p_core(g, p);
  auto w = frattini_of(g, v, p);
  auto t = quotient(g, v);
  FpTModule m{g, p, v, w, t, {}, {}, {}, {}};
  Subgroup span = w;
  for (auto x : v.elements()) {
    if (span.contains(x))
      continue;
    m.basis.push_back(x);
    std::vector<Index> gens(w.generators().begin(), w.generators().end());
    gens.insert(gens.end(), m.basis.begin(), m.basis.end());
    span = subgroup_generated(g, gens);
  }
  const int d = static_cast<int>(m.basis.size());
  if (nt::ipow(p, d) * static_cast<std::int64_t>(w.size()) != static_cast<std::int64_t>(v.size()))
    throw std::logic_error("V/W is not elementary abelian");
  std::vector<std::int64_t> pos(g.order(), -1);
  for (std::size_t i = 0; i < v.size(); ++i)
    pos[v.elements()[i]] = static_cast<std::int64_t>(i);
  m.coords.assign(v.size(), fp::Vec(d, 0));
  fp::Vec c(d, 0);
  for (std::int64_t code = 0; code < nt::ipow(p, d); ++code) {
    std::int64_t rest = code;
    Index e = 0;
    for (int i = 0; i < d; ++i) {
      c[i] = rest % p;
      rest /= p;
      e = g.mul(e, g.pow(m.basis[i], c[i]));
    }
    for (auto y : w.elements())
      m.coords[pos[g.mul(e, y)]] = c;
  }
  m.rep.p = p;
  m.rep.dim = d;
  m.t_generators.assign(t.group.generators().begin(), t.group.generators().end());
  for (auto tg : m.t_generators)
    m.rep.gens.push_back(m.action_of(t.section[tg]));
  // The matrices must form a representation: M(s t) = M(t) M(s) for right conjugation.
  for (Index s = 0; s < t.group.order(); ++s) {
    const auto ms = m.action_of(t.section[s]);
    if (!fp::is_invertible(ms, p))
      throw std::logic_error("conjugation matrix is singular");
    for (std::size_t k = 0; k < m.t_generators.size(); ++k) {
      const auto st = t.group.mul(s, m.t_generators[k]);
      if (m.action_of(t.section[st]) != fp::mul(m.rep.gens[k], ms, p))
        throw std::logic_error("conjugation matrices do not respect the group law");
    }
  }
  return m;
}

namespace {

/// Invariant subspace with basis columns s (in the coordinates of r): its action matrices.
FpRep restrict(const FpRep &r, const fp::Mat &s) {
  FpRep out{r.p, s.cols, {}};
  for (const auto &g : r.gens) {
    const auto gs = fp::mul(g, s, r.p);
    fp::Mat m(s.cols, s.cols);
    for (int j = 0; j < s.cols; ++j) {
      const auto c = fp::solve(s, fp::column(gs, j), r.p);
      if (!c)
        throw std::logic_error("subspace is not invariant");
      for (int i = 0; i < s.cols; ++i)
        m.at(i, j) = (*c)[i];
    }
    out.gens.push_back(std::move(m));
  }
  return out;
}

/// An endomorphism that is neither nilpotent nor invertible, if one is found.
std::optional<fp::Mat> splitting_endomorphism(const FpRep &r) {
  const auto p = r.p;
  const auto e = fp::intertwiners(r.gens, r.gens, r.dim, r.dim, p);
  auto splits = [&](const fp::Mat &x) { return !fp::is_invertible(x, p) && !fp::is_nilpotent(x, p); };
  for (const auto &x : e)
    if (splits(x))
      return x;
  auto combo = [&](const std::vector<std::int64_t> &coef) {
    fp::Mat x(r.dim, r.dim);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (coef[i])
        x = fp::add(x, fp::scale(e[i], coef[i], p), p);
    return x;
  };
  std::vector<std::int64_t> coef(e.size(), 0);
  double total = 1;
  for (std::size_t i = 0; i < e.size(); ++i)
    total *= static_cast<double>(p);
  if (total <= 65536) {
    // Small endomorphism algebra: look at every element.
    for (std::int64_t code = 1; code < static_cast<std::int64_t>(total); ++code) {
      std::int64_t rest = code;
      for (auto &c : coef) {
        c = rest % p;
        rest /= p;
      }
      auto x = combo(coef);
      if (splits(x))
        return x;
    }
    return std::nullopt;
  }
  // A non-local endomorphism algebra has a large share of such elements.
  std::mt19937_64 rng(0x5eed + r.dim);
  std::uniform_int_distribution<std::int64_t> pick(0, p - 1);
  for (int attempt = 0; attempt < 400; ++attempt) {
    for (auto &c : coef)
      c = pick(rng);
    auto x = combo(coef);
    if (splits(x))
      return x;
  }
  return std::nullopt;
}

void split(const FpRep &r, const fp::Mat &basis, std::vector<Summand> &out) {
  if (r.dim == 0)
    return;
  if (auto x = splitting_endomorphism(r)) {
    const auto y = fp::power(*x, r.dim, r.p);
    for (const auto &part : {fp::nullspace(y, r.p), fp::column_space(y, r.p)}) {
      const auto s = fp::from_columns(part, r.dim);
      split(restrict(r, s), fp::mul(basis, s, r.p), out);
    }
    return;
  }
  Summand sm;
  sm.basis = basis;
  sm.dim = r.dim;
  sm.rep = r;
  sm.irreducible = is_irreducible(r);
  out.push_back(std::move(sm));
}

bool isomorphic(const FpRep &a, const FpRep &b) {
  if (a.dim != b.dim)
    return false;
  // Between isomorphic indecomposables the non-isomorphisms form a proper subspace,
  // so some basis vector of the intertwiner space is invertible.
  for (const auto &x : fp::intertwiners(a.gens, b.gens, a.dim, b.dim, a.p))
    if (fp::is_invertible(x, a.p))
      return true;
  return false;
}

} // namespace

bool is_irreducible(const FpRep &m) {
  const auto p = m.p;
  const int k = m.dim;
  if (k <= 1)
    return k == 1;
  double points = 1;
  for (int i = 0; i < k; ++i)
    points *= static_cast<double>(p);
  if (points > 2e7)
    throw CapacityError("irreducibility test limited to modules with at most 2e7 vectors");
  // Spin every vector whose first nonzero coordinate is 1.
  fp::Vec v(k, 0);
  for (std::int64_t code = 1; code < static_cast<std::int64_t>(points); ++code) {
    std::int64_t rest = code;
    for (auto &c : v) {
      c = rest % p;
      rest /= p;
    }
    int lead = 0;
    while (v[lead] == 0)
      ++lead;
    if (v[lead] != 1)
      continue;
    std::vector<fp::Vec> span{v};
    for (std::size_t head = 0; head < span.size() && static_cast<int>(span.size()) < k; ++head)
      for (const auto &g : m.gens) {
        auto w = fp::apply(g, span[head], p);
        auto trial = span;
        trial.push_back(w);
        if (fp::rank(fp::from_columns(trial, k), p) > static_cast<int>(span.size()))
          span.push_back(std::move(w));
      }
    if (static_cast<int>(span.size()) < k)
      return false;
  }
  return true;
}

std::string Decomposition::shape() const {
  if (classes.empty())
    return "0";
  auto sorted = classes;
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto &a, const auto &b) {
    if (a.second != b.second)
      return a.second > b.second;
    return a.first.dim > b.first.dim;
  });
  std::string s;
  for (const auto &[sm, mult] : sorted) {
    if (!s.empty())
      s += " ⊕ ";
    s += std::to_string(sm.dim);
    if (mult > 1)
      s += "^" + std::to_string(mult);
  }
  return s;
}

Decomposition decompose(const FpRep &m, int max_dim) {
  if (m.dim > max_dim)
    throw CapacityError("decomposition limited to dimension " + std::to_string(max_dim));
  std::vector<Summand> parts;
  split(m, fp::identity(m.dim), parts);
  Decomposition d;
  d.dim = m.dim;
  for (auto &sm : parts) {
    bool placed = false;
    for (auto &[rep, mult] : d.classes)
      if (isomorphic(rep.rep, sm.rep)) {
        ++mult;
        placed = true;
        break;
      }
    if (!placed)
      d.classes.emplace_back(std::move(sm), 1);
  }
  int total = 0;
  for (const auto &[sm, mult] : d.classes) {
    d.max_multiplicity = std::max(d.max_multiplicity, mult);
    total += sm.dim * mult;
  }
  if (total != m.dim)
    throw std::logic_error("summand dimensions do not add up");
  return d;
}

Predicates predicates_ss_td_xc(const Group &g, std::int64_t p) {
  const auto v = p_core(g, p);
  const auto w = frattini_of(g, v, p);
  const auto ctx = make_context(static_cast<std::int64_t>(g.order()), p);
  Predicates out;
  for (const auto &[sigma, tau] : enumerate_TG(g, p)) {
    if (out.ss && g.element_order(sigma) != order_modulo(g, v, sigma)) {
      out.ss = false;
      out.ss_witness = {sigma, tau};
    }
    if (out.td)
      for (auto b : v.generators())
        if (!w.contains(g.mul(g.conj(b, tau), g.inv(b)))) {
          out.td = false;
          out.td_witness = {sigma, tau};
          break;
        }
    if (out.xc)
      for (auto x0 : v.elements()) {
        const Index lhs = g.mul(g.conj(x0, sigma), g.inv(angle_bracket(g, x0, tau, ctx)));
        if (w.contains(lhs) && !w.contains(x0)) {
          out.xc = false;
          out.xc_witness = {sigma, tau};
          break;
        }
      }
    if (!out.ss && !out.td && !out.xc)
      break;
  }
  return out;
}

namespace {

void require_potential(const Group &g, std::int64_t p) {
  if (!is_potentially_realizable(g, p).potentially_realizable)
    throw PreconditionError("'" + g.name() + "' is not potentially " + std::to_string(p) +
                            "-realizable");
}

} // namespace

Predicates predicates_modulo_w(const Group &g, std::int64_t p) {
  const auto v = p_core(g, p);
  const auto w = frattini_of(g, v, p);
  return predicates_ss_td_xc(w.is_trivial() ? g : quotient(g, w).group, p);
}

namespace {

bool multiplicity_bound_exceeded(const Decomposition &d, const Predicates &mod_w) {
  return d.max_multiplicity > 1 + (mod_w.ss ? 0 : 1) + (mod_w.xc ? 0 : 1);
}

} // namespace

bool thm_multiplicity_unrealizable(const Group &g, std::int64_t p) {
  require_potential(g, p);
  const auto d = decompose(vw_module(g, p).rep);
  return multiplicity_bound_exceeded(d, predicates_modulo_w(g, p));
}

bool thm_converse_realizable(const Group &g, std::int64_t p) {
  require_potential(g, p);
  const auto m = vw_module(g, p);
  if (!m.w.is_trivial())
    return false;
  const auto d = decompose(m.rep);
  for (const auto &[sm, mult] : d.classes)
    if (mult > 1 || !sm.irreducible)
      return false;
  return true;
}

nlohmann::json to_json(const ScanRow &row) {
  auto pair_json = [](const std::optional<std::pair<Index, Index>> &w) -> nlohmann::json {
    if (!w)
      return nullptr;
    return {w->first, w->second};
  };
  return {{"group", row.name},
          {"order", row.order},
          {"potentially_realizable", row.potentially_realizable},
          {"count", row.count},
          {"minimally_unrealizable", row.minimally_unrealizable},
          {"ss", row.predicates.ss},
          {"td", row.predicates.td},
          {"xc", row.predicates.xc},
          {"ss_witness", pair_json(row.predicates.ss_witness)},
          {"td_witness", pair_json(row.predicates.td_witness)},
          {"xc_witness", pair_json(row.predicates.xc_witness)},
          {"shape", row.shape},
          {"thm_multiplicity_unrealizable", row.thm_multiplicity},
          {"thm_converse_realizable", row.thm_converse}};
}

std::vector<ScanRow> realizability_scan(std::span<const CatalogEntry> catalog, std::int64_t p,
                                        std::size_t order_bound, Counter &counter) {
  std::vector<ScanRow> rows;
  for (const auto &e : catalog) {
    const auto &g = e.group;
    if (g.order() > order_bound || !is_potentially_realizable(g, p).potentially_realizable)
      continue;
    ScanRow row;
    row.name = e.name;
    row.order = g.order();
    row.potentially_realizable = true;
    row.count = counter.count(g, p).count;
    if (row.count == 0) {
      bool all_quotients = true;
      for (const auto &n : minimal_normal_subgroups(g))
        if (counter.count(quotient(g, n).group, p).count == 0) {
          all_quotients = false;
          break;
        }
      row.minimally_unrealizable = all_quotients;
    }
    row.predicates = predicates_ss_td_xc(g, p);
    const auto m = vw_module(g, p);
    const auto d = decompose(m.rep);
    row.shape = d.shape();
    row.thm_multiplicity = multiplicity_bound_exceeded(d, predicates_modulo_w(g, p));
    bool conv = m.w.is_trivial();
    for (const auto &[sm, mult] : d.classes)
      conv = conv && mult == 1 && sm.irreducible;
    row.thm_converse = conv;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::string> minimally_unrealizable_scan(std::span<const CatalogEntry> catalog,
                                                     std::int64_t p, std::size_t order_bound,
                                                     Counter &counter) {
  std::vector<std::string> out;
  for (const auto &row : realizability_scan(catalog, p, order_bound, counter))
    if (row.minimally_unrealizable)
      out.push_back(row.name);
  return out;
}

} // namespace pigp
