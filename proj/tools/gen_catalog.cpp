// Builds the bundled catalog: every solvable group of order n is an extension
// of a group of order n/q by C_q for some prime q, so all groups of order up
// to the bound come from cyclic extensions of smaller ones, plus A5.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <set>

#include "pigp/automorphisms.hpp"
#include "pigp/catalog.hpp"
#include "pigp/construct.hpp"
#include "pigp/numtheory.hpp"

using namespace pigp;

namespace {

// H.C_q on elements a g^i with g b g^-1 = phi(b), g^q = h.
Group cyclic_extension(const Group &hg, const std::vector<std::vector<Index>> &phi_pow,
                       std::int64_t q, Index h) {
  const std::size_t m = hg.order();
  const std::size_t n = m * static_cast<std::size_t>(q);
  std::vector<std::uint16_t> table(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t i = x / m;
    const Index a = static_cast<Index>(x % m);
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t j = y / m;
      const Index b = static_cast<Index>(y % m);
      Index c = hg.mul(a, phi_pow[i][b]);
      std::size_t k = i + j;
      if (k >= static_cast<std::size_t>(q)) {
        c = hg.mul(c, h);
        k -= q;
      }
      table[x * n + y] = static_cast<std::uint16_t>(k * m + c);
    }
  }
  std::vector<Index> gens(hg.generators().begin(), hg.generators().end());
  gens.push_back(static_cast<Index>(m));
  return Group::from_table(n, std::move(table), std::move(gens), "");
}

struct Known {
  std::string name;
  std::string recipe;
  Group group;
};

std::vector<Known> named_recipes(std::int64_t bound) {
  std::vector<Known> out;
  auto add = [&](std::string name, std::string recipe) {
    auto g = resolve_recipe(recipe);
    if (static_cast<std::int64_t>(g.order()) <= bound)
      out.push_back({std::move(name), std::move(recipe), g});
  };
  for (std::int64_t n = 1; n <= bound; ++n)
    for (const auto &f : abelian_types(n)) {
      std::set<std::int64_t> primes;
      for (auto x : f)
        primes.insert(nt::factorize(x).begin()->first);
      if (primes.size() == f.size()) {
        add("C" + std::to_string(n), "cyclic(" + std::to_string(n) + ")");
        continue;
      }
      std::string name, args;
      for (auto x : f) {
        name += (name.empty() ? "C" : "xC") + std::to_string(x);
        args += (args.empty() ? "" : ",") + std::to_string(x);
      }
      add(name, "abelian(" + args + ")");
    }
  add("S3", "symmetric(3)");
  add("Q8", "quaternion8");
  add("A4", "alternating(4)");
  add("S4", "symmetric(4)");
  add("A5", "alternating(5)");
  add("Heis27", "heisenberg(3)");
  add("M27", "metacyclic(3,9,0,4)");
  add("GD18", "gdihedral(3,2)");
  add("GD50", "gdihedral(5,2)");
  add("GD54", "gdihedral(3,3)");
  add("F9sdC4", "semidirect(elementary(3,2),cyclic(4),scalar(-1))");
  for (std::int64_t m = 4; 2 * m <= bound; ++m)
    add("D" + std::to_string(2 * m), "dihedral(" + std::to_string(m) + ")");
  return out;
}

class Registry {
public:
  /// True if g is new up to isomorphism.
  bool add(const Group &g) {
    auto &bucket = by_fp_[fingerprint(g)];
    for (const auto &other : bucket)
      if (are_isomorphic(g, other))
        return false;
    bucket.push_back(g);
    return true;
  }
  std::vector<Group> groups() const {
    std::vector<Group> out;
    for (const auto &[fp, bucket] : by_fp_)
      out.insert(out.end(), bucket.begin(), bucket.end());
    return out;
  }

private:
  std::map<GroupFingerprint, std::vector<Group>> by_fp_;
};

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Generate the bundled group catalog"};
  std::int64_t bound = 60;
  std::vector<std::int64_t> skip;
  std::string out_path;
  app.add_option("--max-order", bound, "largest order");
  app.add_option("--skip", skip, "orders to leave out");
  app.add_option("-o,--output", out_path, "output file (default stdout)");
  CLI11_PARSE(app, argc, argv);

  const auto known = named_recipes(bound);
  std::map<std::int64_t, std::vector<Group>> by_order;
  by_order[1] = {Group()};
  for (std::int64_t n = 2; n <= bound; ++n) {
    Registry reg;
    for (const auto &[q, e] : nt::factorize(n)) {
      auto &subs = by_order[n / q];
      for (const auto &hg : subs) {
        const auto aut = automorphism_group(hg, 100'000'000, 4096);
        const std::size_t m = hg.order();
        for (std::size_t i = 0; i < aut.size(); ++i) {
          std::vector<std::vector<Index>> pw{std::vector<Index>(m)};
          for (Index x = 0; x < m; ++x)
            pw[0][x] = x;
          for (std::int64_t k = 1; k <= q; ++k) {
            std::vector<Index> next(m);
            for (Index x = 0; x < m; ++x)
              next[x] = aut.apply(i, pw.back()[x]);
            pw.push_back(std::move(next));
          }
          const auto phi_q = pw.back();
          pw.pop_back();
          for (Index h = 0; h < m; ++h) {
            if (aut.apply(i, h) != h)
              continue;
            bool ok = true;
            for (auto b : hg.generators())
              if (phi_q[b] != hg.mul(hg.mul(h, b), hg.inv(h))) {
                ok = false;
                break;
              }
            if (ok)
              reg.add(cyclic_extension(hg, pw, q, h));
          }
        }
      }
    }
    if (n == 60)
      reg.add(alternating_group(5));
    by_order[n] = reg.groups();
    std::cerr << "order " << n << ": " << by_order[n].size() << " groups\n";
  }

  std::ostream *os = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    os = &file;
  }
  *os << "# Groups of order 1.." << bound << ", one per isomorphism class";
  for (auto s : skip)
    *os << ", order " << s << " omitted";
  *os << ".\n# Regenerate with gen-catalog.\n\n";
  for (const auto &[n, groups] : by_order) {
    if (std::find(skip.begin(), skip.end(), n) != skip.end())
      continue;
    int k = 0;
    for (const auto &g : groups) {
      ++k;
      const Known *match = nullptr;
      for (const auto &kn : known)
        if (kn.group.order() == g.order() && are_isomorphic(kn.group, g)) {
          match = &kn;
          break;
        }
      if (match)
        *os << "group " << match->name << " construct " << match->recipe << "\nend\n";
      else
        *os << perm_block("G" + std::to_string(n) + "_" + std::to_string(k), g);
    }
  }
  return 0;
}
