#include "pigp/catalog.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "pigp/construct.hpp"
#include "pigp/errors.hpp"

namespace pigp {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
      ++i;
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])))
      ++i;
    if (i > start)
      out.push_back(s.substr(start, i - start));
  }
  return out;
}

std::int64_t to_int(std::string_view s, int line) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError("expected an integer, got '" + std::string(s) + "'", line);
  return v;
}

/// Parsed recipe argument: integer, bracketed list, or a (possibly nested) term.
struct Term {
  enum Kind { Int, List, Call } kind = Call;
  std::int64_t value = 0;
  std::vector<std::int64_t> list;
  std::string head;
  std::vector<Term> args;
  bool has_parens = false;
};

class RecipeParser {
public:
  explicit RecipeParser(std::string_view s) : s_(s) {}

  Term parse() {
    auto t = term();
    skip();
    if (pos_ != s_.size())
      fail("trailing characters");
    return t;
  }

private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }
  [[noreturn]] void fail(const std::string &what) const {
    throw ParseError("recipe '" + std::string(s_) + "': " + what + " at offset " +
                     std::to_string(pos_));
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  void expect(char c) {
    if (!peek(c))
      fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  std::int64_t integer() {
    skip();
    const std::size_t start = pos_;
    if (pos_ < s_.size() && s_[pos_] == '-')
      ++pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, v);
    if (ec != std::errc() || ptr != s_.data() + pos_)
      fail("bad integer");
    return v;
  }

  Term term() {
    skip();
    if (pos_ >= s_.size())
      fail("unexpected end");
    Term t;
    const char c = s_[pos_];
    if (c == '[') {
      ++pos_;
      t.kind = Term::List;
      while (!peek(']')) {
        t.list.push_back(integer());
        if (peek(','))
          ++pos_;
      }
      ++pos_;
      return t;
    }
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      t.kind = Term::Int;
      t.value = integer();
      return t;
    }
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
                                s_[pos_] == '_' || s_[pos_] == '.' || s_[pos_] == '-'))
      ++pos_;
    if (pos_ == start)
      fail("expected a name");
    t.head = std::string(s_.substr(start, pos_ - start));
    if (peek('(')) {
      ++pos_;
      t.has_parens = true;
      if (!peek(')'))
        for (;;) {
          t.args.push_back(term());
          if (peek(',')) {
            ++pos_;
            continue;
          }
          break;
        }
      expect(')');
    }
    return t;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

std::int64_t int_arg(const Term &t) {
  if (t.kind != Term::Int)
    throw ParseError("expected an integer argument to '" + t.head + "'");
  return t.value;
}

Group evaluate(const Term &t, const std::map<std::string, Group> &known);

std::vector<std::int64_t> int_args(const Term &t, std::size_t from = 0) {
  std::vector<std::int64_t> out;
  for (std::size_t i = from; i < t.args.size(); ++i)
    out.push_back(int_arg(t.args[i]));
  return out;
}

void arity(const Term &t, std::size_t n) {
  if (t.args.size() != n)
    throw ParseError("'" + t.head + "' takes " + std::to_string(n) + " arguments");
}

std::int64_t checked_order(std::int64_t n, const std::string &what) {
  if (n < 1 || n > static_cast<std::int64_t>(kMaxOrder))
    throw ParseError(what + ": order outside 1.." + std::to_string(kMaxOrder));
  return n;
}

Group evaluate(const Term &t, const std::map<std::string, Group> &known) {
  if (t.kind != Term::Call)
    throw ParseError("expected a group, got a number or list");
  const auto &h = t.head;
  if (!t.has_parens) {
    if (auto it = known.find(h); it != known.end())
      return it->second;
    if (h == "quaternion8")
      return quaternion8();
    if (h == "trivial")
      return Group();
    throw ParseError("unknown group '" + h + "'");
  }
  if (h == "cyclic") {
    arity(t, 1);
    return cyclic_group(checked_order(int_arg(t.args[0]), h));
  }
  if (h == "abelian") {
    auto f = int_args(t);
    std::int64_t n = 1;
    for (auto x : f) {
      if (x < 1)
        throw ParseError("abelian: factors must be positive");
      n *= x;
      checked_order(n, h);
    }
    std::vector<std::int64_t> kept;
    for (auto x : f)
      if (x > 1)
        kept.push_back(x);
    return abelian_group(kept);
  }
  if (h == "elementary") {
    arity(t, 2);
    const auto p = int_arg(t.args[0]);
    const auto k = int_arg(t.args[1]);
    std::int64_t n = 1;
    for (std::int64_t i = 0; i < k; ++i)
      n = checked_order(n * p, h);
    return elementary_abelian(p, static_cast<int>(k));
  }
  if (h == "direct") {
    arity(t, 2);
    const auto a = evaluate(t.args[0], known);
    const auto b = evaluate(t.args[1], known);
    checked_order(static_cast<std::int64_t>(a.order() * b.order()), h);
    return direct_product(a, b);
  }
  if (h == "semidirect") {
    if (t.args.size() < 2)
      throw ParseError("semidirect needs V, T and one action per generator of T");
    const auto v = evaluate(t.args[0], known);
    const auto tg = evaluate(t.args[1], known);
    checked_order(static_cast<std::int64_t>(v.order() * tg.order()), h);
    if (t.args.size() - 2 != tg.generators().size())
      throw ParseError("semidirect: T has " + std::to_string(tg.generators().size()) +
                       " generators but " + std::to_string(t.args.size() - 2) +
                       " actions were given");
    std::vector<std::vector<Index>> acts;
    for (std::size_t i = 2; i < t.args.size(); ++i) {
      const auto &a = t.args[i];
      std::vector<Index> table(v.order());
      if (a.kind == Term::List) {
        if (a.list.size() != v.order())
          throw ParseError("semidirect: action list must have one image per element of V");
        for (std::size_t x = 0; x < v.order(); ++x) {
          if (a.list[x] < 0 || a.list[x] >= static_cast<std::int64_t>(v.order()))
            throw ParseError("semidirect: image out of range");
          table[x] = static_cast<Index>(a.list[x]);
        }
      } else if (a.kind == Term::Call && a.head == "scalar") {
        arity(a, 1);
        if (!v.is_abelian())
          throw ParseError("semidirect: scalar action needs an abelian V");
        for (Index x = 0; x < v.order(); ++x)
          table[x] = v.pow(x, int_arg(a.args[0]));
      } else {
        throw ParseError("semidirect: action must be a list or scalar(k)");
      }
      acts.push_back(std::move(table));
    }
    try {
      return semidirect_product(v, tg, acts);
    } catch (const PreconditionError &e) {
      throw ParseError(std::string("semidirect: ") + e.what());
    }
  }
  if (h == "metacyclic") {
    arity(t, 4);
    const auto a = int_args(t);
    if (a[0] < 1 || a[1] < 1)
      throw ParseError("metacyclic: k and m must be positive");
    checked_order(a[0] * a[1], h);
    auto g = metacyclic_group(a[0], a[1], a[2], a[3]);
    if (!g)
      throw ParseError("metacyclic: inconsistent parameters");
    return *g;
  }
  if (h == "heisenberg") {
    arity(t, 1);
    const auto p = int_arg(t.args[0]);
    if (p < 2 || p > 16)
      throw ParseError("heisenberg: prime out of range");
    return heisenberg(p);
  }
  if (h == "dihedral") {
    arity(t, 1);
    const auto m = int_arg(t.args[0]);
    if (m < 2)
      throw ParseError("dihedral: m must be at least 2");
    checked_order(2 * m, h);
    return dihedral(m);
  }
  if (h == "gdihedral") {
    arity(t, 2);
    const auto p = int_arg(t.args[0]);
    const auto k = int_arg(t.args[1]);
    std::int64_t n = 2;
    for (std::int64_t i = 0; i < k; ++i)
      n = checked_order(n * p, h);
    return generalized_dihedral(p, static_cast<int>(k));
  }
  if (h == "symmetric" || h == "alternating") {
    arity(t, 1);
    const auto d = int_arg(t.args[0]);
    if (d < 1 || d > 6)
      throw ParseError(h + ": degree must be between 1 and 6");
    return h == "symmetric" ? symmetric_group(static_cast<int>(d))
                            : alternating_group(static_cast<int>(d));
  }
  throw ParseError("unknown recipe '" + h + "'");
}

} // namespace

Group resolve_recipe(std::string_view recipe, const std::map<std::string, Group> &known) {
  return evaluate(RecipeParser(trim(recipe)).parse(), known);
}

std::vector<CatalogEntry> parse_catalog(std::string_view text) {
  std::vector<CatalogEntry> out;
  std::map<std::string, Group> known;
  std::set<std::string> names;

  enum class State { Outside, Perm, Construct } state = State::Outside;
  CatalogEntry cur;
  std::int64_t degree = 0;
  std::vector<std::vector<std::uint32_t>> perms;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos)
      nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty())
      continue;
    const auto w = words(line);

    if (state == State::Outside) {
      if (w[0] != "group" || w.size() < 3)
        throw ParseError("expected 'group <name> perm|construct ...'", line_no);
      cur = CatalogEntry{};
      cur.name = std::string(w[1]);
      cur.line = line_no;
      if (!names.insert(cur.name).second)
        throw ParseError("duplicate group name '" + cur.name + "'", line_no);
      if (w[2] == "perm") {
        if (w.size() != 4)
          throw ParseError("expected 'group <name> perm <degree>'", line_no);
        degree = to_int(w[3], line_no);
        if (degree < 1 || degree > 100000)
          throw ParseError("degree out of range", line_no);
        perms.clear();
        state = State::Perm;
      } else if (w[2] == "construct") {
        const auto at = line.find("construct");
        cur.recipe = std::string(trim(line.substr(at + 9)));
        if (cur.recipe.empty())
          throw ParseError("missing recipe", line_no);
        try {
          cur.group = resolve_recipe(cur.recipe, known).renamed(cur.name);
        } catch (const ParseError &e) {
          throw ParseError(e.what(), line_no);
        }
        state = State::Construct;
      } else {
        throw ParseError("unknown group kind '" + std::string(w[2]) + "'", line_no);
      }
      continue;
    }

    if (w[0] == "end") {
      if (w.size() != 1)
        throw ParseError("unexpected tokens after 'end'", line_no);
      if (state == State::Perm) {
        try {
          cur.group = permutation_group(perms, cur.name);
        } catch (const CapacityError &e) {
          throw ParseError(e.what(), cur.line);
        }
      }
      if (!verify_group_axioms(cur.group))
        throw ParseError("group '" + cur.name + "' fails the group axioms", cur.line);
      known.emplace(cur.name, cur.group);
      out.push_back(std::move(cur));
      state = State::Outside;
      continue;
    }
    if (state == State::Construct)
      throw ParseError("expected 'end'", line_no);
    if (w[0] != "gen")
      throw ParseError("expected 'gen' or 'end'", line_no);
    if (static_cast<std::int64_t>(w.size()) - 1 != degree)
      throw ParseError("generator has " + std::to_string(w.size() - 1) + " images, degree is " +
                           std::to_string(degree),
                       line_no);
    std::vector<std::uint32_t> perm(static_cast<std::size_t>(degree));
    std::vector<char> hit(static_cast<std::size_t>(degree), 0);
    for (std::int64_t i = 0; i < degree; ++i) {
      const auto img = to_int(w[i + 1], line_no);
      if (img < 1 || img > degree || hit[img - 1])
        throw ParseError("generator images are not a permutation", line_no);
      hit[img - 1] = 1;
      perm[i] = static_cast<std::uint32_t>(img - 1);
    }
    perms.push_back(std::move(perm));
  }
  if (state != State::Outside)
    throw ParseError("missing 'end' for group '" + cur.name + "'", cur.line);
  return out;
}

std::vector<CatalogEntry> load_catalog(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ParseError("cannot open catalog '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_catalog(ss.str());
}

std::string perm_block(const std::string &name, const Group &g) {
  std::ostringstream os;
  const auto &stored = g.permutation_generators();
  if (!stored.empty()) {
    os << "group " << name << " perm " << stored.front().size() << "\n";
    for (const auto &perm : stored) {
      os << "gen";
      for (auto x : perm)
        os << ' ' << x + 1;
      os << "\n";
    }
  } else {
    // Right regular representation: x -> x s.
    os << "group " << name << " perm " << g.order() << "\n";
    for (auto s : g.generators()) {
      os << "gen";
      for (Index x = 0; x < g.order(); ++x)
        os << ' ' << g.mul(x, s) + 1;
      os << "\n";
    }
  }
  os << "end\n";
  return os.str();
}

std::string serialize_catalog(std::span<const CatalogEntry> entries) {
  std::string out;
  for (const auto &e : entries) {
    if (!e.recipe.empty())
      out += "group " + e.name + " construct " + e.recipe + "\nend\n";
    else
      out += perm_block(e.name, e.group);
  }
  return out;
}

Group resolve_selector(const std::string &selector, std::span<const CatalogEntry> catalog) {
  for (const auto &e : catalog)
    if (e.name == selector)
      return e.group;
  std::map<std::string, Group> known;
  for (const auto &e : catalog)
    known.emplace(e.name, e.group);
  return resolve_recipe(selector, known);
}

std::string default_catalog_path() {
  if (const char *env = std::getenv("PIGP_CATALOG"))
    return env;
  return PIGP_DEFAULT_CATALOG;
}

} // namespace pigp
