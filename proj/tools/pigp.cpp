#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <thread>

#include "pigp/analysis.hpp"
#include "pigp/catalog.hpp"
#include "pigp/construct.hpp"
#include "pigp/counting.hpp"
#include "pigp/errors.hpp"
#include "pigp/numtheory.hpp"
#include "pigp/potential.hpp"
#include "pigp/realizability.hpp"
#include "pigp/verify.hpp"

using namespace pigp;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kVerifyFail = 1, kCapacity = 2, kInput = 3 };

struct RunConfig {
  std::int64_t p = 3;
  std::vector<std::string> catalogs;
  std::string group;
  std::size_t max_order = 60;
  std::string method = "auto";
  std::string json_path;
  std::string format = "json";
  std::uint64_t aut_budget = kDefaultAutBudget;
  std::optional<std::int64_t> h_seed;
  bool dual_lift = false;
  std::optional<std::int64_t> tame_order;
  bool realizability = false;
  bool require_complete = false;
  std::string suite;
};

std::vector<CatalogEntry> load_all(const RunConfig &cfg, bool required) {
  std::vector<std::string> paths = cfg.catalogs;
  if (paths.empty()) {
    const auto def = default_catalog_path();
    if (!std::ifstream(def)) {
      if (required)
        throw ParseError("bundled catalog not found at '" + def + "'");
      return {};
    }
    paths.push_back(def);
  }
  std::vector<CatalogEntry> all;
  for (const auto &path : paths) {
    auto part = load_catalog(path);
    for (auto &e : part) {
      for (const auto &prev : all)
        if (prev.name == e.name)
          throw ParseError("group name '" + e.name + "' appears in more than one catalog");
      all.push_back(std::move(e));
    }
  }
  return all;
}

void check_prime(std::int64_t p) {
  if (p < 3 || !nt::is_prime(p))
    throw UsageError("-p must be an odd prime");
}

CountOptions count_options(const RunConfig &cfg) {
  CountOptions o;
  o.method = parse_method(cfg.method);
  o.aut_budget = cfg.aut_budget;
  o.h_seed = cfg.h_seed;
  o.dual_lift = cfg.dual_lift;
  return o;
}

std::string csv_cell(const json &v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos)
    return s;
  std::string q = "\"";
  for (char c : s)
    q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string to_csv(const std::vector<json> &rows) {
  std::vector<std::string> keys;
  for (const auto &r : rows)
    for (auto it = r.begin(); it != r.end(); ++it)
      if (std::find(keys.begin(), keys.end(), it.key()) == keys.end())
        keys.push_back(it.key());
  std::string out;
  for (std::size_t i = 0; i < keys.size(); ++i)
    out += (i ? "," : "") + keys[i];
  out += "\n";
  for (const auto &r : rows) {
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (i)
        out += ",";
      if (r.contains(keys[i]))
        out += csv_cell(r[keys[i]]);
    }
    out += "\n";
  }
  return out;
}

/// JSON: one document per row (JSON lines) unless single; CSV: flattened rows.
void emit(const RunConfig &cfg, const std::vector<json> &rows, bool single) {
  std::string text;
  if (cfg.format == "csv") {
    text = to_csv(rows);
  } else if (single && rows.size() == 1) {
    text = rows[0].dump(2) + "\n";
  } else {
    for (const auto &r : rows)
      text += r.dump() + "\n";
  }
  std::cout << text;
  if (!cfg.json_path.empty()) {
    std::ofstream f(cfg.json_path);
    if (!f)
      throw UsageError("cannot write '" + cfg.json_path + "'");
    f << text;
  }
}

int cmd_count(const RunConfig &cfg) {
  check_prime(cfg.p);
  if (cfg.group.empty())
    throw UsageError("count needs --group");
  const auto cat = load_all(cfg, false);
  const auto g = resolve_selector(cfg.group, cat);
  Counter counter(count_options(cfg));
  auto r = counter.count(g, cfg.p);
  r.group = cfg.group;
  std::cerr << "count " << cfg.group << " p=" << cfg.p << ": " << r.count << " in " << r.millis
            << " ms\n";
  emit(cfg, {to_json(r)}, true);
  return kOk;
}

json verdict_json(const std::string &name, const Group &g, std::int64_t p) {
  const auto v = is_potentially_realizable(g, p);
  json out{{"group", name},
           {"order", g.order()},
           {"p", p},
           {"potentially_realizable", v.potentially_realizable},
           {"cyclic_tame_quotient", v.cyclic_tame_quotient}};
  if (v.witness)
    out["witness"] = {{"g0_order", v.witness->g0.size()},
                      {"g1_order", v.witness->g1.size()},
                      {"sigma", v.witness->sigma},
                      {"tau", v.witness->tau}};
  else
    out["witness"] = nullptr;
  return out;
}

int cmd_potential(const RunConfig &cfg) {
  check_prime(cfg.p);
  std::vector<json> rows;
  if (cfg.tame_order) {
    if (*cfg.tame_order < 1 || *cfg.tame_order > static_cast<std::int64_t>(kMaxOrder))
      throw UsageError("--tame-order out of range");
    for (const auto &g : tame_potential_groups(*cfg.tame_order, cfg.p))
      rows.push_back(verdict_json(g.name(), g, cfg.p));
  } else if (!cfg.group.empty()) {
    const auto cat = load_all(cfg, false);
    rows.push_back(verdict_json(cfg.group, resolve_selector(cfg.group, cat), cfg.p));
  } else {
    for (const auto &e : load_all(cfg, true))
      if (e.group.order() <= cfg.max_order)
        rows.push_back(verdict_json(e.name, e.group, cfg.p));
  }
  emit(cfg, rows, !cfg.group.empty());
  return kOk;
}

unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char *env = std::getenv("PIGP_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1)
      n = std::min<unsigned>(n, static_cast<unsigned>(v));
  }
  return n;
}

int cmd_survey(const RunConfig &cfg) {
  check_prime(cfg.p);
  const auto all = load_all(cfg, true);
  std::vector<const CatalogEntry *> work;
  for (const auto &e : all)
    if (e.group.order() <= cfg.max_order)
      work.push_back(&e);

  std::vector<json> rows(work.size());
  std::vector<std::optional<std::uint64_t>> counts(work.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> capacity{false};
  std::mutex log;
  auto worker = [&] {
    Counter counter(count_options(cfg));
    for (std::size_t i = next++; i < work.size(); i = next++) {
      const auto &e = *work[i];
      try {
        if (cfg.realizability) {
          const auto scan = realizability_scan(std::span(work[i], 1), cfg.p, cfg.max_order, counter);
          if (scan.empty()) {
            rows[i] = {{"group", e.name}, {"order", e.group.order()},
                       {"potentially_realizable", false}, {"count", 0}};
            counts[i] = 0;
          } else {
            rows[i] = to_json(scan[0]);
            counts[i] = scan[0].count;
          }
        } else {
          const auto r = counter.count(e.group, cfg.p);
          rows[i] = {{"group", e.name},
                     {"order", e.group.order()},
                     {"p", cfg.p},
                     {"method", r.method},
                     {"potentially_realizable", r.potentially_realizable},
                     {"count", r.count},
                     {"millis", r.millis}};
          counts[i] = r.count;
        }
      } catch (const CapacityError &err) {
        capacity = true;
        rows[i] = {{"group", e.name}, {"order", e.group.order()}, {"error", err.what()}};
      }
      std::lock_guard lock(log);
      std::cerr << "survey " << e.name << " done\n";
    }
  };
  std::vector<std::thread> pool;
  const unsigned nthreads = std::min<std::size_t>(worker_count(), std::max<std::size_t>(1, work.size()));
  for (unsigned t = 0; t < nthreads; ++t)
    pool.emplace_back(worker);
  for (auto &t : pool)
    t.join();

  // f(n) = number of groups with count >= n, listed at each distinct count.
  std::map<std::uint64_t, std::size_t> at;
  for (const auto &c : counts)
    if (c && *c > 0)
      ++at[*c];
  json hist = json::array();
  std::size_t above = 0;
  for (auto it = at.rbegin(); it != at.rend(); ++it) {
    above += it->second;
    hist.push_back({{"n", it->first}, {"f", above}});
  }
  std::reverse(hist.begin(), hist.end());
  if (cfg.format != "csv")
    rows.push_back({{"histogram", hist}, {"groups", work.size()}, {"p", cfg.p}});
  emit(cfg, rows, false);
  return capacity ? kCapacity : kOk;
}

int cmd_verify(const RunConfig &cfg) {
  check_prime(cfg.p);
  const auto cat = load_all(cfg, false);
  VerifyOptions o{cfg.p, cfg.max_order, cfg.aut_budget};
  const auto r = run_verify_suite(cfg.suite, cat, o);
  json out{{"suite", r.suite},     {"p", cfg.p},           {"max_order", cfg.max_order},
           {"checks", r.checks},   {"passed", r.passed()}, {"failures", r.failures},
           {"skipped", r.skipped}};
  for (const auto &f : r.failures)
    std::cerr << "FAIL " << f << "\n";
  emit(cfg, {out}, true);
  return r.passed() ? kOk : kVerifyFail;
}

// Number of groups of each order 1..60.
constexpr std::array<int, 60> kGroupCounts{1, 1,  1, 2, 1, 2,  1, 5, 2, 2,  1, 5,  1, 2, 1,
                                           14, 1, 5, 1, 5, 2, 2,  1, 15, 2, 2, 5,  4, 1, 4,
                                           1, 51, 1, 2, 1, 14, 1, 2,  2, 14, 1, 6,  1, 4, 2,
                                           2, 1,  52, 2, 5, 1, 5,  1, 15, 2, 13, 2, 2, 1, 13};

int cmd_catalog_check(const RunConfig &cfg) {
  const auto cat = load_all(cfg, true);
  std::map<std::size_t, std::vector<const CatalogEntry *>> by_order;
  for (const auto &e : cat)
    by_order[e.group.order()].push_back(&e);
  json duplicates = json::array();
  json orders = json::array();
  bool complete = true;
  for (const auto &[n, list] : by_order) {
    for (std::size_t i = 0; i < list.size(); ++i)
      for (std::size_t j = i + 1; j < list.size(); ++j)
        if (fingerprint(list[i]->group) == fingerprint(list[j]->group) &&
            are_isomorphic(list[i]->group, list[j]->group))
          duplicates.push_back({list[i]->name, list[j]->name});
    json row{{"order", n}, {"groups", list.size()}};
    if (n <= kGroupCounts.size()) {
      row["expected"] = kGroupCounts[n - 1];
      complete = complete && static_cast<int>(list.size()) == kGroupCounts[n - 1];
    }
    orders.push_back(row);
  }
  json out{{"entries", cat.size()},
           {"orders", orders},
           {"duplicates", duplicates},
           {"complete", complete}};
  emit(cfg, {out}, true);
  if (!duplicates.empty() || (cfg.require_complete && !complete))
    return kVerifyFail;
  return kOk;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Count Galois extensions of Q_p with a given group"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App *sub) {
    sub->add_option("-p", cfg.p, "odd prime")->capture_default_str();
    sub->add_option("--catalog", cfg.catalogs, "catalog file (repeatable)");
    sub->add_option("--max-order", cfg.max_order, "largest group order")->capture_default_str();
    sub->add_option("--json", cfg.json_path, "also write the output to this file");
    sub->add_option("--format", cfg.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    sub->add_option("--aut-budget", cfg.aut_budget, "automorphism search node budget")
        ->check(CLI::PositiveNumber);
  };

  auto *count = app.add_subcommand("count", "count extensions with group G");
  common(count);
  count->add_option("--group", cfg.group, "catalog name or recipe")->required();
  count->add_option("--method", cfg.method, "auto|abelian|tame|lifting")->capture_default_str();
  count->add_option("--h-seed", cfg.h_seed, "alternative seed for the root of unity h");
  count->add_flag("--debug-dual-lift", cfg.dual_lift, "also count with x0/x1 sources swapped");

  auto *potential = app.add_subcommand("potential", "potential realizability verdicts");
  common(potential);
  potential->add_option("--group", cfg.group, "catalog name or recipe");
  potential->add_option("--tame-order", cfg.tame_order, "list tame metacyclic groups of this order");

  auto *survey = app.add_subcommand("survey", "count every catalog group up to --max-order");
  common(survey);
  survey->add_option("--method", cfg.method, "auto|abelian|tame|lifting")->capture_default_str();
  survey->add_flag("--realizability", cfg.realizability,
                   "emit module decomposition, predicates and minimality per group");

  auto *verify = app.add_subcommand("verify", "run a cross-check suite");
  common(verify);
  verify->add_option("suite", cfg.suite, "suite name")
      ->required()
      ->check(CLI::IsMember(verify_suite_names()));

  auto *catalog = app.add_subcommand("catalog", "catalog utilities");
  auto *check = catalog->add_subcommand("check", "parse, deduplicate and count catalog groups");
  catalog->require_subcommand(1);
  check->add_option("--catalog", cfg.catalogs, "catalog file (repeatable)");
  check->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  check->add_option("--json", cfg.json_path, "also write the output to this file");
  check->add_flag("--require-complete", cfg.require_complete,
                  "fail unless every order has the full number of groups");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (*count)
      return cmd_count(cfg);
    if (*potential)
      return cmd_potential(cfg);
    if (*survey)
      return cmd_survey(cfg);
    if (*verify)
      return cmd_verify(cfg);
    if (*check)
      return cmd_catalog_check(cfg);
  } catch (const CapacityError &e) {
    std::cerr << "capacity: " << e.what() << "\n";
    return kCapacity;
  } catch (const ParseError &e) {
    std::cerr << "input: " << e.what() << "\n";
    return kInput;
  } catch (const UsageError &e) {
    std::cerr << "input: " << e.what() << "\n";
    return kInput;
  } catch (const PreconditionError &e) {
    std::cerr << "input: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}
