#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pigp/automorphisms.hpp"
#include "pigp/catalog.hpp"

namespace pigp {

struct VerifyOptions {
  std::int64_t p = 3;
  std::size_t max_order = 100;
  std::uint64_t aut_budget = kDefaultAutBudget;
};

struct VerifyReport {
  std::string suite;
  std::size_t checks = 0;
  /// Groups skipped because a bounded search gave up.
  std::vector<std::string> skipped;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

/// Suites: shafarevich, abelian-cross, n-independence, props, complement.
/// Throws UsageError for an unknown suite name.
VerifyReport run_verify_suite(const std::string &suite, std::span<const CatalogEntry> catalog,
                              const VerifyOptions &opts);

std::vector<std::string> verify_suite_names();

} // namespace pigp
