#pragma once

// Backtracking search for injective homomorphisms G -> H defined by the
// images of a fixed generating set of G. Shared by isomorphism testing and
// automorphism group computation.

#include <cstdint>
#include <string>
#include <vector>

#include "pigp/errors.hpp"
#include "pigp/group.hpp"

namespace pigp::detail {

/// Per-element invariant: order plus class sizes of all powers x^d, d | ord(x).
/// Injective homomorphisms between groups of equal order preserve it.
std::vector<std::uint64_t> element_signatures(const Group &g);

class InjectiveHomSearch {
public:
  InjectiveHomSearch(const Group &g, const Group &h, std::vector<Index> gens,
                     std::vector<std::vector<Index>> candidates, std::uint64_t node_budget)
      : g_(g), h_(h), gens_(std::move(gens)), candidates_(std::move(candidates)),
        budget_(node_budget), img_(g.order(), kUnset), used_(h.order(), 0) {
    img_[0] = 0;
    used_[0] = 1;
    dom_.push_back(0);
  }

  /// Calls on_found(image_table) for every injective homomorphism; stops when
  /// it returns false. Returns false if stopped early.
  template <class F> bool run(F &&on_found) { return descend(0, on_found); }

  std::uint64_t nodes() const { return nodes_; }

private:
  static constexpr Index kUnset = ~Index{0};

  template <class F> bool descend(std::size_t level, F &on_found) {
    if (level == gens_.size())
      return on_found(img_);
    for (auto c : candidates_[level]) {
      if (++nodes_ > budget_)
        throw CapacityError("homomorphism search exceeded node budget of " +
                            std::to_string(budget_) + " for group '" + g_.name() + "'");
      if (used_[c])
        continue;
      const std::size_t mark = dom_.size();
      if (extend(level, c)) {
        if (!descend(level + 1, on_found)) {
          undo(mark);
          return false;
        }
      }
      undo(mark);
    }
    return true;
  }

  bool extend(std::size_t level, Index c) {
    chosen_.resize(level + 1);
    chosen_[level] = c;
    queue_.assign(dom_.begin(), dom_.end());
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      const Index x = queue_[head];
      for (std::size_t j = 0; j <= level; ++j) {
        const Index y = g_.mul(x, gens_[j]);
        const Index iy = h_.mul(img_[x], chosen_[j]);
        if (img_[y] == kUnset) {
          if (used_[iy])
            return false;
          img_[y] = iy;
          used_[iy] = 1;
          dom_.push_back(y);
          queue_.push_back(y);
        } else if (img_[y] != iy) {
          return false;
        }
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (dom_.size() > mark) {
      const Index x = dom_.back();
      dom_.pop_back();
      used_[img_[x]] = 0;
      img_[x] = kUnset;
    }
  }

  const Group &g_;
  const Group &h_;
  std::vector<Index> gens_;
  std::vector<std::vector<Index>> candidates_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<Index> img_;
  std::vector<std::uint8_t> used_;
  std::vector<Index> dom_;
  std::vector<Index> queue_;
  std::vector<Index> chosen_;
};

/// Candidate images in h for each generator of g: equal signature.
std::vector<std::vector<Index>> signature_candidates(const Group &g, std::span<const Index> gens,
                                                     const Group &h);

} // namespace pigp::detail
