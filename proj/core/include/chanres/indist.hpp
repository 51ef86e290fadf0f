#pragma once

// The indistinguishability relation: adjacent swaps that no FIFO
// point-to-point observer can detect, and closure under them.

#include <cstddef>
#include <set>
#include <vector>

#include "chanres/events.hpp"

namespace chanres {

struct SwapRule {
  /// 1: two sends of distinct senders. 2: two receives of distinct
  /// receivers. 3: a send and a receive on unrelated endpoints. 4: a send
  /// and a receive on one channel that already holds a message.
  int rule_id = 0;
  /// Index of the left event of the swapped pair (0-based).
  std::size_t position = 0;

  auto operator<=>(const SwapRule&) const = default;
};

/// Legal swaps of adjacent pairs in w, in either direction of each rule.
std::vector<SwapRule> legal_swaps(const Word& w);
Word apply_swap(const Word& w, const SwapRule& s);
std::set<Word> one_step_neighbors(const Word& w);

inline constexpr std::size_t kDefaultClosureBudget = 2'000'000;

/// Saturates `words` under one_step_neighbors. Swaps keep length, so every
/// member stays within `max_len` when the inputs do. Throws BudgetExceeded
/// when more than `budget` words would be produced.
std::set<Word> closure(const std::set<Word>& words, std::size_t max_len,
                       std::size_t budget = kDefaultClosureBudget);

bool equiv_mod_indist(const std::set<Word>& a, const std::set<Word>& b,
                      std::size_t budget = kDefaultClosureBudget);

}  // namespace chanres
