#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ecg/edit_model.hpp"
#include "ecg/errors.hpp"

namespace ecg {

// Biochemical window constraints on generated suffixes.
//   run_max      inclusive bound on homopolymer run length
//   gc_balance   bound on each base-class share of the window, in [0.5, 1]
//   context_len  window history length L1 (trailing committed characters)
//   augment_len  suffix length L2 produced per growth step
// Both the G/C count and the A/T count of the window are capped at
// floor(gc_balance * (L1 + L2)); 0.5 asks exact balance, 1.0 disables the
// cap. The cap uses the nominal window even while the sequence is still
// shorter than L1.
struct ConstraintSpec {
  int run_max = 3;
  double gc_balance = 1.0;
  int context_len = 0;
  int augment_len = 1;
};

inline void validate_constraints(const ConstraintSpec& c) {
  if (c.run_max < 1) throw ProfileError("run bound must be >= 1");
  if (!(c.gc_balance >= 0.5 && c.gc_balance <= 1.0)) {
    throw ProfileError("gc balance must lie in [0.5, 1.0]");
  }
  if (c.context_len < 0) throw ProfileError("context length must be >= 0");
  if (c.augment_len < 1) throw ProfileError("augment length must be >= 1");
}

inline bool is_gc(char c) { return c == 'G' || c == 'C'; }

// Building blocks: every homopolymer c^k with 1 <= k <= run_max.
inline std::vector<std::string> homopolymer_blocks(int run_max) {
  if (run_max < 1) throw ProfileError("run bound must be >= 1");
  std::vector<std::string> blocks;
  for (char c : kAlphabet) {
    for (int k = 1; k <= run_max; ++k) {
      blocks.emplace_back(static_cast<std::size_t>(k), c);
    }
  }
  return blocks;
}

namespace detail {

struct WindowItem {
  std::string text;  // context tail plus appended characters
  int gc = 0;
  int at = 0;
  int tail_run = 0;
};

inline WindowItem seed_item(std::string_view context_tail) {
  WindowItem item;
  item.text.assign(context_tail);
  for (char c : context_tail) {
    if (is_gc(c)) {
      ++item.gc;
    } else {
      ++item.at;
    }
  }
  std::size_t r = 0;
  while (r < context_tail.size() &&
         context_tail[context_tail.size() - 1 - r] == context_tail.back()) {
    ++r;
  }
  item.tail_run = static_cast<int>(r);
  return item;
}

}  // namespace detail

// All length-L2 suffixes whose window (context tail + suffix) satisfies the
// run and balance constraints, grown breadth-first from homopolymer blocks
// with prefix pruning. Result is duplicate-free, ascending. Empty when the
// constraints admit nothing.
inline std::vector<std::string> generate_candidates(
    std::string_view context_tail, const ConstraintSpec& spec) {
  validate_constraints(spec);
  require_sequence(context_tail);
  if (context_tail.size() > static_cast<std::size_t>(spec.context_len)) {
    throw ProfileError("context tail longer than the context window");
  }
  const int window = spec.context_len + spec.augment_len;
  // Epsilon absorbs binary representation error: 0.6*5 must floor to 3.
  const int cap = static_cast<int>(
      std::floor(spec.gc_balance * static_cast<double>(window) + 1e-9));
  const std::size_t target = context_tail.size() +
                             static_cast<std::size_t>(spec.augment_len);

  const std::vector<std::string> blocks = homopolymer_blocks(spec.run_max);
  std::set<std::string> emitted;
  std::set<std::string> seen;  // block splits alias window prefixes
  std::deque<detail::WindowItem> queue;
  queue.push_back(detail::seed_item(context_tail));
  while (!queue.empty()) {
    detail::WindowItem item = std::move(queue.front());
    queue.pop_front();
    for (const auto& block : blocks) {
      if (item.text.size() + block.size() > target) continue;
      const int len = static_cast<int>(block.size());
      const bool same = !item.text.empty() && item.text.back() == block[0];
      if (same && item.tail_run + len > spec.run_max) continue;
      const int gc = item.gc + (is_gc(block[0]) ? len : 0);
      const int at = item.at + (is_gc(block[0]) ? 0 : len);
      if (gc > cap || at > cap) continue;
      detail::WindowItem next;
      next.text = item.text + block;
      next.gc = gc;
      next.at = at;
      next.tail_run = same ? item.tail_run + len : len;
      if (next.text.size() == target) {
        emitted.insert(next.text.substr(context_tail.size()));
      } else if (seen.insert(next.text).second) {
        queue.push_back(std::move(next));
      }
    }
  }
  return {emitted.begin(), emitted.end()};
}

}  // namespace ecg
