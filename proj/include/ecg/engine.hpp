#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ecg/edit_model.hpp"
#include "ecg/errors.hpp"
#include "ecg/fec_set.hpp"

namespace ecg {

// Banded DP state for one ordered sequence pair.
//
// Node (i,j) holds the FEC set for turning the length-i prefix of s1 into
// the length-j prefix of s2. Outgoing edges of (i,j) are keyed on the next
// characters: equal next characters admit only the free match edge to
// (i+1,j+1); otherwise sub/del/ins edges apply, charging every matching op.
// A missing next character (sequence end) counts as a mismatch.
//
// Nodes are grouped by level max(i,j) and clipped to |i-j| <= q, the band
// half-width. Two rolling rows hold the last two levels; within a level,
// cells are visited arms-outside-in, center last, so same-level del/ins
// sources are ready when read.
//
// Edges into level m read one character past the level (the del edge into
// (i,m) is keyed on s2[m], and symmetrically), so extend() completes levels
// only up to i1-1 and the final level is evaluated lazily by the terminal
// query, where the one-past-the-end key falls on the sequence boundary.
class PairState {
 public:
  // kernel must outlive the state. band_half_width defaults to the
  // profile's ins/del bound; tests may widen it.
  explicit PairState(const TransitionKernel& kernel)
      : PairState(kernel, kernel.profile.band) {}
  PairState(const TransitionKernel& kernel, std::size_t band_half_width)
      : kernel_(&kernel), q_(band_half_width) {
    const std::size_t width = 2 * q_ + 1;
    rows_[0].assign(width, FecSet(kernel_->profile.length));
    rows_[1].assign(width, FecSet(kernel_->profile.length));
    rows_[0][q_].set(0);  // origin holds the zero tuple
  }

  std::size_t consumed() const { return consumed_; }
  std::size_t band_half_width() const { return q_; }
  std::uint64_t visits() const { return visits_; }

  // Ingests characters [i0, i1) of both sequences and completes all levels
  // through i1-1. i0 must equal consumed().
  void extend(std::string_view s1, std::string_view s2, std::size_t i0,
              std::size_t i1) {
    if (i0 != consumed_) {
      throw ContractError("extend starts at " + std::to_string(i0) +
                          " but state consumed " + std::to_string(consumed_));
    }
    if (i0 >= i1) throw ContractError("extend needs i0 < i1");
    if (s1.size() < i1 || s2.size() < i1) {
      throw ContractError("sequences shorter than extend end");
    }
    require_sequence(s1.substr(i0, i1 - i0));
    require_sequence(s2.substr(i0, i1 - i0));
    s1_.append(s1.substr(i0, i1 - i0));
    s2_.append(s2.substr(i0, i1 - i0));

    for (std::size_t m = (i0 == 0 ? 1 : i0); m + 1 <= i1; ++m) {
      auto& cur = rows_[m & 1];
      const auto& prev = rows_[(m - 1) & 1];
      for (auto& cell : cur) cell.clear();
      sweep_level(m, /*final_level=*/false, prev, cur);
    }
    consumed_ = i1;
    terminal_level_ = kNoLevel;
  }

  // FEC set at node (n,n) for n == consumed(), treating the sequences as
  // ending here. Cached per level; extend() invalidates.
  const FecSet& terminal_set() const {
    if (terminal_level_ == consumed_) return terminal_;
    if (consumed_ == 0) {
      terminal_ = rows_[0][q_];
    } else {
      const auto& prev = rows_[(consumed_ - 1) & 1];
      std::vector<FecSet> cur(2 * q_ + 1, FecSet(kernel_->profile.length));
      sweep_level(consumed_, /*final_level=*/true, prev, cur);
      terminal_ = cur[q_];
    }
    terminal_level_ = consumed_;
    return terminal_;
  }

  std::vector<FecTuple> terminal_fecs() const {
    return to_tuples(terminal_set(), kernel_->profile);
  }

  std::uint64_t pair_loss() const { return loss(terminal_set()); }

  const TransitionKernel& kernel() const { return *kernel_; }

  // State identity ignores instrumentation and the terminal cache.
  friend bool operator==(const PairState& a, const PairState& b) {
    return a.consumed_ == b.consumed_ && a.q_ == b.q_ && a.rows_ == b.rows_ &&
           a.s1_ == b.s1_ && a.s2_ == b.s2_;
  }

 private:
  static constexpr std::size_t kNoLevel = static_cast<std::size_t>(-1);

  // Computes all band cells of one level into cur. prev holds level m-1.
  // Visit order per level: bias -d, +d, -d+1, +d-1, ..., -1, +1, 0, so a
  // cell's same-level del source (bias-1) and ins source (bias+1) are done
  // first. Cells on the i=0 / j=0 boundary count as initialization, not
  // visits; the counter then matches n(2q+1) - q(q+1) over a full run.
  void sweep_level(std::size_t m, bool final_level,
                   const std::vector<FecSet>& prev,
                   std::vector<FecSet>& cur) const {
    const std::ptrdiff_t d =
        static_cast<std::ptrdiff_t>(std::min(m, q_));
    const std::ptrdiff_t q = static_cast<std::ptrdiff_t>(q_);
    for (std::ptrdiff_t t = 0; t <= 2 * d; ++t) {
      const std::ptrdiff_t b = (t % 2 == 0) ? -d + t / 2 : d - (t - 1) / 2;
      const std::size_t i = static_cast<std::size_t>(
          b >= 0 ? static_cast<std::ptrdiff_t>(m)
                 : static_cast<std::ptrdiff_t>(m) + b);
      const std::size_t j = static_cast<std::size_t>(
          b >= 0 ? static_cast<std::ptrdiff_t>(m) - b
                 : static_cast<std::ptrdiff_t>(m));
      FecSet& target = cur[static_cast<std::size_t>(q + b)];

      if (i >= 1 && j >= 1) {
        const char a = s1_[i - 1];
        const char c = s2_[j - 1];
        const FecSet& diag = prev[static_cast<std::size_t>(q + b)];
        if (a == c) {
          transition(diag, EdgeKind::Match, 0, 0, *kernel_, target);
        } else {
          transition(diag, EdgeKind::Sub, a, c, *kernel_, target);
        }
        ++visits_;
      }
      if (i >= 1 && b - 1 >= -q) {
        // del edge from (i-1, j), keyed on next chars s1[i-1] vs s2[j];
        // s2[j] is past the end on the terminal level's j == m cells.
        const bool edit_edge =
            (final_level && j == m) || s1_[i - 1] != s2_[j];
        if (edit_edge) {
          const FecSet& src = (b > 0 ? prev : cur)[static_cast<std::size_t>(q + b - 1)];
          transition(src, EdgeKind::Del, s1_[i - 1], 0, *kernel_, target);
        }
      }
      if (j >= 1 && b + 1 <= q) {
        // ins edge from (i, j-1), keyed on next chars s1[i] vs s2[j-1].
        const bool edit_edge =
            (final_level && i == m) || s1_[i] != s2_[j - 1];
        if (edit_edge) {
          const FecSet& src = (b < 0 ? prev : cur)[static_cast<std::size_t>(q + b + 1)];
          transition(src, EdgeKind::Ins, 0, s2_[j - 1], *kernel_, target);
        }
      }
    }
  }

  const TransitionKernel* kernel_;
  std::size_t q_;
  std::array<std::vector<FecSet>, 2> rows_;
  std::string s1_, s2_;
  std::size_t consumed_ = 0;
  mutable std::uint64_t visits_ = 0;
  mutable FecSet terminal_;
  mutable std::size_t terminal_level_ = kNoLevel;
};

// Whole-pair convenience: extend over the full length and query. Requires
// equal lengths; the band covers the terminal node only on the diagonal.
struct PairReport {
  std::vector<FecTuple> tuples;
  std::uint64_t loss = 0;
  std::uint64_t visits = 0;
};

inline PairReport analyze_pair(std::string_view s1, std::string_view s2,
                               const TransitionKernel& kernel) {
  if (s1.size() != s2.size()) {
    throw ContractError("pair analysis needs equal lengths");
  }
  PairState state(kernel);
  if (!s1.empty()) state.extend(s1, s2, 0, s1.size());
  PairReport r;
  r.tuples = state.terminal_fecs();
  r.loss = state.pair_loss();
  r.visits = state.visits();
  return r;
}

}  // namespace ecg
