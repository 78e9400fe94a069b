#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iterator>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ecg/candidates.hpp"
#include "ecg/edit_model.hpp"
#include "ecg/engine.hpp"
#include "ecg/errors.hpp"
#include "ecg/parallel.hpp"

namespace ecg {

struct GenerationConfig {
  std::size_t size = 2;                // codebook size m
  EditSpec check;                      // pair-check ops and quotas
  std::optional<EditSpec> correction;  // channel targets when check was derived
  ConstraintSpec constraint;
  std::size_t candidates_per_step = 8;
  std::uint64_t seed = 0;
  std::size_t max_steps = 256;   // growth rounds before giving up
  std::size_t min_extra_steps = 0;  // rounds to keep growing after loss hits 0
};

struct Codebook {
  std::vector<std::string> sequences;
  EditSpec check;
  std::optional<EditSpec> correction;
  ConstraintSpec constraint;
  std::uint64_t seed = 0;
  std::size_t steps = 0;

  std::size_t size() const { return sequences.size(); }
  std::size_t length() const {
    return sequences.empty() ? 0 : sequences.front().size();
  }
};

// r(C) = n*log2(4) - log2(m): overhead versus raw quaternary capacity.
inline double redundancy(std::size_t n, std::size_t m) {
  if (m == 0) throw ContractError("empty codebook has no redundancy");
  return 2.0 * static_cast<double>(n) - std::log2(static_cast<double>(m));
}

inline double redundancy(const Codebook& cb) {
  return redundancy(cb.length(), cb.size());
}

// Reference overhead of a classical segmented-correction layout at length n.
inline double baseline_redundancy(std::size_t n) {
  if (n == 0) throw ContractError("baseline needs n >= 1");
  return 10.0 * std::log2(static_cast<double>(n)) + 17.0;
}

struct ProgressRecord {
  std::size_t step = 0;
  std::uint64_t total_loss = 0;
  double elapsed_s = 0.0;
};
using ProgressFn = std::function<void(const ProgressRecord&)>;

// Growth gave up at max_steps; carries the best partial state.
struct ConvergenceError : Error {
  ConvergenceError(std::vector<std::string> partial, std::uint64_t loss_left,
                   std::size_t steps_done)
      : Error("no zero-loss codebook after " + std::to_string(steps_done) +
              " steps; residual loss " + std::to_string(loss_left)),
        sequences(std::move(partial)),
        remaining_loss(loss_left),
        steps(steps_done) {}

  std::vector<std::string> sequences;
  std::uint64_t remaining_loss = 0;
  std::size_t steps = 0;
};

// Window constraints admit no suffix at all.
struct InfeasibleError : Error {
  using Error::Error;
};

namespace detail {

// Index of ordered pair (i, j), i < j, in a packed triangular table.
inline std::size_t pair_index(std::size_t i, std::size_t j) {
  return j * (j - 1) / 2 + i;
}

}  // namespace detail

// Sum of pair losses over all unordered pairs, each evaluated from scratch
// at the common full length. The pair is analyzed from the lower index to
// the higher.
inline std::uint64_t total_loss(const std::vector<std::string>& sequences,
                                const TransitionKernel& kernel) {
  const std::size_t m = sequences.size();
  if (m < 2) return 0;
  const std::size_t pairs = m * (m - 1) / 2;
  std::vector<std::uint64_t> losses(pairs, 0);
  parallel_for(pairs, [&](std::size_t p) {
    // Invert the triangular index.
    std::size_t j = 1;
    while (detail::pair_index(0, j + 1) <= p) ++j;
    const std::size_t i = p - detail::pair_index(0, j);
    losses[p] = analyze_pair(sequences[i], sequences[j], kernel).loss;
  });
  std::uint64_t total = 0;
  for (auto v : losses) total += v;
  return total;
}

struct ConfusablePair {
  std::size_t first = 0;
  std::size_t second = 0;
  std::uint64_t loss = 0;
};

// First pair (by (i, j) order) with nonzero loss, if any; scratch states.
inline std::optional<ConfusablePair> find_confusable_pair(
    const std::vector<std::string>& sequences, const TransitionKernel& kernel) {
  const std::size_t m = sequences.size();
  std::vector<std::uint64_t> losses(m * (m - 1) / 2, 0);
  parallel_for(losses.size(), [&](std::size_t p) {
    std::size_t j = 1;
    while (detail::pair_index(0, j + 1) <= p) ++j;
    const std::size_t i = p - detail::pair_index(0, j);
    losses[p] = analyze_pair(sequences[i], sequences[j], kernel).loss;
  });
  for (std::size_t i = 0; i + 1 < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (losses[detail::pair_index(i, j)] != 0) {
        return ConfusablePair{i, j, losses[detail::pair_index(i, j)]};
      }
    }
  }
  return std::nullopt;
}

// Grows m sequences in lockstep rounds. Each round extends every sequence,
// in index order, by one constrained suffix of length augment_len, chosen
// among a sampled candidate set to minimize the summed pair loss against
// partners (already-extended partners at their new length, the rest at the
// old length; ties break to the smallest suffix). Growth stops once a full
// round ends with zero total loss, plus min_extra_steps bonus rounds.
//
// Deterministic for a fixed config. Before returning, every pair is
// re-checked from scratch; a scratch/incremental mismatch is a hard error.
inline Codebook grow_codebook(const GenerationConfig& config,
                              const ProgressFn& progress = nullptr) {
  if (config.size == 0) throw ProfileError("codebook size must be >= 1");
  if (config.candidates_per_step == 0) {
    throw ProfileError("candidate budget must be >= 1");
  }
  if (config.max_steps == 0) throw ProfileError("max_steps must be >= 1");
  validate_constraints(config.constraint);
  const TransitionKernel kernel(build_profile(config.check));
  const std::size_t m = config.size;
  const std::size_t step_len =
      static_cast<std::size_t>(config.constraint.augment_len);

  std::vector<std::string> seqs(m);
  std::vector<PairState> states(m * (m - 1) / 2, PairState(kernel));
  std::mt19937_64 rng(config.seed);
  const auto started = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         started)
        .count();
  };

  std::size_t steps = 0;
  std::size_t extra_used = 0;
  for (;;) {
    std::uint64_t cur_loss = 0;
    for (const auto& st : states) cur_loss += st.pair_loss();
    if (progress) progress({steps, cur_loss, elapsed()});
    if (cur_loss == 0) {
      if (extra_used >= config.min_extra_steps) break;
      ++extra_used;
    }
    if (steps == config.max_steps) {
      throw ConvergenceError(seqs, cur_loss, steps);
    }

    const std::size_t old_len = steps * step_len;
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t ctx =
          std::min<std::size_t>(config.constraint.context_len, seqs[i].size());
      const std::string_view tail =
          std::string_view(seqs[i]).substr(seqs[i].size() - ctx);
      std::vector<std::string> cands =
          generate_candidates(tail, config.constraint);
      if (cands.empty()) {
        throw InfeasibleError("window constraints admit no suffix at step " +
                              std::to_string(steps));
      }
      if (cands.size() > config.candidates_per_step) {
        std::vector<std::string> picked;
        picked.reserve(config.candidates_per_step);
        std::sample(cands.begin(), cands.end(), std::back_inserter(picked),
                    config.candidates_per_step, rng);
        cands = std::move(picked);
      }

      // Partners not yet extended this round contribute the same loss to
      // every candidate; fold them in once.
      std::uint64_t base = 0;
      for (std::size_t j = i + 1; j < m; ++j) {
        base += states[detail::pair_index(i, j)].pair_loss();
      }

      std::vector<std::uint64_t> scores(cands.size(), 0);
      std::vector<std::vector<PairState>> grown(cands.size());
      parallel_for(cands.size(), [&](std::size_t c) {
        const std::string extended = seqs[i] + cands[c];
        std::uint64_t score = base;
        auto& clones = grown[c];
        clones.reserve(i);
        for (std::size_t j = 0; j < i; ++j) {
          clones.push_back(states[detail::pair_index(j, i)]);
          clones.back().extend(seqs[j], extended, old_len, old_len + step_len);
          score += clones.back().pair_loss();
        }
        scores[c] = score;
      });

      std::size_t best = 0;
      for (std::size_t c = 1; c < cands.size(); ++c) {
        if (scores[c] < scores[best]) best = c;
      }
      seqs[i] += cands[best];
      for (std::size_t j = 0; j < i; ++j) {
        states[detail::pair_index(j, i)] = std::move(grown[best][j]);
      }
    }
    ++steps;
  }

  // Scratch re-verification of the incremental bookkeeping.
  if (m >= 2) {
    const std::uint64_t scratch = total_loss(seqs, kernel);
    if (scratch != 0) {
      throw Error("incremental growth and scratch check disagree: residual " +
                  std::to_string(scratch));
    }
    std::set<std::string> distinct(seqs.begin(), seqs.end());
    if (distinct.size() != seqs.size()) {
      throw Error("grown codebook contains duplicate sequences");
    }
  }

  Codebook cb;
  cb.sequences = std::move(seqs);
  cb.check = config.check;
  cb.correction = config.correction;
  cb.constraint = config.constraint;
  cb.seed = config.seed;
  cb.steps = steps;
  return cb;
}

}  // namespace ecg
