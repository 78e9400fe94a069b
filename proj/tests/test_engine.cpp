#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>
#include <string>
#include <vector>

#include <ecg/engine.hpp>
#include <ecg/oracle.hpp>

#include "support/helpers.hpp"

using namespace ecg;
using ecg::testing::all_strings;
using ecg::testing::random_sequence;
using ecg::testing::reference_fecs;

namespace {

std::set<FecTuple> as_set(const std::vector<FecTuple>& v) {
  return {v.begin(), v.end()};
}

const std::vector<std::vector<int>> kQuotaGrid{{1, 0, 0},
                                               {1, 1, 1},
                                               {2, 1, 1},
                                               {4, 2, 2}};

TransitionKernel kernel_for(const std::vector<int>& eq) {
  return TransitionKernel(build_profile(
      {EditOp::sub(), EditOp::ins(), EditOp::del()}, eq));
}

}  // namespace

TEST_CASE("engine reproduces the frozen pair examples") {
  const auto k111 = kernel_for({1, 1, 1});
  const PairReport r = analyze_pair("AGC", "AGG", k111);
  CHECK(as_set(r.tuples) == std::set<FecTuple>{{1, 0, 0}, {0, 1, 1}});
  CHECK(r.loss == 7);

  const auto k422 = kernel_for({4, 2, 2});
  const PairReport r2 = analyze_pair("TCTTCTTCCG", "TCCGCAGAAT", k422);
  CHECK(r2.tuples.empty());
  CHECK(r2.loss == 0);
}

TEST_CASE("engine matches the brute-force oracle exhaustively on two letters") {
  for (const auto& eq : kQuotaGrid) {
    const auto kernel = kernel_for(eq);
    for (std::size_t n = 0; n <= 3; ++n) {
      for (const auto& a : all_strings(n, "AC")) {
        for (const auto& b : all_strings(n, "AC")) {
          const auto expect = as_set(brute_force_fecs(a, b, kernel.profile));
          const auto got = as_set(analyze_pair(a, b, kernel).tuples);
          INFO("a=" << a << " b=" << b);
          REQUIRE(got == expect);
        }
      }
    }
  }
}

TEST_CASE("engine matches the brute-force oracle on random quaternary pairs") {
  std::mt19937_64 rng(2024);
  for (const auto& eq : kQuotaGrid) {
    const auto kernel = kernel_for(eq);
    for (int t = 0; t < 200; ++t) {
      const std::size_t n = 1 + static_cast<std::size_t>(rng() % 6);
      const auto a = random_sequence(rng, n);
      const auto b = random_sequence(rng, n);
      const auto expect = as_set(brute_force_fecs(a, b, kernel.profile));
      const auto got = as_set(analyze_pair(a, b, kernel).tuples);
      INFO("a=" << a << " b=" << b);
      REQUIRE(got == expect);
    }
  }
}

TEST_CASE("engine matches the oracle under specialized op profiles") {
  std::mt19937_64 rng(99);
  const TransitionKernel kernel(build_profile(
      {EditOp::sub('A', 'G'), EditOp::sub(), EditOp::ins('C'), EditOp::del()},
      {1, 1, 1, 1}));
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng() % 5);
    const auto a = random_sequence(rng, n);
    const auto b = random_sequence(rng, n);
    const auto expect = as_set(brute_force_fecs(a, b, kernel.profile));
    const auto got = as_set(analyze_pair(a, b, kernel).tuples);
    INFO("a=" << a << " b=" << b);
    REQUIRE(got == expect);
  }
}

TEST_CASE("banded state equals the unbanded full-matrix reference") {
  std::mt19937_64 rng(7);
  for (const auto& eq : kQuotaGrid) {
    const auto kernel = kernel_for(eq);
    for (int t = 0; t < 50; ++t) {
      const std::size_t n = 1 + static_cast<std::size_t>(rng() % 10);
      const auto a = random_sequence(rng, n);
      const auto b = random_sequence(rng, n);
      const auto expect = reference_fecs(a, b, kernel.profile);
      const auto got = as_set(analyze_pair(a, b, kernel).tuples);
      INFO("a=" << a << " b=" << b);
      REQUIRE(got == expect);
    }
  }
}

TEST_CASE("widening the band beyond the profile minimum changes nothing") {
  std::mt19937_64 rng(13);
  const auto kernel = kernel_for({1, 1, 1});
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng() % 8);
    const auto a = random_sequence(rng, n);
    const auto b = random_sequence(rng, n);
    PairState narrow(kernel);
    PairState wide(kernel, kernel.profile.band + 3);
    narrow.extend(a, b, 0, n);
    wide.extend(a, b, 0, n);
    REQUIRE(narrow.terminal_fecs() == wide.terminal_fecs());
    REQUIRE(narrow.pair_loss() == wide.pair_loss());
  }
}

TEST_CASE("incremental extension equals one batch extension") {
  std::mt19937_64 rng(31);
  const auto kernel = kernel_for({2, 1, 1});
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng() % 14);
    const auto a = random_sequence(rng, n);
    const auto b = random_sequence(rng, n);

    PairState batch(kernel);
    batch.extend(a, b, 0, n);

    PairState inc(kernel);
    std::size_t at = 0;
    while (at < n) {
      const std::size_t step = 1 + static_cast<std::size_t>(rng() % 3);
      const std::size_t next = std::min(n, at + step);
      inc.extend(a, b, at, next);
      // Terminal queries between extensions must not disturb the state.
      (void)inc.pair_loss();
      at = next;
    }
    REQUIRE(inc == batch);
    REQUIRE(inc.terminal_fecs() == batch.terminal_fecs());
    REQUIRE(inc.pair_loss() == batch.pair_loss());
  }
}

TEST_CASE("copies evolve independently of their source") {
  const auto kernel = kernel_for({1, 1, 1});
  PairState base(kernel);
  base.extend("ACG", "ACC", 0, 2);
  const auto before = base.terminal_fecs();
  PairState clone = base;
  clone.extend("ACG", "ACC", 2, 3);
  CHECK(base.terminal_fecs() == before);
  CHECK(clone.terminal_fecs() != before);
}

TEST_CASE("visit accounting matches the banded closed form") {
  std::mt19937_64 rng(5);
  const std::vector<std::pair<std::vector<int>, std::size_t>> cases{
      {{3, 0, 0}, 0}, {{1, 1, 1}, 1}, {{4, 2, 2}, 2}};
  for (const auto& [eq, q] : cases) {
    const auto kernel = kernel_for(eq);
    REQUIRE(kernel.profile.band == q);
    for (std::size_t n : {5, 10, 20}) {
      const auto a = random_sequence(rng, n);
      const auto b = random_sequence(rng, n);
      const PairReport r = analyze_pair(a, b, kernel);
      CHECK(r.visits == n * (2 * q + 1) - q * (q + 1));
    }
  }
}

TEST_CASE("loss of the empty pair is the full length") {
  const auto kernel = kernel_for({1, 1, 1});
  const PairReport r = analyze_pair("", "", kernel);
  CHECK(as_set(r.tuples) == std::set<FecTuple>{{0, 0, 0}});
  CHECK(r.loss == kernel.profile.length);
}

TEST_CASE("confusability is symmetric even when loss values differ") {
  std::mt19937_64 rng(17);
  const auto kernel = kernel_for({2, 1, 1});
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng() % 8);
    const auto a = random_sequence(rng, n);
    const auto b = random_sequence(rng, n);
    const bool ab = analyze_pair(a, b, kernel).loss > 0;
    const bool ba = analyze_pair(b, a, kernel).loss > 0;
    INFO("a=" << a << " b=" << b);
    REQUIRE(ab == ba);
  }
}

TEST_CASE("state contract violations throw") {
  const auto kernel = kernel_for({1, 1, 1});
  PairState s(kernel);
  CHECK_THROWS_AS(s.extend("AC", "AC", 1, 2), ContractError);
  CHECK_THROWS_AS(s.extend("AC", "AC", 0, 0), ContractError);
  CHECK_THROWS_AS(s.extend("AC", "AC", 0, 3), ContractError);
  s.extend("AC", "AC", 0, 2);
  CHECK_THROWS_AS(s.extend("ACGT", "ACGT", 1, 4), ContractError);
  CHECK_THROWS_AS(analyze_pair("ACG", "AC", kernel), ContractError);
  CHECK_THROWS_AS(analyze_pair("AX", "AA", kernel), AlphabetError);
}
