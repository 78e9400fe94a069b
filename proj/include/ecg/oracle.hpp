#pragma once

#include <algorithm>
#include <set>
#include <string_view>
#include <vector>

#include "ecg/edit_model.hpp"
#include "ecg/errors.hpp"

namespace ecg {

// Longest input the path enumeration accepts. Not a performance path:
// correctness reference only, memo-free by design.
inline constexpr std::size_t kOracleMaxLen = 12;

namespace detail {

inline void oracle_walk(std::string_view s1, std::string_view s2,
                        std::size_t i, std::size_t j, FecTuple& counts,
                        const EditProfile& p,
                        std::set<FecTuple>& out) {
  if (i == s1.size() && j == s2.size()) {
    out.insert(counts);
    return;
  }
  // Equal next characters force the free match step; edits apply only at
  // mismatches or once one side is exhausted.
  if (i < s1.size() && j < s2.size() && s1[i] == s2[j]) {
    oracle_walk(s1, s2, i + 1, j + 1, counts, p, out);
    return;
  }
  auto charge = [&](EdgeKind kind, char f, char t, std::size_t ni,
                    std::size_t nj) {
    for (std::size_t op : matching_edits(p, kind, f, t)) {
      if (counts[op] == p.quotas[op]) continue;
      ++counts[op];
      oracle_walk(s1, s2, ni, nj, counts, p, out);
      --counts[op];
    }
  };
  if (i < s1.size() && j < s2.size()) {
    charge(EdgeKind::Sub, s1[i], s2[j], i + 1, j + 1);
  }
  if (i < s1.size()) charge(EdgeKind::Del, s1[i], 0, i + 1, j);
  if (j < s2.size()) charge(EdgeKind::Ins, 0, s2[j], i, j + 1);
}

}  // namespace detail

// All in-quota FEC tuples for transforming s1 into s2, by exhaustive path
// enumeration with per-op charging (every matching op index branches).
inline std::vector<FecTuple> brute_force_fecs(std::string_view s1,
                                              std::string_view s2,
                                              const EditProfile& p) {
  if (s1.size() > kOracleMaxLen || s2.size() > kOracleMaxLen) {
    throw ContractError("oracle input longer than " +
                        std::to_string(kOracleMaxLen));
  }
  require_sequence(s1);
  require_sequence(s2);
  FecTuple counts(p.op_count(), 0);
  std::set<FecTuple> out;
  detail::oracle_walk(s1, s2, 0, 0, counts, p, out);
  return {out.begin(), out.end()};
}

// Plain unit-cost edit distance.
inline std::size_t levenshtein(std::string_view s1, std::string_view s2) {
  std::vector<std::size_t> row(s2.size() + 1);
  for (std::size_t j = 0; j <= s2.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= s1.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= s2.size(); ++j) {
      const std::size_t up = row[j];
      const std::size_t subst = diag + (s1[i - 1] == s2[j - 1] ? 0 : 1);
      row[j] = std::min({subst, up + 1, row[j - 1] + 1});
      diag = up;
    }
  }
  return row[s2.size()];
}

}  // namespace ecg
