#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <sys/wait.h>
#include <utility>
#include <vector>

#include <ecg/candidates.hpp>
#include <ecg/edit_model.hpp>

namespace ecg::testing {

inline int max_run(const std::string& s) {
  int best = 0, cur = 0;
  char last = '\0';
  for (char c : s) {
    cur = (c == last) ? cur + 1 : 1;
    last = c;
    best = best > cur ? best : cur;
  }
  return best;
}

// Unbanded full-matrix DP over explicit tuple sets; shares only the edge
// semantics with the engine, none of the bit encoding or banding.
inline std::set<FecTuple> reference_fecs(std::string_view s1,
                                         std::string_view s2,
                                         const EditProfile& profile) {
  const std::size_t n1 = s1.size();
  const std::size_t n2 = s2.size();
  const std::size_t k = profile.ops.size();
  std::vector<std::vector<std::set<FecTuple>>> cell(
      n1 + 1, std::vector<std::set<FecTuple>>(n2 + 1));
  cell[0][0].insert(FecTuple(k, 0));

  auto charge = [&](const std::set<FecTuple>& src, EdgeKind kind, char from_c,
                    char to_c, std::set<FecTuple>& dst) {
    for (std::size_t op : matching_edits(profile, kind, from_c, to_c)) {
      for (const FecTuple& t : src) {
        if (t[op] < profile.quotas[op]) {
          FecTuple u = t;
          ++u[op];
          dst.insert(u);
        }
      }
    }
  };

  for (std::size_t i = 0; i <= n1; ++i) {
    for (std::size_t j = 0; j <= n2; ++j) {
      if (i == 0 && j == 0) continue;
      auto& dst = cell[i][j];
      if (i >= 1 && j >= 1) {
        const auto& src = cell[i - 1][j - 1];
        if (s1[i - 1] == s2[j - 1]) {
          dst.insert(src.begin(), src.end());
        } else {
          charge(src, EdgeKind::Sub, s1[i - 1], s2[j - 1], dst);
        }
      }
      if (i >= 1 && (j == n2 || s1[i - 1] != s2[j])) {
        charge(cell[i - 1][j], EdgeKind::Del, s1[i - 1], '\0', dst);
      }
      if (j >= 1 && (i == n1 || s1[i] != s2[j - 1])) {
        charge(cell[i][j - 1], EdgeKind::Ins, '\0', s2[j - 1], dst);
      }
    }
  }
  return cell[n1][n2];
}

// Every string reachable from s by applying channel ops within quota, the
// op-application order free. Memoized on (string, remaining quota).
inline void ball_walk(const std::string& s, const EditSpec& spec,
                      std::vector<int>& used,
                      std::map<std::pair<std::string, std::vector<int>>,
                               bool>& seen,
                      std::set<std::string>& out) {
  auto key = std::make_pair(s, used);
  if (seen.count(key)) return;
  seen[key] = true;
  out.insert(s);
  for (std::size_t k = 0; k < spec.ops.size(); ++k) {
    if (used[k] >= spec.quotas[k]) continue;
    const EditOp& op = spec.ops[k];
    ++used[k];
    if (op.kind == EditKind::Sub) {
      for (std::size_t p = 0; p < s.size(); ++p) {
        if (op.from_char != kWildcard && s[p] != op.from_char) continue;
        for (char c : std::string_view(kAlphabet)) {
          if (c == s[p]) continue;
          if (op.to_char != kWildcard && c != op.to_char) continue;
          std::string t = s;
          t[p] = c;
          ball_walk(t, spec, used, seen, out);
        }
      }
    } else if (op.kind == EditKind::Del) {
      for (std::size_t p = 0; p < s.size(); ++p) {
        if (op.from_char != kWildcard && s[p] != op.from_char) continue;
        std::string t = s;
        t.erase(p, 1);
        ball_walk(t, spec, used, seen, out);
      }
    } else {
      for (std::size_t p = 0; p <= s.size(); ++p) {
        for (char c : std::string_view(kAlphabet)) {
          if (op.to_char != kWildcard && c != op.to_char) continue;
          std::string t = s;
          t.insert(p, 1, c);
          ball_walk(t, spec, used, seen, out);
        }
      }
    }
    --used[k];
  }
}

inline std::set<std::string> channel_ball(const std::string& s,
                                          const EditSpec& spec) {
  std::set<std::string> out;
  std::vector<int> used(spec.ops.size(), 0);
  std::map<std::pair<std::string, std::vector<int>>, bool> seen;
  ball_walk(s, spec, used, seen, out);
  return out;
}

inline bool balls_intersect(const std::string& a, const std::string& b,
                            const EditSpec& spec) {
  const auto ba = channel_ball(a, spec);
  for (const auto& z : channel_ball(b, spec)) {
    if (ba.count(z)) return true;
  }
  return false;
}

inline std::string random_sequence(std::mt19937_64& rng, std::size_t len,
                                   std::string_view alphabet = kAlphabet) {
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::string s(len, 'A');
  for (auto& c : s) c = alphabet[pick(rng)];
  return s;
}

// All strings over `alphabet` of the given length, lexicographic.
inline std::vector<std::string> all_strings(std::size_t len,
                                            std::string_view alphabet) {
  std::vector<std::string> out{""};
  for (std::size_t i = 0; i < len; ++i) {
    std::vector<std::string> next;
    next.reserve(out.size() * alphabet.size());
    for (const auto& s : out) {
      for (char c : alphabet) next.push_back(s + c);
    }
    out = std::move(next);
  }
  return out;
}

// Direct filter over all suffixes; caps use the nominal window length.
inline std::vector<std::string> naive_candidate_filter(
    const std::string& tail, const ConstraintSpec& spec) {
  const int window = spec.context_len + spec.augment_len;
  const int cap = static_cast<int>(
      std::floor(spec.gc_balance * static_cast<double>(window) + 1e-9));
  std::vector<std::string> out;
  for (const auto& cand :
       all_strings(static_cast<std::size_t>(spec.augment_len), kAlphabet)) {
    const std::string w = tail + cand;
    int gc = 0;
    for (char c : w) gc += is_gc(c);
    const int at = static_cast<int>(w.size()) - gc;
    if (gc > cap || at > cap) continue;
    // Only runs covering at least one appended position are constrained;
    // runs wholly inside the tail were vetted when the tail was grown.
    bool run_ok = true;
    for (std::size_t b = 0; b < w.size();) {
      std::size_t e = b + 1;
      while (e < w.size() && w[e] == w[b]) ++e;
      if (e > tail.size() && e - b > static_cast<std::size_t>(spec.run_max)) {
        run_ok = false;
        break;
      }
      b = e;
    }
    if (!run_ok) continue;
    out.push_back(cand);
  }
  return out;
}

struct CommandResult {
  int exit_code = -1;
  std::string output;
};

// Runs through the shell, captures stdout (stderr merged on request).
inline CommandResult run_command(const std::string& command,
                                 bool merge_stderr = false) {
  const std::string full =
      merge_stderr ? command + " 2>&1" : command + " 2>/dev/null";
  FILE* pipe = popen(full.c_str(), "r");
  if (pipe == nullptr) throw std::runtime_error("popen failed: " + command);
  CommandResult result;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    result.output.append(buf.data(), got);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

inline std::string tool_path() { return ECG_TOOL_PATH; }

}  // namespace ecg::testing
