#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ecg/errors.hpp"

namespace ecg {

inline constexpr std::string_view kAlphabet = "ACGT";
inline constexpr char kWildcard = '*';

inline bool is_nucleotide(char c) {
  return c == 'A' || c == 'C' || c == 'G' || c == 'T';
}

// Index into kAlphabet; precondition: is_nucleotide(c).
inline std::size_t nt_index(char c) {
  switch (c) {
    case 'A': return 0;
    case 'C': return 1;
    case 'G': return 2;
    default: return 3;
  }
}

inline void require_sequence(std::string_view s) {
  for (char c : s) {
    if (!is_nucleotide(c)) {
      throw AlphabetError("sequence character outside ACGT: '" +
                          std::string(1, c) + "'");
    }
  }
}

enum class EditKind { Sub, Ins, Del };

// Edge kind used by transitions; Match consumes no quota.
enum class EdgeKind { Match, Sub, Ins, Del };

// One budgeted edit operation. Character fields are a nucleotide or '*'
// (wildcard). Del uses from_char only, Ins uses to_char only.
struct EditOp {
  EditKind kind = EditKind::Sub;
  char from_char = kWildcard;
  char to_char = kWildcard;

  static EditOp sub(char f = kWildcard, char t = kWildcard) {
    return {EditKind::Sub, f, t};
  }
  static EditOp ins(char t = kWildcard) { return {EditKind::Ins, kWildcard, t}; }
  static EditOp del(char f = kWildcard) { return {EditKind::Del, f, kWildcard}; }

  friend bool operator==(const EditOp& a, const EditOp& b) {
    return a.kind == b.kind && a.from_char == b.from_char &&
           a.to_char == b.to_char;
  }
};

// Ordered op list with aligned per-op counts. Used both for correction
// targets (channel budget) and for pair-check quotas.
struct EditSpec {
  std::vector<EditOp> ops;
  std::vector<int> quotas;

  friend bool operator==(const EditSpec& a, const EditSpec& b) {
    return a.ops == b.ops && a.quotas == b.quotas;
  }
};

// A FEC tuple: per-op edit counts along one feasible path.
using FecTuple = std::vector<int>;

namespace detail {

inline void check_op_char(char c, const char* slot) {
  if (c != kWildcard && !is_nucleotide(c)) {
    throw ProfileError(std::string("bad ") + slot + " character in edit op");
  }
}

inline bool char_matches(char op_char, char edge_char) {
  return op_char == kWildcard || op_char == edge_char;
}

}  // namespace detail

// ---- op list text form ----
// "sub,ins,del" or character-specific "sub:A>G,ins:C,del:T".

inline std::string format_op(const EditOp& op) {
  std::string out;
  switch (op.kind) {
    case EditKind::Sub:
      out = "sub";
      if (op.from_char != kWildcard || op.to_char != kWildcard) {
        out += ':';
        out += op.from_char;
        out += '>';
        out += op.to_char;
      }
      break;
    case EditKind::Ins:
      out = "ins";
      if (op.to_char != kWildcard) {
        out += ':';
        out += op.to_char;
      }
      break;
    case EditKind::Del:
      out = "del";
      if (op.from_char != kWildcard) {
        out += ':';
        out += op.from_char;
      }
      break;
  }
  return out;
}

inline EditOp parse_op(std::string_view text) {
  std::string_view head = text;
  std::string_view arg;
  if (auto pos = text.find(':'); pos != std::string_view::npos) {
    head = text.substr(0, pos);
    arg = text.substr(pos + 1);
  }
  auto need = [&](bool ok) {
    if (!ok) throw ProfileError("bad edit op: '" + std::string(text) + "'");
  };
  if (head == "sub") {
    if (arg.empty()) return EditOp::sub();
    need(arg.size() == 3 && arg[1] == '>' && is_nucleotide(arg[0]) &&
         is_nucleotide(arg[2]));
    return EditOp::sub(arg[0], arg[2]);
  }
  if (head == "ins") {
    if (arg.empty()) return EditOp::ins();
    need(arg.size() == 1 && is_nucleotide(arg[0]));
    return EditOp::ins(arg[0]);
  }
  if (head == "del") {
    if (arg.empty()) return EditOp::del();
    need(arg.size() == 1 && is_nucleotide(arg[0]));
    return EditOp::del(arg[0]);
  }
  throw ProfileError("bad edit op: '" + std::string(text) + "'");
}

inline std::vector<EditOp> parse_ops(std::string_view text) {
  std::vector<EditOp> ops;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view item = text.substr(start, end - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (item.empty()) throw ProfileError("empty entry in op list");
    ops.push_back(parse_op(item));
    start = end + 1;
    if (end == text.size()) break;
  }
  if (ops.empty()) throw ProfileError("empty op list");
  return ops;
}

inline std::string format_ops(const std::vector<EditOp>& ops) {
  std::string out;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (i) out += ',';
    out += format_op(ops[i]);
  }
  return out;
}

inline std::vector<int> parse_quotas(std::string_view text) {
  std::vector<int> qs;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    while (!raw.empty() && raw.front() == ' ') raw.remove_prefix(1);
    while (!raw.empty() && raw.back() == ' ') raw.remove_suffix(1);
    std::string item(raw);
    try {
      std::size_t used = 0;
      int v = std::stoi(item, &used);
      if (used != item.size() || v < 0) throw std::invalid_argument("range");
      qs.push_back(v);
    } catch (const std::exception&) {
      throw ProfileError("bad quota entry: '" + item + "'");
    }
    start = end + 1;
    if (end == text.size()) break;
  }
  if (qs.empty()) throw ProfileError("empty quota list");
  return qs;
}

inline std::string format_quotas(const std::vector<int>& qs) {
  std::string out;
  for (std::size_t i = 0; i < qs.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(qs[i]);
  }
  return out;
}

// ---- profile ----

// Largest supported FEC lattice, in bits per node.
inline constexpr std::uint64_t kMaxFecBits = std::uint64_t{1} << 20;
// Largest supported op count (match masks are 64-bit).
inline constexpr std::size_t kMaxOps = 64;

// Immutable, precomputed view of one (ops, quotas) pair:
//   length     L = prod(quota[i]+1), the bit width of every node set
//   shift_amount[i] = prod_{j<i}(quota[j]+1), bit offset of "+1 on coord i"
//   band       q = max(total ins quota, total del quota)
// plus per-edge match masks over op indices. Treat as read-only after
// build_profile.
struct EditProfile {
  std::vector<EditOp> ops;
  std::vector<int> quotas;
  std::uint64_t length = 1;
  std::vector<std::uint64_t> shift_amount;
  std::size_t band = 0;

  // Bit i set: op i matches the edge. Indexed by nucleotide pairs.
  std::array<std::array<std::uint64_t, 4>, 4> sub_mask{};
  std::array<std::uint64_t, 4> ins_mask{};
  std::array<std::uint64_t, 4> del_mask{};

  std::size_t op_count() const { return ops.size(); }
};

inline EditProfile build_profile(const std::vector<EditOp>& ops,
                                 const std::vector<int>& quotas) {
  if (ops.empty()) throw ProfileError("op list is empty");
  if (ops.size() != quotas.size()) {
    throw ProfileError("op list has " + std::to_string(ops.size()) +
                       " entries but quota list has " +
                       std::to_string(quotas.size()));
  }
  if (ops.size() > kMaxOps) {
    throw CapacityError("op list longer than " + std::to_string(kMaxOps));
  }
  EditProfile p;
  p.ops = ops;
  p.quotas = quotas;
  p.shift_amount.resize(ops.size());
  std::uint64_t total_ins = 0;
  std::uint64_t total_del = 0;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (quotas[i] < 0) throw ProfileError("negative quota");
    detail::check_op_char(ops[i].from_char, "from");
    detail::check_op_char(ops[i].to_char, "to");
    p.shift_amount[i] = p.length;
    const std::uint64_t radix = static_cast<std::uint64_t>(quotas[i]) + 1;
    if (p.length > kMaxFecBits / radix) {
      throw CapacityError("FEC lattice needs more than " +
                          std::to_string(kMaxFecBits) +
                          " bits per node; reduce quotas");
    }
    p.length *= radix;
    if (ops[i].kind == EditKind::Ins) total_ins += radix - 1;
    if (ops[i].kind == EditKind::Del) total_del += radix - 1;
  }
  // Alignment offset along any in-quota path is bounded by the total
  // insertion or deletion budget, whichever side applies.
  p.band = static_cast<std::size_t>(std::max(total_ins, total_del));

  for (std::size_t i = 0; i < ops.size(); ++i) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    const EditOp& op = ops[i];
    for (std::size_t f = 0; f < 4; ++f) {
      for (std::size_t t = 0; t < 4; ++t) {
        if (op.kind == EditKind::Sub &&
            detail::char_matches(op.from_char, kAlphabet[f]) &&
            detail::char_matches(op.to_char, kAlphabet[t])) {
          p.sub_mask[f][t] |= bit;
        }
      }
      if (op.kind == EditKind::Ins &&
          detail::char_matches(op.to_char, kAlphabet[f])) {
        p.ins_mask[f] |= bit;
      }
      if (op.kind == EditKind::Del &&
          detail::char_matches(op.from_char, kAlphabet[f])) {
        p.del_mask[f] |= bit;
      }
    }
  }
  return p;
}

inline EditProfile build_profile(const EditSpec& spec) {
  return build_profile(spec.ops, spec.quotas);
}

// ---- mixed-radix index mapping ----
// Coordinate i has radix quota[i]+1; coordinate 0 is least significant:
//   index = sum_i tuple[i] * shift_amount[i].

inline FecTuple index_encode(const EditProfile& p, std::uint64_t index) {
  if (index >= p.length) {
    throw ContractError("index " + std::to_string(index) +
                        " outside lattice of size " +
                        std::to_string(p.length));
  }
  FecTuple t(p.op_count());
  for (std::size_t i = 0; i < p.op_count(); ++i) {
    const std::uint64_t radix = static_cast<std::uint64_t>(p.quotas[i]) + 1;
    t[i] = static_cast<int>(index % radix);
    index /= radix;
  }
  return t;
}

inline std::uint64_t index_decode(const EditProfile& p, const FecTuple& t) {
  if (t.size() != p.op_count()) {
    throw ContractError("tuple arity mismatch");
  }
  std::uint64_t index = 0;
  for (std::size_t i = 0; i < p.op_count(); ++i) {
    if (t[i] < 0 || t[i] > p.quotas[i]) {
      throw ContractError("tuple coordinate " + std::to_string(i) +
                          " outside quota");
    }
    index += static_cast<std::uint64_t>(t[i]) * p.shift_amount[i];
  }
  return index;
}

// ---- edge matching ----

// Match mask for one edge. Sub uses both characters, Del the consumed
// source character, Ins the produced target character. Match edges never
// charge quota.
inline std::uint64_t match_mask(const EditProfile& p, EdgeKind kind,
                                char from_c, char to_c) {
  switch (kind) {
    case EdgeKind::Match:
      return 0;
    case EdgeKind::Sub:
      if (!is_nucleotide(from_c) || !is_nucleotide(to_c)) {
        throw ContractError("sub edge needs two nucleotides");
      }
      return p.sub_mask[nt_index(from_c)][nt_index(to_c)];
    case EdgeKind::Ins:
      if (!is_nucleotide(to_c)) throw ContractError("ins edge needs a nucleotide");
      return p.ins_mask[nt_index(to_c)];
    case EdgeKind::Del:
      if (!is_nucleotide(from_c)) throw ContractError("del edge needs a nucleotide");
      return p.del_mask[nt_index(from_c)];
  }
  return 0;
}

// Indices of ops matching the edge, ascending.
inline std::vector<std::size_t> matching_edits(const EditProfile& p,
                                               EdgeKind kind, char from_c,
                                               char to_c) {
  std::uint64_t mask = match_mask(p, kind, from_c, to_c);
  std::vector<std::size_t> out;
  while (mask) {
    const int i = std::countr_zero(mask);
    out.push_back(static_cast<std::size_t>(i));
    mask &= mask - 1;
  }
  return out;
}

// ---- pair-check quota derivation ----
//
// A pair of codewords is confusable when some corrupted read lies in both
// error balls. Walking codeword -> read -> codeword concatenates one
// forward budget with one inverted budget: substitutions invert to
// substitutions (reversed characters), insertions to deletions and vice
// versa. Each correction target therefore contributes itself plus its
// inverse to the check quota; with wildcard ops this doubles sub quotas
// and sets both ins and del to t_ins + t_del. Output order: subs, then
// ins, then del ops, duplicates merged.
inline EditSpec quota_for_pair_check(const EditSpec& targets) {
  if (targets.ops.size() != targets.quotas.size()) {
    throw ProfileError("targets arity mismatch");
  }
  std::vector<EditOp> subs, inss, dels;
  std::vector<int> sub_q, ins_q, del_q;
  auto add = [](std::vector<EditOp>& ops, std::vector<int>& qs,
                const EditOp& op, int quota) {
    for (std::size_t i = 0; i < ops.size(); ++i) {
      if (ops[i] == op) {
        qs[i] += quota;
        return;
      }
    }
    ops.push_back(op);
    qs.push_back(quota);
  };
  for (std::size_t i = 0; i < targets.ops.size(); ++i) {
    const EditOp& op = targets.ops[i];
    const int t = targets.quotas[i];
    if (t < 0) throw ProfileError("negative correction target");
    switch (op.kind) {
      case EditKind::Sub:
        add(subs, sub_q, op, t);
        add(subs, sub_q, EditOp::sub(op.to_char, op.from_char), t);
        break;
      case EditKind::Ins:
        add(inss, ins_q, op, t);
        add(dels, del_q, EditOp::del(op.to_char), t);
        break;
      case EditKind::Del:
        add(dels, del_q, op, t);
        add(inss, ins_q, EditOp::ins(op.from_char), t);
        break;
    }
  }
  EditSpec check;
  auto append = [&](std::vector<EditOp>& ops, std::vector<int>& qs) {
    for (std::size_t i = 0; i < ops.size(); ++i) {
      check.ops.push_back(ops[i]);
      check.quotas.push_back(qs[i]);
    }
  };
  append(subs, sub_q);
  append(inss, ins_q);
  append(dels, del_q);
  return check;
}

}  // namespace ecg
