#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "ecg/edit_model.hpp"
#include "ecg/errors.hpp"

namespace ecg {

// One node's FEC set, encoded as a bit array of profile.length bits.
// Bit k set means the tuple index_encode(profile, k) lies on some feasible
// path into the node. Words beyond the last valid bit stay zero.
class FecSet {
 public:
  FecSet() = default;
  explicit FecSet(std::uint64_t bits)
      : bits_(bits), words_((bits + 63) / 64, 0) {}

  std::uint64_t bit_size() const { return bits_; }

  void clear() {
    for (auto& w : words_) w = 0;
  }

  void set(std::uint64_t k) {
    check_index(k);
    words_[k >> 6] |= std::uint64_t{1} << (k & 63);
  }

  bool test(std::uint64_t k) const {
    check_index(k);
    return (words_[k >> 6] >> (k & 63)) & 1;
  }

  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }

  std::uint64_t popcount() const {
    std::uint64_t n = 0;
    for (auto w : words_) n += static_cast<std::uint64_t>(std::popcount(w));
    return n;
  }

  // Lowest set bit index; bits_ when empty.
  std::uint64_t lowest_bit() const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i]) {
        return (static_cast<std::uint64_t>(i) << 6) +
               static_cast<std::uint64_t>(std::countr_zero(words_[i]));
      }
    }
    return bits_;
  }

  void or_with(const FecSet& other) {
    check_width(other);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  }

  // this |= (src & mask) << shift, bits shifted past bit_size()-1 dropped.
  // Implements "advance coordinate i" on the mixed-radix encoding: mask is
  // the edit mask (coordinate below quota), shift the coordinate stride.
  void or_masked_shift(const FecSet& src, const FecSet& mask,
                       std::uint64_t shift) {
    check_width(src);
    check_width(mask);
    const std::size_t word_shift = static_cast<std::size_t>(shift >> 6);
    const unsigned bit_shift = static_cast<unsigned>(shift & 63);
    const std::size_t n = words_.size();
    for (std::size_t i = n; i-- > word_shift;) {
      std::uint64_t v = src.words_[i - word_shift] & mask.words_[i - word_shift];
      if (bit_shift) {
        v <<= bit_shift;
        if (i - word_shift > 0) {
          const std::uint64_t lo =
              src.words_[i - word_shift - 1] & mask.words_[i - word_shift - 1];
          v |= lo >> (64 - bit_shift);
        }
      }
      words_[i] |= v;
    }
    trim();
  }

  friend bool operator==(const FecSet& a, const FecSet& b) {
    return a.bits_ == b.bits_ && a.words_ == b.words_;
  }

 private:
  void check_index(std::uint64_t k) const {
    if (k >= bits_) throw ContractError("bit index outside FEC set");
  }
  void check_width(const FecSet& other) const {
    if (other.bits_ != bits_) throw ContractError("FEC set width mismatch");
  }
  void trim() {
    const unsigned tail = static_cast<unsigned>(bits_ & 63);
    if (tail && !words_.empty()) {
      words_.back() &= (std::uint64_t{1} << tail) - 1;
    }
  }

  std::uint64_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

// Edit masks for a profile: mask i selects indices whose coordinate i is
// still below quota, so the shifted copy stays inside the lattice.
inline std::vector<FecSet> build_edit_masks(const EditProfile& p) {
  std::vector<FecSet> masks(p.op_count(), FecSet(p.length));
  for (std::uint64_t k = 0; k < p.length; ++k) {
    std::uint64_t rest = k;
    for (std::size_t i = 0; i < p.op_count(); ++i) {
      const std::uint64_t radix = static_cast<std::uint64_t>(p.quotas[i]) + 1;
      if (rest % radix < radix - 1) masks[i].set(k);
      rest /= radix;
    }
  }
  return masks;
}

// Shared per-profile kernel state: the profile plus its edit masks.
struct TransitionKernel {
  explicit TransitionKernel(EditProfile profile)
      : profile(std::move(profile)), masks(build_edit_masks(this->profile)) {}

  EditProfile profile;
  std::vector<FecSet> masks;
};

// target |= edge(source). Match copies; Sub/Ins/Del shift once per
// matching op index.
inline void transition(const FecSet& source, EdgeKind kind, char from_c,
                       char to_c, const TransitionKernel& kernel,
                       FecSet& target) {
  if (kind == EdgeKind::Match) {
    target.or_with(source);
    return;
  }
  std::uint64_t m = match_mask(kernel.profile, kind, from_c, to_c);
  while (m) {
    const int i = std::countr_zero(m);
    m &= m - 1;
    target.or_masked_shift(source, kernel.masks[static_cast<std::size_t>(i)],
                           kernel.profile.shift_amount[static_cast<std::size_t>(i)]);
  }
}

// L minus the lowest set bit index; 0 when the set is empty, meaning the
// target is unreachable within quota.
inline std::uint64_t loss(const FecSet& set) {
  const std::uint64_t low = set.lowest_bit();
  return set.bit_size() - low;
}

// Set bits decoded to tuples, ascending by index.
inline std::vector<FecTuple> to_tuples(const FecSet& set,
                                       const EditProfile& p) {
  if (set.bit_size() != p.length) throw ContractError("FEC set width mismatch");
  std::vector<FecTuple> out;
  for (std::uint64_t k = 0; k < p.length; ++k) {
    if (set.test(k)) out.push_back(index_encode(p, k));
  }
  return out;
}

inline FecSet from_tuples(const std::vector<FecTuple>& tuples,
                          const EditProfile& p) {
  FecSet set(p.length);
  for (const auto& t : tuples) set.set(index_decode(p, t));
  return set;
}

// "{(1,0,0),(0,1,1)}" with tuples ascending by index.
inline std::string format_tuples(const FecSet& set, const EditProfile& p) {
  std::string out = "{";
  bool first = true;
  for (const auto& t : to_tuples(set, p)) {
    if (!first) out += ',';
    first = false;
    out += '(';
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(t[i]);
    }
    out += ')';
  }
  out += '}';
  return out;
}

// Bit string in 8-bit groups, lowest index first: "01000100 00000001 ...".
inline std::string format_bits(const FecSet& set) {
  std::string out;
  for (std::uint64_t k = 0; k < set.bit_size(); ++k) {
    if (k && k % 8 == 0) out += ' ';
    out += set.test(k) ? '1' : '0';
  }
  return out;
}

}  // namespace ecg
