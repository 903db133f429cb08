// Copyright 2026 The spt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace spt {

/// Fixed-length bitset stored in 64-bit words. Bit 0 is qubit 1 in the
/// usual one-based labelling, and the leftmost character of the text form.
class Bits {
 public:
  Bits() = default;
  explicit Bits(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  static Bits from_string(std::string_view text);
  static Bits from_indices(std::size_t n, const std::vector<std::size_t>& indices);
  /// Low `n` bits of `value`, bit q of the integer becoming bit q here.
  static Bits from_uint(std::size_t n, std::uint64_t value);

  std::size_t size() const { return n_; }
  std::size_t word_count() const { return words_.size(); }
  const std::vector<std::uint64_t>& words() const { return words_; }

  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool value = true) {
    const std::uint64_t m = std::uint64_t{1} << (i & 63);
    if (value) {
      words_[i >> 6] |= m;
    } else {
      words_[i >> 6] &= ~m;
    }
  }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  std::size_t popcount() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool parity() const { return popcount() & 1u; }
  bool any() const {
    for (auto w : words_) {
      if (w) return true;
    }
    return false;
  }
  bool none() const { return !any(); }

  /// Indices of set bits in ascending order.
  std::vector<std::size_t> indices() const;
  /// Low 64 bits as an integer; only meaningful for size() <= 64.
  std::uint64_t to_uint() const { return words_.empty() ? 0 : words_[0]; }
  std::string to_string() const;

  Bits& operator^=(const Bits& o);
  Bits& operator&=(const Bits& o);
  Bits& operator|=(const Bits& o);
  friend Bits operator^(Bits a, const Bits& b) { return a ^= b; }
  friend Bits operator&(Bits a, const Bits& b) { return a &= b; }
  friend Bits operator|(Bits a, const Bits& b) { return a |= b; }
  Bits operator~() const;

  /// Popcount of (a & b) without allocating.
  friend std::size_t and_popcount(const Bits& a, const Bits& b) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < a.words_.size(); ++i) {
      c += static_cast<std::size_t>(std::popcount(a.words_[i] & b.words_[i]));
    }
    return c;
  }

  friend bool operator==(const Bits&, const Bits&) = default;
  friend std::strong_ordering operator<=>(const Bits& a, const Bits& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    // Compare from the highest word so that the integer order is preserved.
    for (std::size_t i = a.words_.size(); i-- > 0;) {
      if (auto c = a.words_[i] <=> b.words_[i]; c != 0) return c;
    }
    return std::strong_ordering::equal;
  }

  std::size_t hash() const;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace spt

template <>
struct std::hash<spt::Bits> {
  std::size_t operator()(const spt::Bits& b) const noexcept { return b.hash(); }
};
