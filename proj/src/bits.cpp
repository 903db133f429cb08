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

#include "spt/bits.hpp"

#include "spt/errors.hpp"

namespace spt {

Bits Bits::from_string(std::string_view text) {
  Bits b(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') {
      b.set(i);
    } else if (text[i] != '0') {
      throw std::invalid_argument("bitstring may only contain '0' and '1': " + std::string(text));
    }
  }
  return b;
}

Bits Bits::from_indices(std::size_t n, const std::vector<std::size_t>& indices) {
  Bits b(n);
  for (auto i : indices) {
    if (i >= n) throw RangeError("bit index " + std::to_string(i) + " out of range");
    b.set(i);
  }
  return b;
}

Bits Bits::from_uint(std::size_t n, std::uint64_t value) {
  Bits b(n);
  if (n == 0) return b;
  if (n < 64) value &= (std::uint64_t{1} << n) - 1;
  b.words_[0] = value;
  return b;
}

std::vector<std::size_t> Bits::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t word = words_[w];
    while (word) {
      out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(word)));
      word &= word - 1;
    }
  }
  return out;
}

std::string Bits::to_string() const {
  std::string s(n_, '0');
  for (std::size_t i = 0; i < n_; ++i) {
    if (get(i)) s[i] = '1';
  }
  return s;
}

Bits& Bits::operator^=(const Bits& o) {
  if (o.n_ != n_) throw DimensionError("bitset size mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
  return *this;
}

Bits& Bits::operator&=(const Bits& o) {
  if (o.n_ != n_) throw DimensionError("bitset size mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
  return *this;
}

Bits& Bits::operator|=(const Bits& o) {
  if (o.n_ != n_) throw DimensionError("bitset size mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
  return *this;
}

Bits Bits::operator~() const {
  Bits r(n_);
  for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = ~words_[i];
  if (n_ % 64 != 0 && !r.words_.empty()) {
    r.words_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
  }
  return r;
}

std::size_t Bits::hash() const {
  std::size_t h = n_ * 0x9e3779b97f4a7c15ULL;
  for (auto w : words_) {
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace spt
