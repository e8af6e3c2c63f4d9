#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ftlab/error.hpp"
#include "ftlab/rng.hpp"

namespace ftlab {

// Fixed-width bit vector packed into 64-bit words. Width is set at
// construction; XOR requires equal widths.
class BitVec {
 public:
  BitVec() : bits_(0) {}
  explicit BitVec(size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

  static BitVec random(size_t bits, SplitMix64& rng) {
    BitVec v(bits);
    for (auto& w : v.words_) w = rng.next();
    v.mask_tail();
    return v;
  }

  size_t size() const { return bits_; }
  bool empty() const { return bits_ == 0; }

  bool get(size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

  void set(size_t i, bool value) {
    uint64_t mask = uint64_t(1) << (i & 63);
    if (value)
      words_[i >> 6] |= mask;
    else
      words_[i >> 6] &= ~mask;
  }

  void xor_with(const BitVec& other) {
    require(bits_ == other.bits_, ErrorKind::DimensionMismatch, "bit vector width mismatch");
    for (size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  }

  bool is_zero() const {
    for (uint64_t w : words_)
      if (w) return false;
    return true;
  }

  bool operator==(const BitVec& other) const {
    return bits_ == other.bits_ && words_ == other.words_;
  }
  bool operator!=(const BitVec& other) const { return !(*this == other); }

  const std::vector<uint64_t>& words() const { return words_; }

  // Hex string, low nibble first; fixed length ceil(bits/4).
  std::string to_hex() const {
    static const char* digits = "0123456789abcdef";
    size_t nibbles = (bits_ + 3) / 4;
    std::string out(nibbles, '0');
    for (size_t i = 0; i < nibbles; ++i) {
      uint64_t w = words_[(i * 4) >> 6];
      out[i] = digits[(w >> ((i * 4) & 63)) & 0xf];
    }
    return out;
  }

  static BitVec from_hex(size_t bits, const std::string& hex) {
    BitVec v(bits);
    size_t nibbles = (bits + 3) / 4;
    require(hex.size() == nibbles, ErrorKind::IoError, "hex string length mismatch");
    for (size_t i = 0; i < nibbles; ++i) {
      char c = hex[i];
      uint64_t d;
      if (c >= '0' && c <= '9')
        d = c - '0';
      else if (c >= 'a' && c <= 'f')
        d = c - 'a' + 10;
      else if (c >= 'A' && c <= 'F')
        d = c - 'A' + 10;
      else
        fail(ErrorKind::IoError, "bad hex digit");
      v.words_[(i * 4) >> 6] |= d << ((i * 4) & 63);
    }
    v.mask_tail();
    return v;
  }

 private:
  void mask_tail() {
    if (bits_ & 63) words_.back() &= (uint64_t(1) << (bits_ & 63)) - 1;
  }

  size_t bits_;
  std::vector<uint64_t> words_;
};

}  // namespace ftlab
