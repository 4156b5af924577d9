#pragma once

#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace qoincl {

// Fixed-size dense bitset. Size is set at construction; all binary
// operations require equal sizes.
class BitSet {
 public:
  using Block = std::uint64_t;
  static constexpr std::size_t kBlockBits = 64;

  BitSet() = default;
  explicit BitSet(std::size_t size) : size_(size), blocks_(blocks_for(size), 0) {}

  static std::size_t blocks_for(std::size_t bits) { return (bits + kBlockBits - 1) / kBlockBits; }

  std::size_t size() const { return size_; }

  bool test(std::size_t i) const {
    assert(i < size_);
    return (blocks_[i / kBlockBits] >> (i % kBlockBits)) & 1u;
  }
  void set(std::size_t i) {
    assert(i < size_);
    blocks_[i / kBlockBits] |= Block{1} << (i % kBlockBits);
  }
  void reset(std::size_t i) {
    assert(i < size_);
    blocks_[i / kBlockBits] &= ~(Block{1} << (i % kBlockBits));
  }

  bool none() const {
    for (Block b : blocks_)
      if (b != 0) return false;
    return true;
  }
  bool any() const { return !none(); }

  std::size_t count() const {
    std::size_t n = 0;
    for (Block b : blocks_) n += static_cast<std::size_t>(std::popcount(b));
    return n;
  }

  bool is_subset_of(const BitSet& other) const {
    assert(size_ == other.size_);
    for (std::size_t i = 0; i < blocks_.size(); ++i)
      if ((blocks_[i] & ~other.blocks_[i]) != 0) return false;
    return true;
  }

  bool intersects(const BitSet& other) const {
    assert(size_ == other.size_);
    for (std::size_t i = 0; i < blocks_.size(); ++i)
      if ((blocks_[i] & other.blocks_[i]) != 0) return true;
    return false;
  }

  BitSet& operator|=(const BitSet& other) {
    assert(size_ == other.size_);
    for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] |= other.blocks_[i];
    return *this;
  }
  BitSet& operator&=(const BitSet& other) {
    assert(size_ == other.size_);
    for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] &= other.blocks_[i];
    return *this;
  }

  // Calls f(i) for every set bit in increasing order.
  template <class F>
  void for_each(F&& f) const {
    for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
      Block b = blocks_[bi];
      while (b != 0) {
        const auto tz = static_cast<std::size_t>(std::countr_zero(b));
        f(bi * kBlockBits + tz);
        b &= b - 1;
      }
    }
  }

  std::vector<std::size_t> elements() const {
    std::vector<std::size_t> out;
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  const std::vector<Block>& blocks() const { return blocks_; }
  std::vector<Block>& mutable_blocks() { return blocks_; }

  friend bool operator==(const BitSet&, const BitSet&) = default;

  std::size_t hash() const {
    std::size_t h = size_;
    for (Block b : blocks_) h = h * 0x9E3779B97F4A7C15ull ^ std::hash<Block>{}(b);
    return h;
  }

 private:
  std::size_t size_ = 0;
  std::vector<Block> blocks_;
};

// Square boolean matrix with word-aligned rows; row r holds the set
// {c | (r, c) in relation}.
class BitMatrix {
 public:
  using Block = BitSet::Block;

  BitMatrix() = default;
  explicit BitMatrix(std::size_t n)
      : n_(n), stride_(BitSet::blocks_for(n)), blocks_(n * stride_, 0) {}

  static BitMatrix identity(std::size_t n) {
    BitMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i);
    return m;
  }

  std::size_t dim() const { return n_; }

  bool test(std::size_t r, std::size_t c) const {
    assert(r < n_ && c < n_);
    return (blocks_[r * stride_ + c / 64] >> (c % 64)) & 1u;
  }
  void set(std::size_t r, std::size_t c) {
    assert(r < n_ && c < n_);
    blocks_[r * stride_ + c / 64] |= Block{1} << (c % 64);
  }
  void reset(std::size_t r, std::size_t c) {
    assert(r < n_ && c < n_);
    blocks_[r * stride_ + c / 64] &= ~(Block{1} << (c % 64));
  }

  BitSet row(std::size_t r) const {
    BitSet s(n_);
    auto& dst = s.mutable_blocks();
    for (std::size_t k = 0; k < stride_; ++k) dst[k] = blocks_[r * stride_ + k];
    return s;
  }

  void or_row_into(std::size_t r, const BitSet& s) {
    assert(s.size() == n_);
    const auto& sb = s.blocks();
    for (std::size_t i = 0; i < stride_; ++i) blocks_[r * stride_ + i] |= sb[i];
  }

  // Relational composition: (this ; other)(p, q) iff exists m with
  // this(p, m) and other(m, q).
  BitMatrix compose(const BitMatrix& other) const {
    assert(n_ == other.n_);
    BitMatrix out(n_);
    for (std::size_t p = 0; p < n_; ++p) {
      Block* dst = &out.blocks_[p * stride_];
      for (std::size_t bi = 0; bi < stride_; ++bi) {
        Block b = blocks_[p * stride_ + bi];
        while (b != 0) {
          const std::size_t m = bi * 64 + static_cast<std::size_t>(std::countr_zero(b));
          const Block* src = &other.blocks_[m * stride_];
          for (std::size_t k = 0; k < stride_; ++k) dst[k] |= src[k];
          b &= b - 1;
        }
      }
    }
    return out;
  }

  // Image of a row vector: {q | exists p in s, (p, q)}.
  BitSet image(const BitSet& s) const {
    assert(s.size() == n_);
    BitSet out(n_);
    auto& dst = out.mutable_blocks();
    s.for_each([&](std::size_t p) {
      for (std::size_t k = 0; k < stride_; ++k) dst[k] |= blocks_[p * stride_ + k];
    });
    return out;
  }

  bool is_subset_of(const BitMatrix& other) const {
    assert(n_ == other.n_);
    for (std::size_t i = 0; i < blocks_.size(); ++i)
      if ((blocks_[i] & ~other.blocks_[i]) != 0) return false;
    return true;
  }

  bool none() const {
    for (Block b : blocks_)
      if (b != 0) return false;
    return true;
  }

  std::size_t count() const {
    std::size_t n = 0;
    for (Block b : blocks_) n += static_cast<std::size_t>(std::popcount(b));
    return n;
  }

  const std::vector<Block>& blocks() const { return blocks_; }

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

  std::size_t hash() const {
    std::size_t h = n_;
    for (Block b : blocks_) h = h * 0x9E3779B97F4A7C15ull ^ std::hash<Block>{}(b);
    return h;
  }

 private:
  std::size_t n_ = 0;
  std::size_t stride_ = 0;
  std::vector<Block> blocks_;
};

}  // namespace qoincl
