#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "stablereg/errors.hpp"

namespace stablereg {

/// Fixed-universe bitset backed by 64-bit words. The universe size is set at
/// construction and never changes; all binary operations require equal sizes.
class Bitset {
 public:
  Bitset() = default;

  explicit Bitset(std::uint32_t size) : size_(size), words_(word_count(size), 0) {}

  static Bitset full(std::uint32_t size) {
    Bitset b(size);
    for (auto& w : b.words_) w = ~std::uint64_t{0};
    b.mask_tail();
    return b;
  }

  static Bitset singleton(std::uint32_t size, std::uint32_t index) {
    Bitset b(size);
    b.set(index);
    return b;
  }

  std::uint32_t size() const noexcept { return size_; }

  bool test(std::uint32_t i) const {
    check_index(i);
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }

  void set(std::uint32_t i) {
    check_index(i);
    words_[i >> 6] |= std::uint64_t{1} << (i & 63);
  }

  void reset(std::uint32_t i) {
    check_index(i);
    words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }

  std::uint32_t count() const noexcept {
    std::uint32_t c = 0;
    for (std::uint64_t w : words_) c += static_cast<std::uint32_t>(std::popcount(w));
    return c;
  }

  bool empty() const noexcept {
    for (std::uint64_t w : words_)
      if (w != 0) return false;
    return true;
  }

  bool intersects(const Bitset& other) const {
    check_size(other);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & other.words_[i]) return true;
    return false;
  }

  bool is_subset_of(const Bitset& other) const {
    check_size(other);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~other.words_[i]) return false;
    return true;
  }

  Bitset operator&(const Bitset& o) const { return zip(o, [](auto a, auto b) { return a & b; }); }
  Bitset operator|(const Bitset& o) const { return zip(o, [](auto a, auto b) { return a | b; }); }
  Bitset operator^(const Bitset& o) const { return zip(o, [](auto a, auto b) { return a ^ b; }); }
  /// Set difference: bits in *this but not in o.
  Bitset operator-(const Bitset& o) const { return zip(o, [](auto a, auto b) { return a & ~b; }); }

  Bitset operator~() const {
    Bitset r(size_);
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = ~words_[i];
    r.mask_tail();
    return r;
  }

  Bitset& operator&=(const Bitset& o) { return zip_inplace(o, [](auto a, auto b) { return a & b; }); }
  Bitset& operator|=(const Bitset& o) { return zip_inplace(o, [](auto a, auto b) { return a | b; }); }
  Bitset& operator-=(const Bitset& o) { return zip_inplace(o, [](auto a, auto b) { return a & ~b; }); }

  bool operator==(const Bitset& o) const = default;

  /// Index of the lowest set bit, or size() when none.
  std::uint32_t first_set() const noexcept { return next_set(0); }

  /// Index of the lowest set bit at or above `from`, or size() when none.
  std::uint32_t next_set(std::uint32_t from) const noexcept {
    if (from >= size_) return size_;
    std::size_t wi = from >> 6;
    std::uint64_t w = words_[wi] & (~std::uint64_t{0} << (from & 63));
    while (true) {
      if (w != 0)
        return static_cast<std::uint32_t>((wi << 6) + static_cast<std::uint32_t>(std::countr_zero(w)));
      if (++wi >= words_.size()) return size_;
      w = words_[wi];
    }
  }

  template <typename F>
  void for_each(F&& fn) const {
    for (std::uint32_t i = first_set(); i < size_; i = next_set(i + 1)) fn(i);
  }

  std::vector<std::uint32_t> to_indices() const {
    std::vector<std::uint32_t> out;
    out.reserve(count());
    for_each([&](std::uint32_t i) { out.push_back(i); });
    return out;
  }

  static Bitset from_indices(std::uint32_t size, std::span<const std::uint32_t> indices) {
    Bitset b(size);
    for (auto i : indices) b.set(i);
    return b;
  }

  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::span<std::uint64_t> words_mut() noexcept { return words_; }

  /// Clears bits past size(); callers that write raw words must call this.
  void mask_tail() noexcept {
    const std::uint32_t tail = size_ & 63;
    if (tail != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << tail) - 1;
  }

 private:
  static std::size_t word_count(std::uint32_t size) noexcept { return (std::size_t{size} + 63) / 64; }

  void check_index(std::uint32_t i) const {
    if (i >= size_) [[unlikely]]
      raise(Errc::index_out_of_range, "bit index " + std::to_string(i) + " out of range [0," +
                                          std::to_string(size_) + ")");
  }

  void check_size(const Bitset& other) const {
    require(size_ == other.size_, Errc::side_mismatch, "bitset universe sizes differ");
  }

  template <typename Op>
  Bitset zip(const Bitset& o, Op op) const {
    check_size(o);
    Bitset r(size_);
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = op(words_[i], o.words_[i]);
    return r;
  }

  template <typename Op>
  Bitset& zip_inplace(const Bitset& o, Op op) {
    check_size(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] = op(words_[i], o.words_[i]);
    return *this;
  }

  std::uint32_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BitsetHash {
  std::size_t operator()(const Bitset& b) const noexcept {
    std::size_t h = std::hash<std::uint32_t>{}(b.size());
    for (std::uint64_t w : b.words()) h = h * 1099511628211ULL + std::hash<std::uint64_t>{}(w);
    return h;
  }
};

}  // namespace stablereg
