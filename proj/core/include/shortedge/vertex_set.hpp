#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace shortedge {

// Ground-set vertex label v_1 ... v_n. Label 0 is reserved for the root
// vertex v_0 of a drawing and never belongs to a ground set.
using Vertex = std::uint32_t;

// Fixed-size dense bitset, zero-based.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  std::size_t size() const noexcept { return size_; }
  std::size_t word_count() const noexcept { return words_.size(); }
  const std::uint64_t* words() const noexcept { return words_.data(); }
  std::uint64_t* words() noexcept { return words_.data(); }

  bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) noexcept { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  std::size_t count() const noexcept;
  bool none() const noexcept;

  // popcount(a ^ b)
  static std::size_t xor_count(const Bitset& a, const Bitset& b) noexcept;
  // popcount((a ^ b) & mask)
  static std::size_t xor_count_masked(const Bitset& a, const Bitset& b,
                                      const Bitset& mask) noexcept;

  friend bool operator==(const Bitset&, const Bitset&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

// Subset of the ground set {v_1, ..., v_n}.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t n) : bits_(n) {}
  VertexSet(std::size_t n, std::initializer_list<Vertex> members);
  VertexSet(std::size_t n, const std::vector<Vertex>& members);

  std::size_t ground_size() const noexcept { return bits_.size(); }
  bool contains(Vertex v) const noexcept {
    return v >= 1 && v <= bits_.size() && bits_.test(v - 1);
  }
  void insert(Vertex v);
  void erase(Vertex v);
  std::size_t size() const noexcept { return bits_.count(); }
  bool empty() const noexcept { return bits_.none(); }

  // Members in increasing label order.
  std::vector<Vertex> to_vector() const;
  const Bitset& bits() const noexcept { return bits_; }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  Bitset bits_;
};

}  // namespace shortedge
