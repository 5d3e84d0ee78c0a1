#include "shortedge/vertex_set.hpp"

#include <string>

#include "shortedge/errors.hpp"

namespace shortedge {

std::size_t Bitset::count() const noexcept {
  std::size_t c = 0;
  for (std::uint64_t w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool Bitset::none() const noexcept {
  for (std::uint64_t w : words_) {
    if (w != 0) return false;
  }
  return true;
}

std::size_t Bitset::xor_count(const Bitset& a, const Bitset& b) noexcept {
  std::size_t c = 0;
  const std::size_t k = a.words_.size();
  for (std::size_t i = 0; i < k; ++i) {
    c += static_cast<std::size_t>(std::popcount(a.words_[i] ^ b.words_[i]));
  }
  return c;
}

std::size_t Bitset::xor_count_masked(const Bitset& a, const Bitset& b,
                                     const Bitset& mask) noexcept {
  std::size_t c = 0;
  const std::size_t k = a.words_.size();
  for (std::size_t i = 0; i < k; ++i) {
    c += static_cast<std::size_t>(
        std::popcount((a.words_[i] ^ b.words_[i]) & mask.words_[i]));
  }
  return c;
}

VertexSet::VertexSet(std::size_t n, std::initializer_list<Vertex> members) : bits_(n) {
  for (Vertex v : members) insert(v);
}

VertexSet::VertexSet(std::size_t n, const std::vector<Vertex>& members) : bits_(n) {
  for (Vertex v : members) insert(v);
}

void VertexSet::insert(Vertex v) {
  if (v < 1 || v > bits_.size()) {
    throw RangeError("vertex v_" + std::to_string(v) + " outside ground set of size " +
                     std::to_string(bits_.size()));
  }
  bits_.set(v - 1);
}

void VertexSet::erase(Vertex v) {
  if (v >= 1 && v <= bits_.size()) bits_.reset(v - 1);
}

std::vector<Vertex> VertexSet::to_vector() const {
  std::vector<Vertex> out;
  const std::size_t k = bits_.word_count();
  const std::uint64_t* w = bits_.words();
  for (std::size_t i = 0; i < k; ++i) {
    std::uint64_t word = w[i];
    while (word != 0) {
      const int bit = std::countr_zero(word);
      out.push_back(static_cast<Vertex>(i * 64 + static_cast<std::size_t>(bit) + 1));
      word &= word - 1;
    }
  }
  return out;
}

}  // namespace shortedge
