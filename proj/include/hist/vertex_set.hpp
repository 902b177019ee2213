#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "hist/errors.hpp"

namespace hist {

// Subset of the vertex ids [0, n). Fixed universe, word-packed so that
// membership, union, difference and intersection are O(n/64).
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(int n) : n_(n), w_((n + 63) / 64, 0) {}

  static VertexSet full(int n) {
    VertexSet s(n);
    for (int v = 0; v < n; ++v) s.insert(v);
    return s;
  }

  static VertexSet of(int n, std::initializer_list<int> vs) {
    VertexSet s(n);
    for (int v : vs) s.insert(v);
    return s;
  }

  static VertexSet from(int n, const std::vector<int>& vs) {
    VertexSet s(n);
    for (int v : vs) s.insert(v);
    return s;
  }

  static VertexSet from_mask(int n, std::uint64_t mask) {
    VertexSet s(n);
    if (n > 0) s.w_[0] = mask;
    return s;
  }

  int universe() const { return n_; }
  bool contains(int v) const { return v >= 0 && v < n_ && ((w_[v >> 6] >> (v & 63)) & 1u); }
  void insert(int v) { w_[v >> 6] |= std::uint64_t{1} << (v & 63); }
  void erase(int v) { w_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }

  int size() const {
    int c = 0;
    for (auto x : w_) c += std::popcount(x);
    return c;
  }
  bool empty() const {
    for (auto x : w_)
      if (x) return false;
    return true;
  }

  // Smallest member, or -1 when empty.
  int first() const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i]) return int(i * 64 + std::countr_zero(w_[i]));
    return -1;
  }

  std::vector<int> to_vector() const {
    std::vector<int> out;
    out.reserve(size());
    for (std::size_t i = 0; i < w_.size(); ++i) {
      std::uint64_t x = w_[i];
      while (x) {
        out.push_back(int(i * 64 + std::countr_zero(x)));
        x &= x - 1;
      }
    }
    return out;
  }

  std::uint64_t to_mask() const {
    if (n_ > 64) throw error(errc::too_large, "VertexSet universe exceeds 64");
    return w_.empty() ? 0 : w_[0];
  }

  VertexSet& operator|=(const VertexSet& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  VertexSet& operator&=(const VertexSet& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  VertexSet& operator-=(const VertexSet& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
    return *this;
  }

  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

  bool operator==(const VertexSet& o) const { return n_ == o.n_ && w_ == o.w_; }

  bool is_subset_of(const VertexSet& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }
  bool intersects(const VertexSet& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }

  // Lexicographic order on the sorted member lists, e.g. {0,2} < {0,3} < {1}.
  bool lex_less(const VertexSet& o) const {
    auto a = to_vector(), b = o.to_vector();
    return a < b;
  }

 private:
  int n_ = 0;
  std::vector<std::uint64_t> w_;
};

}  // namespace hist
