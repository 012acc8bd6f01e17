#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace koszul {

/// A permutation of {0..n-1}, stored as the image array of a left action:
/// input slot p is sent to output slot images[p].
struct Permutation {
  std::vector<std::uint32_t> images;

  std::size_t size() const { return images.size(); }

  bool is_valid() const {
    std::vector<char> seen(images.size(), 0);
    for (auto v : images) {
      if (v >= images.size() || seen[v]) return false;
      seen[v] = 1;
    }
    return true;
  }

  static Permutation identity(std::size_t n) {
    Permutation p;
    p.images.resize(n);
    std::iota(p.images.begin(), p.images.end(), 0u);
    return p;
  }

  Permutation inverse() const {
    Permutation inv;
    inv.images.resize(images.size());
    for (std::uint32_t p = 0; p < images.size(); ++p) inv.images[images[p]] = p;
    return inv;
  }

  /// this after other: (a.compose(b))(p) = a(b(p)).
  Permutation compose(const Permutation& other) const {
    if (other.size() != size())
      throw std::invalid_argument("permutation size mismatch");
    Permutation r;
    r.images.resize(size());
    for (std::uint32_t p = 0; p < size(); ++p)
      r.images[p] = images[other.images[p]];
    return r;
  }
};

/// Sign of the permutation: parity of the inversion count.
inline int signature(const Permutation& p) {
  int inv = 0;
  for (std::size_t a = 0; a < p.images.size(); ++a)
    for (std::size_t b = a + 1; b < p.images.size(); ++b)
      if (p.images[a] > p.images[b]) ++inv;
  return (inv % 2 == 0) ? 1 : -1;
}

/// Koszul sign of rearranging homogeneous factors by p: each pair of inputs
/// that crosses (a before b on input, b before a on output) contributes
/// (-1)^{|a||b|}. `degrees` is indexed by input slot.
inline int koszul_sign(const Permutation& p, const std::vector<int>& degrees) {
  if (degrees.size() != p.images.size())
    throw std::invalid_argument("koszul_sign: degree list length mismatch");
  int parity = 0;
  for (std::size_t a = 0; a < p.images.size(); ++a)
    for (std::size_t b = a + 1; b < p.images.size(); ++b)
      if (p.images[a] > p.images[b])
        parity += (degrees[a] & 1) * (degrees[b] & 1);
  return (parity % 2 == 0) ? 1 : -1;
}

/// All (i_1,...,i_j)-shuffles: permutations increasing on each consecutive
/// block of input slots. Returns the empty list when a block size is -1
/// (the convention that such signed sums are zero); throws below -1.
inline std::vector<Permutation> enumerate_shuffles(
    const std::vector<int>& block_sizes) {
  long long total = 0;
  for (int b : block_sizes) {
    if (b == -1) return {};
    if (b < -1) throw std::invalid_argument("negative block size");
    total += b;
  }
  std::vector<Permutation> out;
  Permutation cur;
  cur.images.assign(static_cast<std::size_t>(total), 0);
  std::vector<char> used(static_cast<std::size_t>(total), 0);

  // Assign each block an increasing sequence of output slots.
  auto rec = [&](auto&& self, std::size_t block, std::size_t base) -> void {
    if (block == block_sizes.size()) {
      out.push_back(cur);
      return;
    }
    int len = block_sizes[block];
    if (len == 0) {
      self(self, block + 1, base);
      return;
    }
    // Choose `len` unused slots in increasing order.
    std::vector<std::uint32_t> slots;
    auto choose = [&](auto&& chooser, std::uint32_t from, int left) -> void {
      if (left == 0) {
        for (int t = 0; t < len; ++t) cur.images[base + t] = slots[t];
        for (auto s : slots) used[s] = 1;
        self(self, block + 1, base + len);
        for (auto s : slots) used[s] = 0;
        return;
      }
      for (std::uint32_t s = from; s < cur.images.size(); ++s) {
        if (used[s]) continue;
        slots.push_back(s);
        chooser(chooser, s + 1, left - 1);
        slots.pop_back();
      }
    };
    choose(choose, 0, len);
  };
  rec(rec, 0, 0);
  return out;
}

}  // namespace koszul
