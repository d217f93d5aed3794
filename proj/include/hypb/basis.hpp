#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>

#include "hypb/group.hpp"

namespace hypb {

/// Indexing of the depth-N cylinders of dF_k (reduced words of length N) in
/// prefix-major order: the first letter picks a block, every further letter
/// picks its rank among the 2k-1 admissible continuations. Descendants of a
/// stem therefore occupy a contiguous index range.
class CylinderBasis {
 public:
  CylinderBasis(const Alphabet& alph, int depth) : n_(alph.size()), depth_(depth) {
    if (depth < 0) throw std::invalid_argument("CylinderBasis: negative depth");
    size_ = depth == 0 ? 1 : static_cast<std::size_t>(n_);
    for (int i = 1; i < depth; ++i) size_ *= n_ - 1;
  }

  int depth() const { return depth_; }
  std::size_t size() const { return size_; }

  std::size_t index(const Word& w) const {
    if (static_cast<int>(w.size()) != depth_)
      throw std::invalid_argument("CylinderBasis::index: wrong word length");
    if (depth_ == 0) return 0;
    std::size_t idx = w[0];
    for (int i = 1; i < depth_; ++i) idx = idx * (n_ - 1) + continuation_rank(w[i - 1], w[i]);
    return idx;
  }

  Word word(std::size_t idx) const {
    std::vector<Letter> ls(depth_);
    if (depth_ > 0) {
      std::size_t block = size_ / n_;
      ls[0] = static_cast<Letter>(idx / block);
      idx %= block;
      for (int i = 1; i < depth_; ++i) {
        block /= n_ - 1;
        ls[i] = continuation_letter(ls[i - 1], static_cast<int>(idx / block));
        idx %= block;
      }
    }
    return Word(std::move(ls));
  }

  /// Index range [first, last) of depth-N descendants of a stem (stem length <= depth).
  std::pair<std::size_t, std::size_t> descendant_range(const Word& stem) const {
    if (static_cast<int>(stem.size()) > depth_)
      throw std::invalid_argument("CylinderBasis::descendant_range: stem deeper than basis");
    if (stem.empty()) return {0, size_};
    std::size_t lo = stem[0];
    for (std::size_t i = 1; i < stem.size(); ++i)
      lo = lo * (n_ - 1) + continuation_rank(stem[i - 1], stem[i]);
    std::size_t width = 1;
    for (int i = static_cast<int>(stem.size()); i < depth_; ++i) width *= n_ - 1;
    return {lo * width, (lo + 1) * width};
  }

  static int continuation_rank(Letter prev, Letter next) {
    return next - (next > Alphabet::inverse(prev) ? 1 : 0);
  }
  static Letter continuation_letter(Letter prev, int rank) {
    Letter l = static_cast<Letter>(rank);
    if (l >= Alphabet::inverse(prev)) ++l;
    return l;
  }

 private:
  int n_;
  int depth_;
  std::size_t size_;
};

}  // namespace hypb
