#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "folner/errors.hpp"
#include "folner/lattice.hpp"

namespace folner {

// Finite coordinate set F (storage indices) defining the orthogonal
// projection P_F onto span{e_i : i in F}. Immutable; always nonempty and
// sorted. |P_F|_p = |F|^{1/p} for p in {1,2}, |P_F|_op = 1.
class WindowProjection {
 public:
  explicit WindowProjection(std::vector<Index> indices);
  static WindowProjection interval(Index start, Index len);

  std::span<const Index> indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  Index operator[](std::size_t a) const { return indices_[a]; }

  bool contains(Index i) const;
  // Position of i within the sorted index list, if present.
  std::optional<std::size_t> position(Index i) const;

 private:
  std::vector<Index> indices_;
};

}  // namespace folner
