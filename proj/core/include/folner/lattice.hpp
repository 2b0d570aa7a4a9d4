#pragma once

#include <cstdint>

namespace folner {

using Index = std::int64_t;

// Index model for operators on l^2. HalfLine uses the nonnegative integers
// directly. FullLine (the integers) is stored on the nonnegative integers
// through the interleaving bijection fold_site:
//
//   site    0  -1   1  -2   2  -3   3 ...
//   storage 0   1   2   3   4   5   6 ...
//
// A site band of w folds into a storage band of at most 2w + 1.
enum class Lattice { HalfLine, FullLine };

constexpr Index fold_site(Index m) { return m >= 0 ? 2 * m : -2 * m - 1; }

constexpr Index unfold_site(Index i) { return i % 2 == 0 ? i / 2 : -(i + 1) / 2; }

constexpr const char* lattice_name(Lattice lattice) {
  return lattice == Lattice::HalfLine ? "half" : "full";
}

}  // namespace folner
