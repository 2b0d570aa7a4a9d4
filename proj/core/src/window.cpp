#include "folner/window.hpp"

#include <algorithm>

namespace folner {

WindowProjection::WindowProjection(std::vector<Index> indices) : indices_(std::move(indices)) {
  if (indices_.empty()) throw DomainError("window: index set must be nonempty");
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
  if (indices_.front() < 0)
    throw DomainError("window: negative storage index " + std::to_string(indices_.front()));
}

WindowProjection WindowProjection::interval(Index start, Index len) {
  if (len < 1) throw DomainError("window: interval length must be >= 1");
  if (start < 0) throw DomainError("window: interval start must be >= 0");
  std::vector<Index> idx(static_cast<std::size_t>(len));
  for (Index t = 0; t < len; ++t) idx[static_cast<std::size_t>(t)] = start + t;
  return WindowProjection(std::move(idx));
}

bool WindowProjection::contains(Index i) const {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

std::optional<std::size_t> WindowProjection::position(Index i) const {
  auto it = std::lower_bound(indices_.begin(), indices_.end(), i);
  if (it == indices_.end() || *it != i) return std::nullopt;
  return static_cast<std::size_t>(it - indices_.begin());
}

}  // namespace folner
