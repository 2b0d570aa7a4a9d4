#include "folner/compression.hpp"

#include <algorithm>
#include <string>

namespace folner {

CompressionMatrix compress(const OperatorSpec& spec, const WindowProjection& window,
                           std::size_t size_cap) {
  if (window.size() > size_cap)
    throw ResourceError("compress: window size " + std::to_string(window.size()) +
                        " exceeds the size cap " + std::to_string(size_cap));
  const auto n = static_cast<Eigen::Index>(window.size());
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
  const std::span<const Index> idx = window.indices();
  for (Eigen::Index r = 0; r < n; ++r) {
    const SparseVec row = spec.row(idx[static_cast<std::size_t>(r)]);
    // Two-pointer walk: both the row support and the window are sorted.
    std::size_t w = 0;
    for (const auto& [j, v] : row) {
      while (w < window.size() && idx[w] < j) ++w;
      if (w == window.size()) break;
      if (idx[w] == j) a(r, static_cast<Eigen::Index>(w)) = v;
    }
  }
  return CompressionMatrix{window, std::move(a), spec};
}

CommutatorBlocks boundary_blocks(const OperatorSpec& spec, const WindowProjection& window) {
  const std::span<const Index> idx = window.indices();
  const auto n = static_cast<Eigen::Index>(window.size());

  // P T (I-P): for every window row, the support entries outside the window.
  std::vector<std::tuple<Eigen::Index, Index, Complex>> b_entries;
  std::vector<Index> b_cols;
  for (Eigen::Index r = 0; r < n; ++r) {
    for (const auto& [j, v] : spec.row(idx[static_cast<std::size_t>(r)])) {
      if (window.contains(j)) continue;
      b_entries.emplace_back(r, j, v);
      b_cols.push_back(j);
    }
  }
  std::sort(b_cols.begin(), b_cols.end());
  b_cols.erase(std::unique(b_cols.begin(), b_cols.end()), b_cols.end());

  // (I-P) T P: for every window column, the support entries outside.
  std::vector<std::tuple<Index, Eigen::Index, Complex>> c_entries;
  std::vector<Index> c_rows;
  for (Eigen::Index q = 0; q < n; ++q) {
    for (const auto& [i, v] : spec.col(idx[static_cast<std::size_t>(q)])) {
      if (window.contains(i)) continue;
      c_entries.emplace_back(i, q, v);
      c_rows.push_back(i);
    }
  }
  std::sort(c_rows.begin(), c_rows.end());
  c_rows.erase(std::unique(c_rows.begin(), c_rows.end()), c_rows.end());

  CommutatorBlocks blocks;
  blocks.b = Eigen::MatrixXcd::Zero(n, static_cast<Eigen::Index>(b_cols.size()));
  blocks.c = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(c_rows.size()), n);
  for (const auto& [r, j, v] : b_entries) {
    const auto pos = std::lower_bound(b_cols.begin(), b_cols.end(), j) - b_cols.begin();
    blocks.b(r, static_cast<Eigen::Index>(pos)) = v;
  }
  for (const auto& [i, q, v] : c_entries) {
    const auto pos = std::lower_bound(c_rows.begin(), c_rows.end(), i) - c_rows.begin();
    blocks.c(static_cast<Eigen::Index>(pos), q) = v;
  }
  blocks.b_cols = std::move(b_cols);
  blocks.c_rows = std::move(c_rows);
  return blocks;
}

std::pair<double, double> boundary_hs_sq(const OperatorSpec& spec,
                                         const WindowProjection& window) {
  double hs_b = 0.0, hs_c = 0.0;
  for (const Index i : window.indices()) {
    for (const auto& [j, v] : spec.row(i))
      if (!window.contains(j)) hs_b += std::norm(v);
  }
  for (const Index j : window.indices()) {
    for (const auto& [i, v] : spec.col(j))
      if (!window.contains(i)) hs_c += std::norm(v);
  }
  return {hs_b, hs_c};
}

}  // namespace folner
