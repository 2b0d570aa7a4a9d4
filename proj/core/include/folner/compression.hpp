#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "folner/operator_spec.hpp"
#include "folner/window.hpp"

namespace folner {

// Default cap on window sizes handled by dense paths; the CLI exposes the
// FOLNER_SIZE_CAP override.
inline constexpr std::size_t kDefaultSizeCap = 16384;

// Dense finite section P_F T P_F with exact entries
// entries(a, b) = entry(source, F[a], F[b]). No Hermitian symmetrization is
// applied; a formally self-adjoint source yields a matrix that is Hermitian
// to within accumulation tolerance 1e-12.
struct CompressionMatrix {
  WindowProjection window;
  Eigen::MatrixXcd entries;
  OperatorSpec source;
};

CompressionMatrix compress(const OperatorSpec& spec, const WindowProjection& window,
                           std::size_t size_cap = kDefaultSizeCap);

// The two off-diagonal blocks of T in the P/(I-P) splitting, restricted to
// their exact finite supports (computed from the band or Cuntz structure,
// never truncated):
//
//   b = P T (I-P)   rows = window, columns = b_cols
//   c = (I-P) T P   rows = c_rows, columns = window
//
// In that splitting [T, P] = [[0, -b], [c, 0]], so the singular values of
// [T, P] are the union of those of b and c.
struct CommutatorBlocks {
  Eigen::MatrixXcd b;
  std::vector<Index> b_cols;
  Eigen::MatrixXcd c;
  std::vector<Index> c_rows;

  // |b|_2^2 + |c|_2^2 with Eigen's fixed accumulation order.
  double hs_sq() const { return b.squaredNorm() + c.squaredNorm(); }
};

CommutatorBlocks boundary_blocks(const OperatorSpec& spec, const WindowProjection& window);

// (|P T (I-P)|_2^2, |(I-P) T P|_2^2) computed by streaming over the boundary
// supports without materializing the blocks. Deterministic accumulation
// order: ascending window position, then ascending support index.
std::pair<double, double> boundary_hs_sq(const OperatorSpec& spec,
                                         const WindowProjection& window);

}  // namespace folner
