#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "folner/compression.hpp"
#include "folner/operator_spec.hpp"
#include "folner/window.hpp"

namespace folner {

enum class SchattenP { One, Two, Op };

// Schatten norm of the commutator [T, P_F]. p = 2 is the square root of the
// exact entry-square sums of the two boundary blocks; p = 1 sums their
// singular values; p = op takes the largest one.
double commutator_norm(const OperatorSpec& spec, const WindowProjection& window, SchattenP p);

// |[T, P]|_p / |P|_p for p in {1, 2}; |P|_p = |F|^{1/p}.
double folner_ratio(const OperatorSpec& spec, const WindowProjection& window, SchattenP p);

// Largest ratio over a (nonempty) set of operators.
double joint_folner_ratio(std::span<const OperatorSpec> specs, const WindowProjection& window,
                          SchattenP p);

// Squared p=2 ratios (|[T, P]|_2^2 / |F|) computed without the square root,
// for bit-level identity checks against boundary_hs_sq.
double folner_ratio_sq(const OperatorSpec& spec, const WindowProjection& window);
double joint_folner_ratio_sq(std::span<const OperatorSpec> specs, const WindowProjection& window);

// For self-adjoint T the commutator splits into adjoint blocks, so
// |[T, P]|_2^2 = 2 |(I-P) T P|_2^2. Reports both sides and their distance;
// the contract is deviation <= 1e-10 * max(1, lhs).
struct HalfBlockIdentity {
  double lhs;  // |[T,P]|_2^2
  double rhs;  // 2 |(I-P) T P|_2^2
  double deviation;
};
HalfBlockIdentity sa_halfblock_identity(const OperatorSpec& spec, const WindowProjection& window);

// Direct-sum padding of the left operator (rank-d^2 interval window) with an
// arbitrary right operator behind a rank-d interval window:
//
//   ratio^2 = (|[T,P]|_2^2 + |[X,Q]|_2^2) / (d^2 + d)
//   bound^2 = (|[T,P]|_2 / d)^2 + 4 |X|^2 d / (d^2 + d)
//
// with |X| upper-estimated by the Schur test (operator_norm_bound), so that
// ratio <= bound always holds.
struct PaddedRatio {
  Index left_rank;   // d^2
  Index right_rank;  // d
  double hs_sq_left;
  double hs_sq_right;
  double ratio_sq;
  double ratio;
  double bound;
  double left_ratio;
  double right_norm_bound;
};
PaddedRatio padded_ratio(const OperatorSpec& left, const OperatorSpec& right, Index d,
                         std::size_t size_cap = kDefaultSizeCap);

// Grid driver. Windows are the storage intervals {0, ..., d-1}; for FullLine
// operators an odd d realizes the symmetric site window {-m, ..., m} folded
// through fold_site. Joint (max) ratios when several specs are given.
struct ProfileRow {
  Index window_start;
  Index window_len;
  std::optional<double> ratio1;
  std::optional<double> ratio2;
  std::optional<double> opnorm_comm;
};
struct PSet {
  bool p1 = true;
  bool p2 = true;
  bool op = true;
};
struct FolnerProfile {
  std::string spec_hash;
  std::vector<ProfileRow> rows;
};

FolnerProfile profile(std::span<const OperatorSpec> specs, std::span<const Index> dims, PSet pset,
                      std::size_t size_cap = kDefaultSizeCap);

// CSV schema: window_start,window_len,ratio1,ratio2,opnorm_comm with a header
// comment carrying the spec hash. Full double precision (17 digits).
void write_profile_csv(std::ostream& os, const FolnerProfile& profile);

}  // namespace folner
