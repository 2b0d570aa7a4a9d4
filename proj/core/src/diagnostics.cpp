#include "folner/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "folner/linalg.hpp"

namespace folner {

namespace {

std::vector<double> commutator_singular_values(const OperatorSpec& spec,
                                               const WindowProjection& window) {
  const CommutatorBlocks blocks = boundary_blocks(spec, window);
  std::vector<double> s = linalg::singular_values(blocks.b);
  const std::vector<double> sc = linalg::singular_values(blocks.c);
  s.insert(s.end(), sc.begin(), sc.end());
  return s;
}

void format_double(std::string& out, double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  out += buf;
}

}  // namespace

double commutator_norm(const OperatorSpec& spec, const WindowProjection& window, SchattenP p) {
  if (p == SchattenP::Two) {
    const auto [hs_b, hs_c] = boundary_hs_sq(spec, window);
    return std::sqrt(hs_b + hs_c);
  }
  const std::vector<double> s = commutator_singular_values(spec, window);
  if (p == SchattenP::One) {
    double sum = 0.0;
    for (double v : s) sum += v;
    return sum;
  }
  double top = 0.0;
  for (double v : s) top = std::max(top, v);
  return top;
}

double folner_ratio(const OperatorSpec& spec, const WindowProjection& window, SchattenP p) {
  const auto size = static_cast<double>(window.size());
  switch (p) {
    case SchattenP::One:
      return commutator_norm(spec, window, p) / size;
    case SchattenP::Two: {
      const auto [hs_b, hs_c] = boundary_hs_sq(spec, window);
      return std::sqrt((hs_b + hs_c) / size);
    }
    case SchattenP::Op:
      throw DomainError("folner_ratio: p must be 1 or 2");
  }
  throw DomainError("folner_ratio: unknown p");
}

double joint_folner_ratio(std::span<const OperatorSpec> specs, const WindowProjection& window,
                          SchattenP p) {
  if (specs.empty()) throw DomainError("joint_folner_ratio: empty operator set");
  double best = 0.0;
  for (const OperatorSpec& spec : specs) best = std::max(best, folner_ratio(spec, window, p));
  return best;
}

double folner_ratio_sq(const OperatorSpec& spec, const WindowProjection& window) {
  const auto [hs_b, hs_c] = boundary_hs_sq(spec, window);
  return (hs_b + hs_c) / static_cast<double>(window.size());
}

double joint_folner_ratio_sq(std::span<const OperatorSpec> specs,
                             const WindowProjection& window) {
  if (specs.empty()) throw DomainError("joint_folner_ratio: empty operator set");
  double best = 0.0;
  for (const OperatorSpec& spec : specs) best = std::max(best, folner_ratio_sq(spec, window));
  return best;
}

HalfBlockIdentity sa_halfblock_identity(const OperatorSpec& spec,
                                        const WindowProjection& window) {
  if (!is_formally_selfadjoint(spec))
    throw PreconditionError("sa_halfblock_identity: operator is not formally self-adjoint");
  const auto [hs_b, hs_c] = boundary_hs_sq(spec, window);
  const double lhs = hs_b + hs_c;
  const double rhs = 2.0 * hs_c;
  return HalfBlockIdentity{lhs, rhs, std::abs(lhs - rhs)};
}

PaddedRatio padded_ratio(const OperatorSpec& left, const OperatorSpec& right, Index d,
                         std::size_t size_cap) {
  if (d < 1) throw DomainError("padded_ratio: d must be >= 1");
  const Index left_rank = d * d;
  if (static_cast<std::size_t>(left_rank) > size_cap)
    throw ResourceError("padded_ratio: rank " + std::to_string(left_rank) +
                        " exceeds the size cap " + std::to_string(size_cap));
  const WindowProjection p = WindowProjection::interval(0, left_rank);
  const WindowProjection q = WindowProjection::interval(0, d);

  const auto [lb, lc] = boundary_hs_sq(left, p);
  const auto [rb, rc] = boundary_hs_sq(right, q);

  PaddedRatio out;
  out.left_rank = left_rank;
  out.right_rank = d;
  out.hs_sq_left = lb + lc;
  out.hs_sq_right = rb + rc;
  const double denom = static_cast<double>(left_rank) + static_cast<double>(d);
  out.ratio_sq = (out.hs_sq_left + out.hs_sq_right) / denom;
  out.ratio = std::sqrt(out.ratio_sq);
  out.left_ratio = std::sqrt(out.hs_sq_left) / static_cast<double>(d);
  out.right_norm_bound = operator_norm_bound(right);
  const double bound_sq = out.left_ratio * out.left_ratio +
                          4.0 * out.right_norm_bound * out.right_norm_bound *
                              static_cast<double>(d) / denom;
  out.bound = std::sqrt(bound_sq);
  return out;
}

FolnerProfile profile(std::span<const OperatorSpec> specs, std::span<const Index> dims,
                      PSet pset, std::size_t size_cap) {
  if (specs.empty()) throw DomainError("profile: empty operator set");
  if (dims.empty()) throw DomainError("profile: empty dimension list");
  for (std::size_t t = 1; t < dims.size(); ++t)
    if (dims[t] <= dims[t - 1]) throw DomainError("profile: dims must be strictly ascending");

  FolnerProfile out;
  for (const Index d : dims) {
    if (static_cast<std::size_t>(d) > size_cap)
      throw ResourceError("profile: window size " + std::to_string(d) +
                          " exceeds the size cap " + std::to_string(size_cap));
    const WindowProjection window = WindowProjection::interval(0, d);
    ProfileRow row;
    row.window_start = 0;
    row.window_len = d;
    if (pset.p1) {
      double v = 0.0;
      for (const OperatorSpec& s : specs)
        v = std::max(v, folner_ratio(s, window, SchattenP::One));
      row.ratio1 = v;
    }
    if (pset.p2) {
      double v = 0.0;
      for (const OperatorSpec& s : specs)
        v = std::max(v, folner_ratio(s, window, SchattenP::Two));
      row.ratio2 = v;
    }
    if (pset.op) {
      double v = 0.0;
      for (const OperatorSpec& s : specs)
        v = std::max(v, commutator_norm(s, window, SchattenP::Op));
      row.opnorm_comm = v;
    }
    out.rows.push_back(row);
  }
  return out;
}

void write_profile_csv(std::ostream& os, const FolnerProfile& profile) {
  std::string body = "# spec_hash: " + profile.spec_hash + "\n";
  body += "window_start,window_len,ratio1,ratio2,opnorm_comm\n";
  for (const ProfileRow& row : profile.rows) {
    body += std::to_string(row.window_start);
    body += ',';
    body += std::to_string(row.window_len);
    for (const auto& field : {row.ratio1, row.ratio2, row.opnorm_comm}) {
      body += ',';
      if (field) format_double(body, *field);
    }
    body += '\n';
  }
  os << body;
}

}  // namespace folner
