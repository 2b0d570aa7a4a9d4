#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "folner/compression.hpp"
#include "folner/operator_spec.hpp"

namespace folner {

// Eigenvalue counting measure of the interval compression T_d: sorted
// eigenvalues with uniform weight 1/d.
struct EmpiricalMeasure {
  std::vector<double> atoms;  // ascending
  std::size_t dim() const { return atoms.size(); }
};

EmpiricalMeasure counting_measure(const OperatorSpec& spec, Index d,
                                  std::size_t size_cap = kDefaultSizeCap);

// Reference spectral measure, represented by sorted samples with uniform
// weights. SymbolPushforward samples the real Toeplitz symbol
// phi(theta) = sum_k c_k e^{i k theta} on a uniform grid; sample averages of
// phi^k are exact moments once the grid exceeds 2k+1 points. Oracle wraps a
// counting measure at a larger dimension.
struct ReferenceMeasure {
  enum class Kind { SymbolPushforward, Oracle };
  Kind kind;
  std::vector<double> samples;  // ascending
};

ReferenceMeasure symbol_pushforward(std::span<const Complex> coeffs, int c0_index,
                                    std::size_t grid = std::size_t{1} << 16);
ReferenceMeasure oracle_measure(const OperatorSpec& spec, Index d,
                                std::size_t size_cap = kDefaultSizeCap);

// Kolmogorov distance between two discrete measures with uniform weights:
// sup over the merged atom grid of the CDF difference. A metric in [0, 1].
double kolmogorov_distance(std::span<const double> a, std::span<const double> b);
double kolmogorov_distance(const EmpiricalMeasure& a, const EmpiricalMeasure& b);
double kolmogorov_distance(const EmpiricalMeasure& a, const ReferenceMeasure& b);

// k-th moment (mean of atom^k); moment 0 is 1 by normalization.
double moment(std::span<const double> atoms, int k);

// Moment error table |moment_k(mu^d) - moment_k(ref)| for k = 1..k_max.
std::vector<double> moment_report(const OperatorSpec& spec, Index d, int k_max,
                                  const ReferenceMeasure& ref,
                                  std::size_t size_cap = kDefaultSizeCap);

// Finite-window trace state Tr(A P_F) / Tr(P_F) = (1/|F|) sum_{i in F} A_ii.
Complex trace_state(const OperatorSpec& observable, const WindowProjection& window);

// One row of the convergence report at dimension d. trace_resid[k-1] is the
// consistency gap |moment_k(mu^d) - trace_state(T^k)|; its analytic
// band-boundary bound 2 k w M^k / d (w the storage bandwidth, M the Schur
// norm bound) sits alongside in collar_bound.
inline constexpr int kSzegoMomentCount = 8;

struct SzegoRow {
  Index d = 0;
  double ks = 0.0;
  std::array<double, kSzegoMomentCount> moment_err{};
  std::array<double, kSzegoMomentCount> trace_resid{};
  std::array<double, kSzegoMomentCount> collar_bound{};
};

struct SzegoReport {
  std::string spec_hash;
  std::vector<SzegoRow> rows;
};

SzegoReport szego_report(const OperatorSpec& spec, std::span<const Index> dims,
                         const ReferenceMeasure& ref, std::size_t size_cap = kDefaultSizeCap);

// CSV schema: d,ks_dist,m1_err..m8_err,trace_resid_1..trace_resid_8.
void write_szego_csv(std::ostream& os, const SzegoReport& report);

struct HistogramBin {
  double left;
  double right;
  double mass;
};

std::vector<HistogramBin> histogram(const EmpiricalMeasure& mu, int bins = 200);

// CSV schema: bin_left,bin_right,mass.
void write_histogram_csv(std::ostream& os, std::span<const HistogramBin> bins);

}  // namespace folner
