#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "folner/compression.hpp"
#include "folner/operator_spec.hpp"
#include "folner/window.hpp"

namespace folner {

enum class SearchStrategy { Interval, Greedy };
enum class DecayFlag { Decaying, Flat, Inconclusive };

const char* to_string(SearchStrategy s);
const char* to_string(DecayFlag f);

// Search over coordinate windows F, |F| = size, F subset of {0..max_index-1},
// minimizing the joint p=2 ratio. Coordinate projections only: the result is
// an UPPER bound on the infimum over finite-rank projections restricted to
// that family, never the true infimum. Every interval window of the requested
// size is evaluated as a seed, so the result is never worse than the best
// interval; the greedy strategy then grows windows index-by-index (smallest
// index wins ties) and refines them by single-element exchanges until no
// improvement or the evaluation budget runs out.
struct SearchResult {
  WindowProjection best_window;
  double best_ratio;  // joint p=2 ratio, recomputed independently from the blocks
  SearchStrategy strategy;
  std::uint64_t evaluations;
  DecayFlag decay_flag;  // set by nonfolner_probe; Inconclusive otherwise
};

struct SearchOptions {
  SearchStrategy strategy = SearchStrategy::Greedy;
  std::uint64_t budget = 1'000'000;
  int restarts = 8;
  std::uint64_t seed = 0;
};

SearchResult subset_search(std::span<const OperatorSpec> specs, Index max_index, Index size,
                           const SearchOptions& options = {});

// Runs subset_search along an ascending size schedule and classifies the
// decay of the best ratios: "decaying" once they fall below epsilon, "flat"
// when the log-log slope over the last (up to) five points stays below
// flat_slope in magnitude while the ratios stay above epsilon.
struct ProbeResult {
  SearchResult best;
  DecayFlag decay_flag;
  std::vector<std::pair<Index, double>> trace;  // (size, best ratio) per schedule point
  double slope = std::numeric_limits<double>::quiet_NaN();
};

ProbeResult nonfolner_probe(std::span<const OperatorSpec> specs, std::span<const Index> schedule,
                            double epsilon = 0.05, double flat_slope = 0.05,
                            const SearchOptions& options = {}, Index max_index = 0);

// Inscribed numerical-range polygon from boundary support points: for each
// angle, the top eigenvector x of Re(e^{-i theta} A) yields the boundary
// point <A x, x>. The polygon sits inside W(A), so
// dist(0, W(A)) <= distance_to_origin.
struct NumericalRangePolygon {
  std::vector<Complex> support_points;  // one per angle
  std::vector<Complex> vertices;        // convex hull, counter-clockwise
  double distance_to_origin;
};

NumericalRangePolygon numerical_range(const Eigen::MatrixXcd& a, int angles);

// Distances dist(0, inscribed polygon of W([T_d, X])) over seeded random
// banded contractions X (entries uniform in the unit disk). The true distance
// dist(0, W([A, B])) is 0 for every finite commutator (its normalized trace
// is the mean of the diagonal entries, which lies in W), so the reported
// numbers measure polygon resolution rather than finiteness.
struct FinitenessRow {
  Index d;
  std::vector<double> distances;
  double max_distance;
};

std::vector<FinitenessRow> finiteness_probe(const OperatorSpec& spec, std::span<const Index> dims,
                                            int samples, int angles = 64, std::uint64_t seed = 0,
                                            Index x_band = 2,
                                            std::size_t size_cap = kDefaultSizeCap);

// JSON search report: {strategy, budget, best_window (run-length encoded),
// best_ratio, decay_flag, per_dim trace}.
struct SearchReport {
  SearchStrategy strategy;
  std::uint64_t budget;
  const SearchResult* result;
  std::span<const std::pair<Index, double>> per_dim;
  double slope = std::numeric_limits<double>::quiet_NaN();
};

std::string search_report_json(const SearchReport& report);

}  // namespace folner
