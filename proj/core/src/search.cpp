#include "folner/search.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <nlohmann/json.hpp>

#include "folner/diagnostics.hpp"
#include "folner/linalg.hpp"

namespace folner {

const char* to_string(SearchStrategy s) {
  return s == SearchStrategy::Interval ? "interval" : "greedy";
}

const char* to_string(DecayFlag f) {
  switch (f) {
    case DecayFlag::Decaying:
      return "decaying";
    case DecayFlag::Flat:
      return "flat";
    case DecayFlag::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

namespace {

// Incremental evaluation of E_s(F) = |[T_s, P_F]|_2^2 over subsets of
// {0..m-1}. E(F) is the cut weight of F against its (infinite) complement in
// the pair graph w(u, v) = |t_uv|^2 + |t_vu|^2, so single-element updates are
// O(support). tot(u) sums w(u, .) over the whole lattice, not just the
// universe.
class CutEnsemble {
 public:
  CutEnsemble(std::span<const OperatorSpec> specs, Index m)
      : specs_(specs.begin(), specs.end()),
        m_(m),
        in_set_(static_cast<std::size_t>(m), 0),
        per_spec_(specs.size()) {
    for (PerSpec& ps : per_spec_) {
      ps.cut_to_set.assign(static_cast<std::size_t>(m), 0.0);
      ps.tot.assign(static_cast<std::size_t>(m), -1.0);
    }
  }

  Index universe() const { return m_; }
  std::size_t size() const { return size_; }
  bool member(Index u) const { return in_set_[static_cast<std::size_t>(u)] != 0; }

  void add(Index v) {
    for (std::size_t s = 0; s < per_spec_.size(); ++s) {
      PerSpec& ps = per_spec_[s];
      ps.e += tot(s, v) - 2.0 * ps.cut_to_set[static_cast<std::size_t>(v)];
    }
    touch_neighbors(v, +1.0);
    in_set_[static_cast<std::size_t>(v)] = 1;
    ++size_;
  }

  void remove(Index u) {
    for (std::size_t s = 0; s < per_spec_.size(); ++s) {
      PerSpec& ps = per_spec_[s];
      ps.e += -tot(s, u) + 2.0 * ps.cut_to_set[static_cast<std::size_t>(u)];
    }
    touch_neighbors(u, -1.0);
    in_set_[static_cast<std::size_t>(u)] = 0;
    --size_;
  }

  // max_s E_s(F + v) without mutating.
  double max_e_after_add(Index v) {
    double worst = 0.0;
    for (std::size_t s = 0; s < per_spec_.size(); ++s) {
      const PerSpec& ps = per_spec_[s];
      worst = std::max(
          worst, ps.e + tot(s, v) - 2.0 * per_spec_[s].cut_to_set[static_cast<std::size_t>(v)]);
    }
    return worst;
  }

  double ratio_sq() const {
    double worst = 0.0;
    for (const PerSpec& ps : per_spec_) worst = std::max(worst, ps.e);
    return worst / static_cast<double>(size_);
  }

  std::vector<Index> members() const {
    std::vector<Index> out;
    out.reserve(size_);
    for (Index u = 0; u < m_; ++u)
      if (in_set_[static_cast<std::size_t>(u)]) out.push_back(u);
    return out;
  }

  void clear() {
    for (PerSpec& ps : per_spec_) {
      ps.e = 0.0;
      std::fill(ps.cut_to_set.begin(), ps.cut_to_set.end(), 0.0);
    }
    std::fill(in_set_.begin(), in_set_.end(), 0);
    size_ = 0;
  }

 private:
  struct PerSpec {
    double e = 0.0;
    std::vector<double> cut_to_set;  // sum_{j in F} w(u, j), u in universe
    std::vector<double> tot;         // lazily cached tot(u); -1 = unset
  };

  double tot(std::size_t s, Index u) {
    double& slot = per_spec_[s].tot[static_cast<std::size_t>(u)];
    if (slot >= 0.0) return slot;
    double t = 0.0;
    for (const auto& [j, v] : specs_[s].row(u))
      if (j != u) t += std::norm(v);
    for (const auto& [i, v] : specs_[s].col(u))
      if (i != u) t += std::norm(v);
    slot = t;
    return t;
  }

  void touch_neighbors(Index v, double sign) {
    for (std::size_t s = 0; s < per_spec_.size(); ++s) {
      PerSpec& ps = per_spec_[s];
      for (const auto& [j, x] : specs_[s].row(v))
        if (j != v && j < m_) ps.cut_to_set[static_cast<std::size_t>(j)] += sign * std::norm(x);
      for (const auto& [i, x] : specs_[s].col(v))
        if (i != v && i < m_) ps.cut_to_set[static_cast<std::size_t>(i)] += sign * std::norm(x);
    }
  }

  std::vector<OperatorSpec> specs_;
  Index m_;
  std::vector<char> in_set_;
  std::vector<PerSpec> per_spec_;
  std::size_t size_ = 0;
};

struct BestSet {
  std::vector<Index> indices;
  double ratio_sq = std::numeric_limits<double>::infinity();

  void offer(const CutEnsemble& ens) {
    const double r = ens.ratio_sq();
    if (r < ratio_sq) {
      ratio_sq = r;
      indices = ens.members();
    }
  }
};

// Greedy growth to the target size; each candidate scan is charged to the
// budget. Ties break toward the smallest index.
void greedy_grow(CutEnsemble& ens, Index target, std::uint64_t budget, std::uint64_t& spent) {
  while (ens.size() < static_cast<std::size_t>(target)) {
    Index best_v = -1;
    double best_e = std::numeric_limits<double>::infinity();
    for (Index v = 0; v < ens.universe(); ++v) {
      if (ens.member(v)) continue;
      if (spent >= budget) break;
      ++spent;
      const double e = ens.max_e_after_add(v);
      if (e < best_e) {
        best_e = e;
        best_v = v;
      }
    }
    if (best_v < 0) {
      // Budget ran dry mid-scan; fill deterministically with the smallest
      // free indices so the window reaches its contracted size.
      for (Index v = 0; v < ens.universe() && ens.size() < static_cast<std::size_t>(target); ++v)
        if (!ens.member(v)) ens.add(v);
      return;
    }
    ens.add(best_v);
  }
}

// Single-element exchange descent: drop u, re-add the best candidate (u
// itself when nothing improves). Passes repeat until stable.
void swap_refine(CutEnsemble& ens, std::uint64_t budget, std::uint64_t& spent) {
  bool improved = true;
  while (improved && spent < budget) {
    improved = false;
    const std::vector<Index> snapshot = ens.members();
    for (const Index u : snapshot) {
      if (spent >= budget) break;
      const double before = ens.ratio_sq();
      ens.remove(u);
      Index best_v = u;
      double best_e = std::numeric_limits<double>::infinity();
      for (Index v = 0; v < ens.universe(); ++v) {
        if (ens.member(v)) continue;
        if (spent >= budget) break;
        ++spent;
        const double e = ens.max_e_after_add(v);
        if (e < best_e) {
          best_e = e;
          best_v = v;
        }
      }
      ens.add(best_v);
      if (best_v != u && ens.ratio_sq() < before) improved = true;
    }
  }
}

double fitted_loglog_slope(std::span<const std::pair<Index, double>> trace, std::size_t tail) {
  const std::size_t n = std::min(tail, trace.size());
  if (n < 2) return 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t t = trace.size() - n; t < trace.size(); ++t) {
    const double x = std::log(static_cast<double>(trace[t].first));
    const double y = std::log(trace[t].second);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double dn = static_cast<double>(n);
  const double denom = dn * sxx - sx * sx;
  if (denom == 0.0) return 0.0;
  return (dn * sxy - sx * sy) / denom;
}

}  // namespace

SearchResult subset_search(std::span<const OperatorSpec> specs, Index max_index, Index size,
                           const SearchOptions& options) {
  if (specs.empty()) throw DomainError("subset_search: empty operator set");
  if (size < 1 || size > max_index) throw DomainError("subset_search: need 1 <= size <= max_index");
  if (max_index > 65536) throw DomainError("subset_search: max_index exceeds 65536");
  if (options.budget < 1) throw DomainError("subset_search: budget must be >= 1");

  std::uint64_t spent = 0;
  BestSet best;
  CutEnsemble ens(specs, max_index);

  // Interval seed pool, evaluated by sliding the window across the universe.
  for (Index t = 0; t < size; ++t) ens.add(t);
  ++spent;
  best.offer(ens);
  for (Index start = 1; start + size <= max_index; ++start) {
    ens.remove(start - 1);
    ens.add(start - 1 + size);
    ++spent;
    best.offer(ens);
  }

  if (options.strategy == SearchStrategy::Greedy) {
    std::mt19937_64 rng(options.seed);
    for (int run = 0; run <= options.restarts; ++run) {
      ens.clear();
      if (run > 0) {
        std::uniform_int_distribution<Index> pick(0, max_index - 1);
        ens.add(pick(rng));
      }
      greedy_grow(ens, size, options.budget, spent);
      best.offer(ens);
      swap_refine(ens, options.budget, spent);
      best.offer(ens);
      if (spent >= options.budget) break;
    }
  }

  WindowProjection window(best.indices);
  const double ratio = joint_folner_ratio(specs, window, SchattenP::Two);
  return SearchResult{std::move(window), ratio, options.strategy, spent, DecayFlag::Inconclusive};
}

ProbeResult nonfolner_probe(std::span<const OperatorSpec> specs, std::span<const Index> schedule,
                            double epsilon, double flat_slope, const SearchOptions& options,
                            Index max_index) {
  if (schedule.empty()) throw DomainError("nonfolner_probe: empty schedule");
  for (std::size_t t = 1; t < schedule.size(); ++t)
    if (schedule[t] <= schedule[t - 1])
      throw DomainError("nonfolner_probe: schedule must be ascending");

  const Index m = max_index > 0 ? max_index : std::max<Index>(64, 4 * schedule.back());
  if (m < schedule.back())
    throw DomainError("nonfolner_probe: max_index smaller than the largest schedule size");

  std::vector<std::pair<Index, double>> trace;
  double min_ratio = std::numeric_limits<double>::infinity();
  std::size_t best_at = 0;
  std::vector<SearchResult> results;
  for (const Index k : schedule) {
    results.push_back(subset_search(specs, m, k, options));
    const double r = results.back().best_ratio;
    trace.emplace_back(k, r);
    if (r < min_ratio) {
      min_ratio = r;
      best_at = results.size() - 1;
    }
  }

  DecayFlag flag = DecayFlag::Inconclusive;
  double slope = std::numeric_limits<double>::quiet_NaN();
  if (min_ratio < epsilon) {
    flag = DecayFlag::Decaying;
  } else {
    slope = fitted_loglog_slope(trace, 5);
    flag = std::abs(slope) < flat_slope ? DecayFlag::Flat : DecayFlag::Inconclusive;
  }
  ProbeResult out{std::move(results[best_at]), flag, std::move(trace), slope};
  out.best.decay_flag = flag;
  return out;
}

// ---------------------------------------------------------------------------
// Numerical range

namespace {

double cross(Complex o, Complex a, Complex b) {
  return (a.real() - o.real()) * (b.imag() - o.imag()) -
         (a.imag() - o.imag()) * (b.real() - o.real());
}

std::vector<Complex> convex_hull(std::vector<Complex> pts) {
  std::sort(pts.begin(), pts.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const std::size_t n = pts.size();
  if (n <= 2) return pts;
  std::vector<Complex> hull(2 * n);
  std::size_t h = 0;
  for (std::size_t t = 0; t < n; ++t) {  // lower chain
    while (h >= 2 && cross(hull[h - 2], hull[h - 1], pts[t]) <= 0.0) --h;
    hull[h++] = pts[t];
  }
  const std::size_t lower = h + 1;
  for (std::size_t t = n - 1; t-- > 0;) {  // upper chain
    while (h >= lower && cross(hull[h - 2], hull[h - 1], pts[t]) <= 0.0) --h;
    hull[h++] = pts[t];
  }
  hull.resize(h - 1);
  return hull;
}

double point_segment_distance(Complex p, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len_sq = std::norm(ab);
  if (len_sq == 0.0) return std::abs(p - a);
  double t = ((p.real() - a.real()) * ab.real() + (p.imag() - a.imag()) * ab.imag()) / len_sq;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

double distance_to_hull(Complex p, const std::vector<Complex>& hull) {
  if (hull.empty()) return std::numeric_limits<double>::quiet_NaN();
  if (hull.size() == 1) return std::abs(p - hull[0]);
  if (hull.size() == 2) return point_segment_distance(p, hull[0], hull[1]);
  bool inside = true;
  double min_edge = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < hull.size(); ++t) {
    const Complex a = hull[t];
    const Complex b = hull[(t + 1) % hull.size()];
    if (cross(a, b, p) < 0.0) inside = false;
    min_edge = std::min(min_edge, point_segment_distance(p, a, b));
  }
  return inside ? 0.0 : min_edge;
}

}  // namespace

NumericalRangePolygon numerical_range(const Eigen::MatrixXcd& a, int angles) {
  if (angles < 3) throw DomainError("numerical_range: need at least 3 angles");
  if (a.rows() != a.cols() || a.rows() < 1)
    throw DomainError("numerical_range: matrix must be square and nonempty");

  NumericalRangePolygon poly;
  poly.support_points.reserve(static_cast<std::size_t>(angles));
  const Eigen::MatrixXcd adj = a.adjoint();
  for (int t = 0; t < angles; ++t) {
    const double theta = 2.0 * M_PI * static_cast<double>(t) / static_cast<double>(angles);
    const Complex phase = std::exp(Complex(0.0, -theta));
    const Eigen::MatrixXcd h = 0.5 * (phase * a + std::conj(phase) * adj);
    const linalg::Eigenpair top = linalg::largest_hermitian_eigenpair(h);
    const Complex z = top.vector.dot(a * top.vector);  // Eigen dot conjugates the left factor
    poly.support_points.push_back(z);
  }
  poly.vertices = convex_hull(poly.support_points);
  poly.distance_to_origin = distance_to_hull(Complex(0.0, 0.0), poly.vertices);
  return poly;
}

std::vector<FinitenessRow> finiteness_probe(const OperatorSpec& spec, std::span<const Index> dims,
                                            int samples, int angles, std::uint64_t seed,
                                            Index x_band, std::size_t size_cap) {
  if (samples < 1) throw DomainError("finiteness_probe: need at least one sample");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<FinitenessRow> rows;
  for (const Index d : dims) {
    const Eigen::MatrixXcd t_d =
        compress(spec, WindowProjection::interval(0, d), size_cap).entries;
    FinitenessRow row;
    row.d = d;
    row.max_distance = 0.0;
    for (int s = 0; s < samples; ++s) {
      Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(d, d);
      for (Index i = 0; i < d; ++i) {
        for (Index j = std::max<Index>(0, i - x_band); j <= std::min<Index>(d - 1, i + x_band);
             ++j) {
          const double r = std::sqrt(unit(rng));
          const double phi = 2.0 * M_PI * unit(rng);
          x(i, j) = Complex(r * std::cos(phi), r * std::sin(phi));
        }
      }
      const Eigen::MatrixXcd comm = t_d * x - x * t_d;
      const double dist = numerical_range(comm, angles).distance_to_origin;
      row.distances.push_back(dist);
      row.max_distance = std::max(row.max_distance, dist);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string search_report_json(const SearchReport& report) {
  nlohmann::ordered_json j;
  j["strategy"] = to_string(report.strategy);
  j["budget"] = report.budget;
  nlohmann::ordered_json runs = nlohmann::ordered_json::array();
  const std::span<const Index> idx = report.result->best_window.indices();
  for (std::size_t t = 0; t < idx.size();) {
    std::size_t len = 1;
    while (t + len < idx.size() && idx[t + len] == idx[t] + static_cast<Index>(len)) ++len;
    runs.push_back({idx[t], len});
    t += len;
  }
  j["best_window"] = std::move(runs);
  j["best_ratio"] = report.result->best_ratio;
  j["evaluations"] = report.result->evaluations;
  j["decay_flag"] = to_string(report.result->decay_flag);
  if (!report.per_dim.empty()) {
    nlohmann::ordered_json trace = nlohmann::ordered_json::array();
    for (const auto& [k, r] : report.per_dim) trace.push_back({{"size", k}, {"best_ratio", r}});
    j["per_dim"] = std::move(trace);
    if (!std::isnan(report.slope)) j["slope"] = report.slope;
  }
  j["projection_family"] = "coordinate";  // stamped: coordinate projections only
  return j.dump(2);
}

}  // namespace folner
