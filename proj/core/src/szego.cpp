#include "folner/szego.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "folner/linalg.hpp"

namespace folner {

EmpiricalMeasure counting_measure(const OperatorSpec& spec, Index d, std::size_t size_cap) {
  if (d < 1) throw DomainError("counting_measure: dimension must be >= 1");
  if (!is_formally_selfadjoint(spec))
    throw PreconditionError("counting_measure: operator is not formally self-adjoint");
  const CompressionMatrix t = compress(spec, WindowProjection::interval(0, d), size_cap);
  EmpiricalMeasure mu;
  mu.atoms = linalg::hermitian_eigenvalues(t.entries);
  return mu;
}

ReferenceMeasure symbol_pushforward(std::span<const Complex> coeffs, int c0_index,
                                    std::size_t grid) {
  if (coeffs.empty()) throw DomainError("symbol_pushforward: empty coefficient list");
  if (grid < 1) throw DomainError("symbol_pushforward: grid must be >= 1");
  // Real symbol <=> c_{-k} = conj(c_k).
  const int len = static_cast<int>(coeffs.size());
  for (int p = 0; p < len; ++p) {
    const int mirror = 2 * c0_index - p;
    const Complex other =
        (mirror >= 0 && mirror < len) ? coeffs[static_cast<std::size_t>(mirror)] : Complex(0, 0);
    if (std::abs(coeffs[static_cast<std::size_t>(p)] - std::conj(other)) > 1e-14)
      throw PreconditionError("symbol_pushforward: symbol is not real-valued");
  }
  ReferenceMeasure ref;
  ref.kind = ReferenceMeasure::Kind::SymbolPushforward;
  ref.samples.resize(grid);
  for (std::size_t g = 0; g < grid; ++g) {
    const double theta =
        2.0 * std::numbers::pi * static_cast<double>(g) / static_cast<double>(grid);
    Complex value(0.0, 0.0);
    for (int p = 0; p < len; ++p) {
      const int k = p - c0_index;
      value += coeffs[static_cast<std::size_t>(p)] *
               std::exp(Complex(0.0, static_cast<double>(k) * theta));
    }
    ref.samples[g] = value.real();
  }
  std::sort(ref.samples.begin(), ref.samples.end());
  return ref;
}

ReferenceMeasure oracle_measure(const OperatorSpec& spec, Index d, std::size_t size_cap) {
  ReferenceMeasure ref;
  ref.kind = ReferenceMeasure::Kind::Oracle;
  ref.samples = counting_measure(spec, d, size_cap).atoms;
  return ref;
}

double kolmogorov_distance(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw DomainError("kolmogorov_distance: empty measure");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t ia = 0, ib = 0;
  double ks = 0.0;
  while (ia < a.size() || ib < b.size()) {
    double v;
    if (ib == b.size() || (ia < a.size() && a[ia] <= b[ib]))
      v = a[ia];
    else
      v = b[ib];
    while (ia < a.size() && a[ia] <= v) ++ia;
    while (ib < b.size() && b[ib] <= v) ++ib;
    ks = std::max(ks, std::abs(static_cast<double>(ia) / na - static_cast<double>(ib) / nb));
  }
  return ks;
}

double kolmogorov_distance(const EmpiricalMeasure& a, const EmpiricalMeasure& b) {
  return kolmogorov_distance(std::span<const double>(a.atoms), std::span<const double>(b.atoms));
}

double kolmogorov_distance(const EmpiricalMeasure& a, const ReferenceMeasure& b) {
  return kolmogorov_distance(std::span<const double>(a.atoms),
                             std::span<const double>(b.samples));
}

double moment(std::span<const double> atoms, int k) {
  if (k < 0) throw DomainError("moment: order must be >= 0");
  if (atoms.empty()) throw DomainError("moment: empty measure");
  if (k == 0) return 1.0;
  double sum = 0.0;
  for (double a : atoms) {
    double p = a;
    for (int t = 1; t < k; ++t) p *= a;
    sum += p;
  }
  return sum / static_cast<double>(atoms.size());
}

std::vector<double> moment_report(const OperatorSpec& spec, Index d, int k_max,
                                  const ReferenceMeasure& ref, std::size_t size_cap) {
  if (k_max < 1) throw DomainError("moment_report: k_max must be >= 1");
  const EmpiricalMeasure mu = counting_measure(spec, d, size_cap);
  std::vector<double> errs(static_cast<std::size_t>(k_max));
  for (int k = 1; k <= k_max; ++k)
    errs[static_cast<std::size_t>(k - 1)] =
        std::abs(moment(mu.atoms, k) - moment(ref.samples, k));
  return errs;
}

Complex trace_state(const OperatorSpec& observable, const WindowProjection& window) {
  Complex sum(0.0, 0.0);
  for (const Index i : window.indices()) sum += observable.entry(i, i);
  return sum / static_cast<double>(window.size());
}

SzegoReport szego_report(const OperatorSpec& spec, std::span<const Index> dims,
                         const ReferenceMeasure& ref, std::size_t size_cap) {
  if (dims.empty()) throw DomainError("szego_report: empty dimension list");
  for (std::size_t t = 1; t < dims.size(); ++t)
    if (dims[t] <= dims[t - 1]) throw DomainError("szego_report: dims must be ascending");

  std::array<double, kSzegoMomentCount> ref_moments{};
  for (int k = 1; k <= kSzegoMomentCount; ++k)
    ref_moments[static_cast<std::size_t>(k - 1)] = moment(ref.samples, k);

  const Index bandwidth = spec.bandwidth();
  const double norm_bound = operator_norm_bound(spec);

  SzegoReport report;
  for (const Index d : dims) {
    const EmpiricalMeasure mu = counting_measure(spec, d, size_cap);
    const WindowProjection window = WindowProjection::interval(0, d);
    SzegoRow row;
    row.d = d;
    row.ks = kolmogorov_distance(mu, ref);
    double power_bound = 1.0;
    for (int k = 1; k <= kSzegoMomentCount; ++k) {
      const auto t = static_cast<std::size_t>(k - 1);
      power_bound *= norm_bound;
      const double mk = moment(mu.atoms, k);
      row.moment_err[t] = std::abs(mk - ref_moments[t]);
      const Complex ts = trace_state(op_power(spec, k), window);
      row.trace_resid[t] = std::abs(ts.real() - mk);
      row.collar_bound[t] = 2.0 * static_cast<double>(k) * static_cast<double>(bandwidth) *
                            power_bound / static_cast<double>(d);
    }
    report.rows.push_back(row);
  }
  return report;
}

namespace {
void format_double(std::string& out, double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  out += buf;
}
}  // namespace

void write_szego_csv(std::ostream& os, const SzegoReport& report) {
  std::string body = "# spec_hash: " + report.spec_hash + "\n";
  body += "d,ks_dist";
  for (int k = 1; k <= kSzegoMomentCount; ++k) body += ",m" + std::to_string(k) + "_err";
  for (int k = 1; k <= kSzegoMomentCount; ++k) body += ",trace_resid_" + std::to_string(k);
  body += '\n';
  for (const SzegoRow& row : report.rows) {
    body += std::to_string(row.d);
    body += ',';
    format_double(body, row.ks);
    for (double v : row.moment_err) {
      body += ',';
      format_double(body, v);
    }
    for (double v : row.trace_resid) {
      body += ',';
      format_double(body, v);
    }
    body += '\n';
  }
  os << body;
}

std::vector<HistogramBin> histogram(const EmpiricalMeasure& mu, int bins) {
  if (bins < 1) throw DomainError("histogram: bin count must be >= 1");
  if (mu.atoms.empty()) throw DomainError("histogram: empty measure");
  const double lo = mu.atoms.front();
  const double hi = mu.atoms.back();
  const double width = (hi - lo) / static_cast<double>(bins);
  std::vector<HistogramBin> out(static_cast<std::size_t>(bins));
  for (int b = 0; b < bins; ++b) {
    out[static_cast<std::size_t>(b)].left = lo + width * b;
    out[static_cast<std::size_t>(b)].right = b + 1 == bins ? hi : lo + width * (b + 1);
    out[static_cast<std::size_t>(b)].mass = 0.0;
  }
  const double unit = 1.0 / static_cast<double>(mu.atoms.size());
  for (double a : mu.atoms) {
    int b = width > 0.0 ? static_cast<int>((a - lo) / width) : 0;
    b = std::clamp(b, 0, bins - 1);
    out[static_cast<std::size_t>(b)].mass += unit;
  }
  return out;
}

void write_histogram_csv(std::ostream& os, std::span<const HistogramBin> bins) {
  std::string body = "bin_left,bin_right,mass\n";
  for (const HistogramBin& bin : bins) {
    format_double(body, bin.left);
    body += ',';
    format_double(body, bin.right);
    body += ',';
    format_double(body, bin.mass);
    body += '\n';
  }
  os << body;
}

}  // namespace folner
