#include "folner/zoo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace folner {

namespace {

std::string format_params(const char* fmt, double a, double b = 0, double c = 0) {
  char buf[128];
  std::snprintf(buf, sizeof buf, fmt, a, b, c);
  return buf;
}

}  // namespace

ZooEntry make_shift(Lattice lattice) {
  std::string name = "shift";
  if (lattice == Lattice::FullLine) name += ":full";
  return ZooEntry{std::move(name), OperatorSpec::shift(lattice), false, MeasureHint::None};
}

ZooEntry make_toeplitz(std::vector<Complex> coeffs, int c0_index, Lattice lattice) {
  OperatorSpec spec = OperatorSpec::toeplitz(coeffs, c0_index, lattice);
  // Self-adjoint iff c_{-k} = conj(c_k) for every k.
  const int len = static_cast<int>(coeffs.size());
  bool sa = true;
  for (int p = 0; p < len && sa; ++p) {
    const int mirror = 2 * c0_index - p;
    const Complex other = (mirror >= 0 && mirror < len)
                              ? coeffs[static_cast<std::size_t>(mirror)]
                              : Complex(0.0, 0.0);
    sa = coeffs[static_cast<std::size_t>(p)] == std::conj(other);
  }
  std::string name = "toeplitz:";
  for (int p = 0; p < len; ++p) {
    if (p) name += ',';
    char buf[64];
    const Complex v = coeffs[static_cast<std::size_t>(p)];
    if (v.imag() == 0.0)
      std::snprintf(buf, sizeof buf, "%.17g", v.real() + 0.0);
    else
      std::snprintf(buf, sizeof buf, "(%.17g,%.17g)", v.real() + 0.0, v.imag() + 0.0);
    name += buf;
  }
  return ZooEntry{std::move(name), std::move(spec), sa,
                  sa ? MeasureHint::SymbolPushforward : MeasureHint::None};
}

ZooEntry make_toeplitz(std::vector<Complex> coeffs, Lattice lattice) {
  if (coeffs.size() % 2 == 0)
    throw DomainError(
        "toeplitz: even-length coefficient lists are ambiguous; pass the center index "
        "explicitly (--c0-index)");
  const int c0 = static_cast<int>(coeffs.size() / 2);
  return make_toeplitz(std::move(coeffs), c0, lattice);
}

ZooEntry make_cuntz_isometry(int branching, int branch) {
  return ZooEntry{"cuntz:" + std::to_string(branching) + ":" + std::to_string(branch),
                  OperatorSpec::cuntz(branching, branch), false, MeasureHint::None};
}

std::vector<ZooEntry> make_cuntz_family(int branching) {
  std::vector<ZooEntry> family;
  family.reserve(static_cast<std::size_t>(branching));
  for (int k = 0; k < branching; ++k) family.push_back(make_cuntz_isometry(branching, k));
  return family;
}

ZooEntry make_almost_mathieu(double lambda, double omega, double theta) {
  return ZooEntry{format_params("am:%.17g:%.17g:%.17g", lambda, omega, theta),
                  OperatorSpec::almost_mathieu(lambda, omega, theta), true, MeasureHint::Oracle};
}

ZooEntry make_diagonal(DiagonalRule rule, Lattice lattice) {
  const bool sa = rule.is_real();
  std::string name = "diag:" + rule.name();
  return ZooEntry{std::move(name), OperatorSpec::diagonal(std::move(rule), lattice), sa,
                  MeasureHint::None};
}

ZooEntry make_padded_direct_sum(const ZooEntry& left, const ZooEntry& right) {
  return ZooEntry{"direct_sum(" + left.name + "," + right.name + ")",
                  OperatorSpec::direct_sum(left.spec, right.spec),
                  left.selfadjoint && right.selfadjoint, MeasureHint::None};
}

CuntzRelationReport verify_cuntz_relations(int branching, Index window_len) {
  if (window_len < 1) throw DomainError("verify_cuntz_relations: window must be >= 1");
  const std::vector<ZooEntry> family = make_cuntz_family(branching);

  CuntzRelationReport report;
  report.branching = branching;
  report.window_len = window_len;

  // sum_k S_k S_k* versus the identity, row by row on the window.
  std::vector<OperatorSpec> terms;
  for (const ZooEntry& e : family)
    terms.push_back(OperatorSpec::product(e.spec, OperatorSpec::adjoint(e.spec)));
  const OperatorSpec completeness = OperatorSpec::sum(std::move(terms));
  for (Index i = 0; i < window_len; ++i) {
    double diag_seen = 0.0;
    for (const auto& [j, v] : completeness.row(i)) {
      if (j >= window_len) continue;
      const double expect = j == i ? 1.0 : 0.0;
      report.max_dev_completeness =
          std::max(report.max_dev_completeness, std::abs(v - Complex(expect, 0.0)));
      if (j == i) diag_seen = 1.0;
    }
    if (diag_seen == 0.0) report.max_dev_completeness = std::max(report.max_dev_completeness, 1.0);
  }

  // S_l* S_k versus delta_lk identity.
  for (int l = 0; l < branching; ++l) {
    for (int k = 0; k < branching; ++k) {
      const OperatorSpec rel = OperatorSpec::product(
          OperatorSpec::adjoint(family[static_cast<std::size_t>(l)].spec),
          family[static_cast<std::size_t>(k)].spec);
      const double expect_diag = l == k ? 1.0 : 0.0;
      for (Index i = 0; i < window_len; ++i) {
        double diag_seen = 0.0;
        for (const auto& [j, v] : rel.row(i)) {
          if (j >= window_len) continue;
          const double expect = j == i ? expect_diag : 0.0;
          report.max_dev_orthogonality =
              std::max(report.max_dev_orthogonality, std::abs(v - Complex(expect, 0.0)));
          if (j == i) diag_seen = 1.0;
        }
        if (diag_seen == 0.0 && expect_diag != 0.0)
          report.max_dev_orthogonality = std::max(report.max_dev_orthogonality, expect_diag);
      }
    }
  }
  return report;
}

}  // namespace folner
