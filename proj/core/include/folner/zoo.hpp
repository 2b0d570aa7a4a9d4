#pragma once

#include <string>
#include <vector>

#include "folner/operator_spec.hpp"

namespace folner {

// Default reference spectral measure for the entry, consumed by the Szego
// report driver: Toeplitz symbols push forward exactly; almost Mathieu has no
// closed form and falls back to a larger-truncation oracle.
enum class MeasureHint { SymbolPushforward, Oracle, None };

struct ZooEntry {
  std::string name;
  OperatorSpec spec;
  bool selfadjoint;
  MeasureHint reference_measure_hint;
};

ZooEntry make_shift(Lattice lattice = Lattice::HalfLine);
// Odd-length lists center themselves; pass c0_index explicitly otherwise.
ZooEntry make_toeplitz(std::vector<Complex> coeffs, int c0_index, Lattice lattice = Lattice::HalfLine);
ZooEntry make_toeplitz(std::vector<Complex> coeffs, Lattice lattice = Lattice::HalfLine);
ZooEntry make_cuntz_isometry(int branching, int branch);
std::vector<ZooEntry> make_cuntz_family(int branching);
ZooEntry make_almost_mathieu(double lambda, double omega, double theta);
ZooEntry make_diagonal(DiagonalRule rule, Lattice lattice = Lattice::HalfLine);
// Records the interleaved block embedding used by the padded-ratio driver.
ZooEntry make_padded_direct_sum(const ZooEntry& left, const ZooEntry& right);

// Entrywise check of sum_k S_k S_k* = 1 and S_l* S_k = delta_lk 1 on the
// window {0, ..., window_len - 1}. The index maps are exact integers, so the
// deviations must come out identically zero.
struct CuntzRelationReport {
  int branching = 0;
  Index window_len = 0;
  double max_dev_completeness = 0.0;
  double max_dev_orthogonality = 0.0;
  double max_deviation() const { return std::max(max_dev_completeness, max_dev_orthogonality); }
};

CuntzRelationReport verify_cuntz_relations(int branching, Index window_len);

}  // namespace folner
