#include "folner/linalg.hpp"

#include <complex>
#include <string>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "folner/errors.hpp"

namespace folner::linalg {

namespace {

[[noreturn]] void lapack_failure(const char* routine, lapack_int info) {
  throw Error(std::string(routine) + " failed with info=" + std::to_string(info));
}

bool is_real(const Eigen::MatrixXcd& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (a(i, j).imag() != 0.0) return false;
  return true;
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const Eigen::MatrixXcd& a) {
  const auto n = static_cast<lapack_int>(a.rows());
  if (a.rows() != a.cols()) throw DomainError("hermitian_eigenvalues: matrix must be square");
  if (n == 0) return {};
  std::vector<double> w(static_cast<std::size_t>(n));
  if (is_real(a)) {
    Eigen::MatrixXd ar = a.real();
    const lapack_int info =
        LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'L', n, ar.data(), n, w.data());
    if (info != 0) lapack_failure("dsyevd", info);
  } else {
    Eigen::MatrixXcd ac = a;
    const lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'N', 'L', n, ac.data(), n, w.data());
    if (info != 0) lapack_failure("zheevd", info);
  }
  return w;
}

std::vector<double> singular_values(const Eigen::MatrixXcd& a) {
  const auto m = static_cast<lapack_int>(a.rows());
  const auto n = static_cast<lapack_int>(a.cols());
  if (m == 0 || n == 0) return {};
  Eigen::MatrixXcd ac = a;
  std::vector<double> s(static_cast<std::size_t>(std::min(m, n)));
  const lapack_int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', m, n, ac.data(), m, s.data(),
                                         nullptr, 1, nullptr, 1);
  if (info != 0) lapack_failure("zgesdd", info);
  return s;
}

Eigenpair largest_hermitian_eigenpair(const Eigen::MatrixXcd& a, double abstol) {
  const auto n = static_cast<lapack_int>(a.rows());
  if (a.rows() != a.cols() || n == 0)
    throw DomainError("largest_hermitian_eigenpair: matrix must be square and nonempty");
  Eigen::MatrixXcd ac = a;
  Eigen::VectorXcd z(n);
  std::vector<double> w(static_cast<std::size_t>(n));
  std::vector<lapack_int> isuppz(2);
  lapack_int found = 0;
  const lapack_int info =
      LAPACKE_zheevr(LAPACK_COL_MAJOR, 'V', 'I', 'L', n, ac.data(), n, 0.0, 0.0, n, n, abstol,
                     &found, w.data(), z.data(), n, isuppz.data());
  if (info == 0 && found == 1) return Eigenpair{w[0], std::move(z)};

  // zheevr's RRR path can reject (near-)zero or heavily degenerate matrices;
  // fall back to the full divide-and-conquer decomposition.
  ac = a;
  const lapack_int info2 =
      LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n, ac.data(), n, w.data());
  if (info2 != 0) lapack_failure("zheevd", info2);
  return Eigenpair{w[static_cast<std::size_t>(n - 1)], ac.col(n - 1)};
}

}  // namespace folner::linalg
