#include "shiftsym/linalg.hpp"

#include <cassert>

#include "shiftsym/kernels.hpp"

namespace shiftsym {

Eigen::VectorXd singular_values(const Matrix& m) {
  if (m.size() == 0) return {};
  if (m.rows() <= 16 && m.cols() <= 16) {
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues();
  }
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues();
}

double min_singular(const Matrix& m) {
  assert(m.rows() == m.cols());
  if (m.size() == 0) return 0.0;
  return singular_values(m).minCoeff();
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  assert(a.rows() == b.rows() && a.cols() == b.cols());
  const auto n = static_cast<std::size_t>(a.size());
  return kernels::active().max_abs_diff({a.data(), n}, {b.data(), n});
}

double max_abs(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().maxCoeff();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix projector_range(const Matrix& projector, double tol) {
  const Matrix herm = 0.5 * (projector + projector.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (std::abs(es.eigenvalues()(i) - 1.0) < tol) keep.push_back(i);
  Matrix basis(projector.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c)
    basis.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(keep[c]);
  return basis;
}

}  // namespace shiftsym
