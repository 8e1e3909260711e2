#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <stdexcept>

#include "bellsim/types.hpp"

namespace bellsim {

inline constexpr double kHermiticityTol = 1e-10;
inline constexpr double kPsdEigFloor = -1e-10;

// Single-qubit Pauli matrices in the per-qubit basis {|1> (excited), |0>
// (ground)}; sigma_z |1> = +|1>.
template <typename T = double>
ComplexMat2<T> pauli_x() {
  ComplexMat2<T> m;
  m << 0, 1, 1, 0;
  return m;
}

template <typename T = double>
ComplexMat2<T> pauli_y() {
  using C = std::complex<T>;
  ComplexMat2<T> m;
  m << C(0, 0), C(0, -1), C(0, 1), C(0, 0);
  return m;
}

template <typename T = double>
ComplexMat2<T> pauli_z() {
  ComplexMat2<T> m;
  m << 1, 0, 0, -1;
  return m;
}

inline double max_abs(const CMat4& m) { return m.cwiseAbs().maxCoeff(); }

// Largest entrywise deviation from Hermitian symmetry.
template <typename Derived>
double hermiticity_defect(const Eigen::MatrixBase<Derived>& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

// Kronecker product of fixed-size square matrices; the first factor owns
// the high (block) index.
template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  constexpr int na = DerivedA::RowsAtCompileTime;
  constexpr int nb = DerivedB::RowsAtCompileTime;
  static_assert(na == DerivedA::ColsAtCompileTime && nb == DerivedB::ColsAtCompileTime,
                "kron expects square matrices");
  using Scalar = typename DerivedA::Scalar;
  Eigen::Matrix<Scalar, na * nb, na * nb> out;
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j)
      out.template block<nb, nb>(i * nb, j * nb) = a(i, j) * b.derived();
  return out;
}

// Embed single-qubit operators into the two-qubit basis of types.hpp:
// op_a acts on qubit A (low index bit), op_b on qubit B (high bit).
inline CMat4 two_qubit_op(const CMat2& op_a, const CMat2& op_b) {
  return kron(op_b, op_a);
}

template <int N, typename Scalar>
struct HermitianEig {
  Eigen::Matrix<double, N, 1> values;            // sorted descending
  Eigen::Matrix<Scalar, N, N> vectors;           // orthonormal columns, matching order
};

// Eigendecomposition of a Hermitian (or real symmetric) matrix, eigenvalues
// descending.  Rejects inputs whose Hermiticity defect exceeds herm_tol.
template <typename Derived>
auto hermitian_eig(const Eigen::MatrixBase<Derived>& m, double herm_tol = kHermiticityTol) {
  constexpr int n = Derived::RowsAtCompileTime;
  using Scalar = typename Derived::Scalar;
  using Mat = Eigen::Matrix<Scalar, n, n>;
  if (hermiticity_defect(m) > herm_tol)
    throw std::runtime_error("hermitian_eig: input is not Hermitian within tolerance");
  Eigen::SelfAdjointEigenSolver<Mat> solver(m.derived());
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eig: eigensolver failed to converge");
  HermitianEig<n, Scalar> out;
  // Eigen sorts ascending; flip to descending.
  for (int i = 0; i < n; ++i) {
    out.values(i) = solver.eigenvalues()(n - 1 - i);
    out.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  return out;
}

// Hermitian PSD square root.  Eigenvalues in [kPsdEigFloor, 0) are clipped
// to zero; anything below the floor is rejected.
template <typename Derived>
auto psd_sqrt(const Eigen::MatrixBase<Derived>& m, double herm_tol = kHermiticityTol) {
  constexpr int n = Derived::RowsAtCompileTime;
  using Scalar = typename Derived::Scalar;
  auto eig = hermitian_eig(m, herm_tol);
  Eigen::Matrix<double, n, 1> roots;
  for (int i = 0; i < n; ++i) {
    double v = eig.values(i);
    if (v < kPsdEigFloor)
      throw std::runtime_error("psd_sqrt: matrix has a negative eigenvalue beyond tolerance");
    roots(i) = std::sqrt(std::max(v, 0.0));
  }
  Eigen::Matrix<Scalar, n, n> out =
      eig.vectors * roots.asDiagonal() * eig.vectors.adjoint();
  return out;
}

}  // namespace bellsim
