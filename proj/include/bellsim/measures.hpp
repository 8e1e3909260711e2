#pragma once

#include <algorithm>
#include <cmath>

#include "bellsim/linalg.hpp"
#include "bellsim/qstate.hpp"
#include "bellsim/types.hpp"

namespace bellsim {

// Maximum of the CHSH Bell function together with the ingredients used to
// build it.  b > 2 certifies nonlocal correlations; b <= 2 sqrt(2) always
// (Tsirelson bound).
struct BellResult {
  double b = 0;
  double b1 = 0, b2 = 0;
  double u1 = 0, u2 = 0, u3 = 0;
};

// Closed form for X states:
//   u1 = 4 (|c14| + |c23|)^2
//   u2 = (p11 + p44 - p22 - p33)^2
//   u3 = 4 (|c14| - |c23|)^2
//   B  = max(2 sqrt(u1+u2), 2 sqrt(u1+u3))      (u1 >= u3 always)
inline BellResult bell_max_x(const XState& x) {
  x.validate();
  BellResult r;
  const double c14 = std::abs(x.c14);
  const double c23 = std::abs(x.c23);
  r.u1 = 4.0 * (c14 + c23) * (c14 + c23);
  const double zdiff = x.p11 + x.p44 - x.p22 - x.p33;
  r.u2 = zdiff * zdiff;
  r.u3 = 4.0 * (c14 - c23) * (c14 - c23);
  r.b1 = 2.0 * std::sqrt(r.u1 + r.u2);
  r.b2 = 2.0 * std::sqrt(r.u1 + r.u3);
  r.b = std::max(r.b1, r.b2);
  return r;
}

// General route: B = 2 sqrt(m1 + m2) with m1 >= m2 the two largest
// eigenvalues of T^T T, where T_ij = Tr[rho (sigma_i x sigma_j)] is the
// 3x3 spin correlation matrix.
inline double bell_max_general(const CMat4& rho) {
  {
    const StateDiagnostics d = validate(rho);
    if (!d.passes()) throw std::runtime_error("bell_max_general: invalid state");
  }
  const CMat2 paulis[3] = {pauli_x(), pauli_y(), pauli_z()};
  Eigen::Matrix3d t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      t(i, j) = (rho * two_qubit_op(paulis[i], paulis[j])).trace().real();
  const Eigen::Matrix3d tt = t.transpose() * t;
  const auto eig = hermitian_eig(tt);
  return 2.0 * std::sqrt(std::max(0.0, eig.values(0) + eig.values(1)));
}

// X-state concurrence: two-branch closed form.
inline double concurrence_x(const XState& x) {
  x.validate();
  const double inner = std::abs(x.c23) - std::sqrt(std::max(0.0, x.p11 * x.p44));
  const double outer = std::abs(x.c14) - std::sqrt(std::max(0.0, x.p22 * x.p33));
  return 2.0 * std::max({0.0, inner, outer});
}

// Wootters concurrence for arbitrary two-qubit states via the spin-flipped
// state rho~ = (sy x sy) conj(rho) (sy x sy).  The eigenvalues of rho rho~
// are obtained from the Hermitian similarity X rho~ X with X = sqrt(rho),
// which keeps everything inside the Hermitian eigensolver.
inline double concurrence_general(const CMat4& rho) {
  {
    const StateDiagnostics d = validate(rho);
    if (!d.passes()) throw std::runtime_error("concurrence_general: invalid state");
  }
  const CMat4 syy = two_qubit_op(pauli_y(), pauli_y());
  const CMat4 rho_tilde = syy * rho.conjugate() * syy;
  const CMat4 x = psd_sqrt(rho);
  const CMat4 h = x * rho_tilde * x;
  // Rounding can leave h very slightly non-Hermitian; symmetrize first.
  const auto eig = hermitian_eig(CMat4(0.5 * (h + h.adjoint())));
  double lambda[4];
  for (int i = 0; i < 4; ++i) lambda[i] = std::sqrt(std::max(0.0, eig.values(i)));
  return std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]);
}

}  // namespace bellsim
