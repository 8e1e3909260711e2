#pragma once

#include <array>
#include <stdexcept>

#include "bellsim/linalg.hpp"
#include "bellsim/noise.hpp"
#include "bellsim/qstate.hpp"
#include "bellsim/types.hpp"

namespace bellsim {

// Pair of independent single-qubit maps evaluated at the same time.
struct TwoQubitMap {
  SingleQubitMap map_a;
  SingleQubitMap map_b;

  void validate() const {
    if (map_a.time != map_b.time)
      throw std::invalid_argument("TwoQubitMap: maps must be evaluated at the same time");
  }
};

inline TwoQubitMap two_qubit_map(double t, const NoiseParams& a, const NoiseParams& b,
                                 NoiseMode mode) {
  return {single_qubit_map(t, a, mode), single_qubit_map(t, b, mode)};
}

// Identical qubits: same parameters on both sides.
inline TwoQubitMap two_qubit_map(double t, const NoiseParams& p, NoiseMode mode) {
  return two_qubit_map(t, p, p, mode);
}

// Single-qubit transfer matrix on the vectorized density matrix, basis
// {|0><0|, |0><1|, |1><0|, |1><1|} with |0> the ground state:
//   index 0 = gg, 1 = ge, 2 = eg, 3 = ee.
inline CMat4 single_qubit_transfer(const SingleQubitMap& m) {
  const double g = m.pop_survival;
  const double feed = m.p_eq * (1.0 - g);
  CMat4 s = CMat4::Zero();
  s(0, 0) = 1.0 - feed;                 // gg <- gg
  s(0, 3) = (1.0 - m.p_eq) * (1.0 - g); // gg <- ee
  s(3, 0) = feed;                       // ee <- gg
  s(3, 3) = g + feed;                   // ee <- ee
  s(1, 1) = std::conj(m.coherence_factor);  // ge = <g|rho|e>
  s(2, 2) = m.coherence_factor;             // eg = <e|rho|g>
  return s;
}

namespace detail {

// Index scatter between the two-qubit matrix entry (k, l) and the vectorized
// product basis: w[4 u_B + u_A] with u = 2 * row_level + col_level per qubit
// (level 0 = ground to match single_qubit_transfer).
inline int vec_index(int k, int l) {
  const int ia = 1 - level_a(k), ja = 1 - level_a(l);
  const int ib = 1 - level_b(k), jb = 1 - level_b(l);
  return 4 * (2 * ib + jb) + (2 * ia + ja);
}

}  // namespace detail

// Full 16x16 two-qubit superoperator: Kronecker product of the single-qubit
// transfer matrices acting on the vectorized density matrix.
inline Eigen::Matrix<Complex, 16, 16> two_qubit_superoperator(const TwoQubitMap& m) {
  m.validate();
  return kron(single_qubit_transfer(m.map_b), single_qubit_transfer(m.map_a));
}

// General (dense) path: applies the product of the two independent
// single-qubit maps to an arbitrary two-qubit state.
inline CMat4 apply_general(const TwoQubitMap& m, const CMat4& rho0) {
  {
    const StateDiagnostics d = validate(rho0);
    if (!d.passes()) throw std::runtime_error("apply_general: input is not a valid state");
  }
  const Eigen::Matrix<Complex, 16, 16> super = two_qubit_superoperator(m);
  Eigen::Matrix<Complex, 16, 1> w;
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l) w(detail::vec_index(k, l)) = rho0(k, l);
  w = (super * w).eval();
  CMat4 rho;
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l) rho(k, l) = w(detail::vec_index(k, l));
  const StateDiagnostics d = validate(rho);
  if (!d.passes()) throw std::runtime_error("apply_general: evolved state failed validation");
  return rho;
}

// X-structure fast path: populations mix through the product of the two
// single-qubit population kernels; each coherence picks up the product of
// the corresponding coherence factors:
//   c23(t) = conj(c_A) c_B c23(0),   c14(t) = c_A c_B c14(0).
// When both qubits keep their populations (pop_survival == 1) the
// populations are copied bitwise.
inline XState apply_x(const TwoQubitMap& m, const XState& x0) {
  m.validate();
  x0.validate();
  XState x;
  x.c23 = std::conj(m.map_a.coherence_factor) * m.map_b.coherence_factor * x0.c23;
  x.c14 = m.map_a.coherence_factor * m.map_b.coherence_factor * x0.c14;

  if (m.map_a.pop_survival == 1.0 && m.map_b.pop_survival == 1.0) {
    x.p11 = x0.p11;
    x.p22 = x0.p22;
    x.p33 = x0.p33;
    x.p44 = x0.p44;
    return x;
  }

  // Per-qubit population kernel w[new][old], levels 0 = excited, 1 = ground.
  const auto kernel = [](const SingleQubitMap& q) {
    const double g = q.pop_survival;
    const double feed = q.p_eq * (1.0 - g);
    return std::array<std::array<double, 2>, 2>{{{g + feed, feed},
                                                 {(1.0 - g) * (1.0 - q.p_eq), 1.0 - feed}}};
  };
  const auto wa = kernel(m.map_a);
  const auto wb = kernel(m.map_b);
  const double pops0[4] = {x0.p11, x0.p22, x0.p33, x0.p44};
  double pops[4] = {0, 0, 0, 0};
  for (int k = 0; k < 4; ++k)
    for (int j = 0; j < 4; ++j)
      pops[k] += wa[level_a(k)][level_a(j)] * wb[level_b(k)][level_b(j)] * pops0[j];
  x.p11 = pops[0];
  x.p22 = pops[1];
  x.p33 = pops[2];
  x.p44 = pops[3];
  return x;
}

}  // namespace bellsim
