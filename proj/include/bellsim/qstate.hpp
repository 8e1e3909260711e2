#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "bellsim/linalg.hpp"
#include "bellsim/types.hpp"

namespace bellsim {

inline constexpr double kDensityHermTol = 1e-10;
inline constexpr double kDensityTraceTol = 1e-10;
inline constexpr double kDensityEigFloor = -1e-10;
inline constexpr double kXStructureTol = 1e-10;
inline constexpr double kXBlockSlack = 1e-12;

// Two-qubit state with nonzero entries only on the diagonal and
// anti-diagonal of the basis of types.hpp:
//
//   [ p11  .    .    c14 ]
//   [ .    p22  c23  .   ]
//   [ .    c23* p33  .   ]
//   [ c14* .    .    p44 ]
//
// c23 is the one-excitation coherence <01|rho|10>, c14 the two-excitation
// coherence <11|rho|00>.
struct XState {
  double p11 = 0, p22 = 0, p33 = 0, p44 = 0;
  Complex c14{0, 0};
  Complex c23{0, 0};

  void validate() const {
    const double tr = p11 + p22 + p33 + p44;
    if (p11 < -kXBlockSlack || p22 < -kXBlockSlack || p33 < -kXBlockSlack ||
        p44 < -kXBlockSlack)
      throw std::runtime_error("XState: negative population");
    if (std::abs(tr - 1.0) > kDensityTraceTol)
      throw std::runtime_error("XState: trace differs from 1 beyond tolerance");
    if (std::norm(c14) > p11 * p44 + kXBlockSlack)
      throw std::runtime_error("XState: |c14|^2 exceeds p11*p44 (outer block not PSD)");
    if (std::norm(c23) > p22 * p33 + kXBlockSlack)
      throw std::runtime_error("XState: |c23|^2 exceeds p22*p33 (inner block not PSD)");
  }
};

enum class EwlFamily {
  Phi,  // pure part a|01> + b|10>  (one excitation)
  Psi,  // pure part a|00> + b|11>  (two / zero excitations)
};

// Werner-like mixture r |pure><pure| + (1-r) I/4.  The pure-part amplitudes
// are a = sqrt(a2) e^{i phase} and b = sqrt(1-a2) >= 0; every reported
// quantity depends only on |ab| and coherence magnitudes.
struct EwlParams {
  EwlFamily family = EwlFamily::Phi;
  double r = 1.0;
  double a2 = 0.5;
  double phase = 0.0;

  Complex a() const { return std::polar(std::sqrt(a2), phase); }
  double b() const { return std::sqrt(1.0 - a2); }

  void validate() const {
    if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("EwlParams: r must be in [0,1]");
    if (!(a2 >= 0.0 && a2 <= 1.0)) throw std::invalid_argument("EwlParams: a2 must be in [0,1]");
    if (!std::isfinite(phase)) throw std::invalid_argument("EwlParams: phase must be finite");
  }
};

inline XState ewl_state(const EwlParams& p) {
  p.validate();
  const double mix = (1.0 - p.r) / 4.0;
  const Complex a = p.a();
  const double b = p.b();
  XState x;
  if (p.family == EwlFamily::Phi) {
    x.p22 = p.r * std::norm(a) + mix;
    x.p33 = p.r * b * b + mix;
    x.p11 = mix;
    x.p44 = mix;
    x.c23 = p.r * a * b;  // b real: a * conj(b) = a * b
    x.c14 = Complex(0, 0);
  } else {
    x.p44 = p.r * std::norm(a) + mix;
    x.p11 = p.r * b * b + mix;
    x.p22 = mix;
    x.p33 = mix;
    x.c14 = p.r * b * std::conj(a);
    x.c23 = Complex(0, 0);
  }
  return x;
}

inline CMat4 to_dense(const XState& x) {
  x.validate();
  CMat4 m = CMat4::Zero();
  m(0, 0) = x.p11;
  m(1, 1) = x.p22;
  m(2, 2) = x.p33;
  m(3, 3) = x.p44;
  m(0, 3) = x.c14;
  m(3, 0) = std::conj(x.c14);
  m(1, 2) = x.c23;
  m(2, 1) = std::conj(x.c23);
  return m;
}

// Extracts the seven X parameters; any entry off the X pattern with
// magnitude above tol is a structure error (reported with 1-based indices).
inline XState from_dense(const CMat4& m, double tol = kXStructureTol) {
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const bool on_pattern = (i == j) || (i + j == 3);
      if (!on_pattern && std::abs(m(i, j)) > tol)
        throw std::runtime_error("from_dense: non-X entry at (" + std::to_string(i + 1) +
                                 "," + std::to_string(j + 1) + ") exceeds tolerance");
    }
  }
  XState x;
  x.p11 = m(0, 0).real();
  x.p22 = m(1, 1).real();
  x.p33 = m(2, 2).real();
  x.p44 = m(3, 3).real();
  x.c14 = m(0, 3);
  x.c23 = m(1, 2);
  return x;
}

struct StateDiagnostics {
  double hermiticity_defect = 0;
  double trace_defect = 0;
  double min_eigenvalue = 0;

  bool passes() const {
    return hermiticity_defect <= kDensityHermTol && trace_defect <= kDensityTraceTol &&
           min_eigenvalue >= kDensityEigFloor;
  }
};

// Density-matrix health report: Hermiticity defect, |trace - 1|, smallest
// eigenvalue of the Hermitian part.
inline StateDiagnostics validate(const CMat4& m) {
  StateDiagnostics d;
  d.hermiticity_defect = hermiticity_defect(m);
  d.trace_defect = std::abs(m.trace() - Complex(1, 0));
  const CMat4 herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat4> solver(herm);
  d.min_eigenvalue = solver.eigenvalues().minCoeff();
  return d;
}

}  // namespace bellsim
