#pragma once

#include <cmath>

#include "bellsim/qstate.hpp"
#include "bellsim/rng.hpp"
#include "bellsim/types.hpp"

namespace bellsim::test {

inline Complex random_unit_complex(SplitMix64& rng) {
  return std::polar(1.0, 2.0 * std::numbers::pi * rng.next_uniform());
}

// Valid X state: populations from normalized exponentials, coherences drawn
// inside their positivity disks.
inline XState random_xstate(SplitMix64& rng) {
  double p[4];
  double sum = 0;
  for (double& v : p) {
    v = -std::log(rng.next_uniform());
    sum += v;
  }
  for (double& v : p) v /= sum;
  XState x;
  x.p11 = p[0];
  x.p22 = p[1];
  x.p33 = p[2];
  x.p44 = p[3];
  x.c14 = rng.next_uniform() * std::sqrt(x.p11 * x.p44) * random_unit_complex(rng);
  x.c23 = rng.next_uniform() * std::sqrt(x.p22 * x.p33) * random_unit_complex(rng);
  return x;
}

// Random full-rank density matrix G G^dag / tr.
inline CMat4 random_density(SplitMix64& rng) {
  CMat4 g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = Complex(rng.next_normal(), rng.next_normal());
  CMat4 rho = g * g.adjoint();
  rho /= rho.trace().real();
  return rho;
}

inline CMat4 random_hermitian(SplitMix64& rng) {
  CMat4 g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = Complex(rng.next_normal(), rng.next_normal());
  return 0.5 * (g + g.adjoint());
}

inline CMat2 random_mat2(SplitMix64& rng) {
  CMat2 m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m(i, j) = Complex(rng.next_normal(), rng.next_normal());
  return m;
}

}  // namespace bellsim::test
