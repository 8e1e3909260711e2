#pragma once

#include <Eigen/Dense>
#include <complex>

namespace bellsim {

// Dense complex types used throughout, templated on the real scalar.
template <typename T> using ComplexMat2 = Eigen::Matrix<std::complex<T>, 2, 2>;
template <typename T> using ComplexMat3 = Eigen::Matrix<std::complex<T>, 3, 3>;
template <typename T> using ComplexMat4 = Eigen::Matrix<std::complex<T>, 4, 4>;
template <typename T> using RealVec4 = Eigen::Matrix<T, 4, 1>;

using Complex = std::complex<double>;
using CMat2 = ComplexMat2<double>;
using CMat3 = ComplexMat3<double>;
using CMat4 = ComplexMat4<double>;

inline constexpr const char* kVersion = "1.0.0";

// CODATA values.
inline constexpr double kHBar = 1.054571817e-34;       // J s
inline constexpr double kBoltzmann = 1.380649e-23;     // J / K

// Two-qubit computational basis, in the order used everywhere in this
// project:
//
//   index 0 = |11>,  1 = |01>,  2 = |10>,  3 = |00>
//
// where the state is written |q_A q_B> and |0> is the single-qubit ground
// state (H|0> = -Omega/2 |0>).  Qubit A toggles with the low bit of the
// index, qubit B with the high bit.  Level 0 means "excited", level 1
// means "ground" below.
inline constexpr int level_a(int k) { return k & 1; }
inline constexpr int level_b(int k) { return k >> 1; }

inline constexpr const char* kBasisOrder = "11,01,10,00";

}  // namespace bellsim
