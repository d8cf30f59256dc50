// Copyright 2026 The qkc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Dense complex linear algebra used by every other module: state vectors,
 * density matrices, tensor products, partial traces, Hermitian spectra and
 * the two similarity measures (Hilbert-Schmidt inner product and Uhlmann
 * fidelity).
 *
 * Register order is big-endian throughout: in `tensor(a, b)` the left
 * operand owns the most significant index digits.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qkc {

using Complex = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

/// Largest state-vector dimension accepted anywhere in the library.
inline constexpr std::size_t kMaxDim = std::size_t{1} << 20;
/// Largest side length of a dense square operator (16 bytes per entry).
inline constexpr std::size_t kMaxMatrixDim = std::size_t{1} << 13;

/// Structural invariants (normalization, Hermiticity, trace).
inline constexpr double kStructuralTol = 1e-12;
/// Equalities that hold only after nontrivial arithmetic.
inline constexpr double kDerivedTol = 1e-10;
/// Most negative eigenvalue tolerated in a density matrix.
inline constexpr double kPsdTol = 1e-10;

void check_vector_dim(std::size_t dim);
void check_matrix_dim(std::size_t dim);

bool is_power_of_two(std::size_t n);
std::size_t next_power_of_two(std::size_t n);

/// Normalized state vector whose dimension is a power of two.
class QState {
 public:
  explicit QState(CVec amplitudes);

  static QState basis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return static_cast<std::size_t>(vec_.size()); }
  const CVec& vec() const { return vec_; }
  Complex operator[](std::size_t i) const { return vec_(static_cast<Eigen::Index>(i)); }

 private:
  CVec vec_;
};

/// Eigenvalues in descending order; eigenvectors are the matching columns.
struct HermitianSpectrum {
  RVec eigenvalues;
  CMat eigenvectors;

  CMat reconstruct() const;
};

enum class Validation {
  /// Hermitian, unit trace and min eigenvalue >= -kPsdTol.
  full,
  /// Hermitian and unit trace only. For matrices that are PSD by
  /// construction (convex sums of tensor products of valid inputs).
  structural,
};

/// Hermitian, unit-trace, positive semi-definite matrix.
class DensityMatrix {
 public:
  explicit DensityMatrix(CMat m, Validation validation = Validation::full);

  static DensityMatrix pure(const QState& state);
  static DensityMatrix pure(const CVec& normalized);
  static DensityMatrix maximally_mixed(std::size_t dim);
  /// sum_i p_i |x_i><x_i| for a probability vector p.
  static DensityMatrix mixture(std::span<const double> probabilities,
                               std::span<const QState> states);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const CMat& matrix() const { return m_; }

 private:
  CMat m_;
};

/// max_ij |A_ij - conj(A_ji)|.
double hermiticity_defect(const CMat& a);

CVec tensor(const CVec& a, const CVec& b);
CMat tensor(const CMat& a, const CMat& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
CVec tensor_power(const CVec& a, int k);
CMat tensor_power(const CMat& a, int k);

/// Reduced operator on the subsystems listed in `keep` (in ascending
/// subsystem order). `dims` lists the subsystem dimensions, most
/// significant first.
CMat partial_trace(const CMat& rho, std::span<const std::size_t> dims,
                   std::span<const std::size_t> keep);
DensityMatrix partial_trace(const DensityMatrix& rho,
                            std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);

HermitianSpectrum eigh(const CMat& a);

/// Principal square root of a PSD matrix. Eigenvalues in [-kPsdTol, 0) are
/// clamped to zero; anything more negative is a NumericError.
CMat sqrt_psd(const CMat& a);

/// Tr(A B) for Hermitian A, B; the imaginary residual must stay below
/// kStructuralTol (scaled by the operand norms).
double trace_product(const CMat& a, const CMat& b);

/// Tr(a b), the Hilbert-Schmidt inner product of two density matrices.
double hs_inner(const DensityMatrix& a, const DensityMatrix& b);

/// Uhlmann fidelity Tr(sqrt(sqrt(a) b sqrt(a)))^2.
double fidelity(const DensityMatrix& a, const DensityMatrix& b);

/// |<x|y>|^2.
double squared_overlap(const QState& x, const QState& y);

}  // namespace qkc
