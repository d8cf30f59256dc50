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

#include "qkc/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include "qkc/error.hpp"

namespace qkc {

void check_vector_dim(std::size_t dim) {
  if (dim == 0) {
    throw DimensionError("dimension must be at least 1");
  }
  if (dim > kMaxDim) {
    throw DimensionError("dimension " + std::to_string(dim) +
                         " exceeds the cap of " + std::to_string(kMaxDim));
  }
}

void check_matrix_dim(std::size_t dim) {
  check_vector_dim(dim);
  if (dim > kMaxMatrixDim) {
    throw DimensionError("dense operator of side " + std::to_string(dim) +
                         " exceeds the cap of " + std::to_string(kMaxMatrixDim));
  }
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p < n) {
    p <<= 1;
  }
  return p;
}

// ---------------------------------------------------------------------------
// QState

QState::QState(CVec amplitudes) : vec_(std::move(amplitudes)) {
  check_vector_dim(static_cast<std::size_t>(vec_.size()));
  if (!is_power_of_two(dim())) {
    throw DimensionError("state dimension " + std::to_string(dim()) +
                         " is not a power of two");
  }
  if (!vec_.allFinite()) {
    throw DataError("state has non-finite amplitudes");
  }
  const double norm = vec_.norm();
  if (std::abs(norm - 1.0) > kStructuralTol) {
    throw DataError("state is not normalized (norm " + std::to_string(norm) + ")");
  }
}

QState QState::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) {
    throw DimensionError("basis index out of range");
  }
  CVec v = CVec::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return QState(std::move(v));
}

// ---------------------------------------------------------------------------
// Spectra

CMat HermitianSpectrum::reconstruct() const {
  return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() *
         eigenvectors.adjoint();
}

double hermiticity_defect(const CMat& a) {
  if (a.rows() != a.cols()) {
    throw DimensionError("matrix is not square");
  }
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

HermitianSpectrum eigh(const CMat& a) {
  if (a.rows() != a.cols()) {
    throw DimensionError("matrix is not square");
  }
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if (hermiticity_defect(a) > kStructuralTol * scale) {
    throw NumericError("matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<CMat> solver(a);
  if (solver.info() != Eigen::Success) {
    throw NumericError("Hermitian eigendecomposition failed");
  }
  // Eigen returns ascending order.
  HermitianSpectrum s;
  s.eigenvalues = solver.eigenvalues().reverse();
  s.eigenvectors = solver.eigenvectors().rowwise().reverse();
  return s;
}

CMat sqrt_psd(const CMat& a) {
  HermitianSpectrum s = eigh(a);
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
    double& v = s.eigenvalues(i);
    if (v < -kPsdTol) {
      throw NumericError("matrix has eigenvalue " + std::to_string(v) +
                         " below the PSD tolerance");
    }
    v = v < 0.0 ? 0.0 : std::sqrt(v);
  }
  return s.reconstruct();
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(CMat m, Validation validation) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) {
    throw DimensionError("density matrix is not square");
  }
  check_matrix_dim(dim());
  if (!m_.allFinite()) {
    throw DataError("density matrix has non-finite entries");
  }
  if (hermiticity_defect(m_) > kStructuralTol) {
    throw DataError("density matrix is not Hermitian");
  }
  const Complex tr = m_.trace();
  if (std::abs(tr.real() - 1.0) > kStructuralTol || std::abs(tr.imag()) > kStructuralTol) {
    throw DataError("density matrix trace is not 1");
  }
  // Canonical form: exactly Hermitian with exactly unit trace.
  m_ = (0.5 * (m_ + m_.adjoint())).eval();
  m_ /= m_.trace().real();
  if (validation == Validation::full) {
    Eigen::SelfAdjointEigenSolver<CMat> solver(m_, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
      throw NumericError("eigendecomposition of density matrix failed");
    }
    if (solver.eigenvalues()(0) < -kPsdTol) {
      throw DataError("density matrix has negative eigenvalue " +
                      std::to_string(solver.eigenvalues()(0)));
    }
  }
}

DensityMatrix DensityMatrix::pure(const QState& state) { return pure(state.vec()); }

DensityMatrix DensityMatrix::pure(const CVec& normalized) {
  if (std::abs(normalized.norm() - 1.0) > kStructuralTol) {
    throw DataError("pure state is not normalized");
  }
  CMat m = normalized * normalized.adjoint();
  // Outer products are Hermitian up to rounding only; symmetrize exactly.
  m = (0.5 * (m + m.adjoint())).eval();
  return DensityMatrix(std::move(m), Validation::structural);
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  check_matrix_dim(dim);
  const auto n = static_cast<Eigen::Index>(dim);
  return DensityMatrix(CMat::Identity(n, n) / static_cast<double>(dim),
                       Validation::structural);
}

DensityMatrix DensityMatrix::mixture(std::span<const double> probabilities,
                                     std::span<const QState> states) {
  if (probabilities.size() != states.size() || states.empty()) {
    throw DataError("mixture needs one probability per state");
  }
  double total = 0.0;
  for (double p : probabilities) {
    if (!(p >= 0.0)) {
      throw DataError("mixture probabilities must be nonnegative");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kStructuralTol) {
    throw DataError("mixture probabilities must sum to 1");
  }
  const auto n = static_cast<Eigen::Index>(states.front().dim());
  CMat m = CMat::Zero(n, n);
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].dim() != states.front().dim()) {
      throw DimensionError("mixture states differ in dimension");
    }
    m += probabilities[i] * states[i].vec() * states[i].vec().adjoint();
  }
  m = (0.5 * (m + m.adjoint())).eval();
  return DensityMatrix(std::move(m), Validation::structural);
}

// ---------------------------------------------------------------------------
// Tensor products

CVec tensor(const CVec& a, const CVec& b) {
  check_vector_dim(static_cast<std::size_t>(a.size() * b.size()));
  CVec out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

CMat tensor(const CMat& a, const CMat& b) {
  check_matrix_dim(static_cast<std::size_t>(std::max(a.rows() * b.rows(), a.cols() * b.cols())));
  return Eigen::kroneckerProduct(a, b).eval();
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(tensor(a.matrix(), b.matrix()), Validation::structural);
}

CVec tensor_power(const CVec& a, int k) {
  if (k < 1) {
    throw DataError("tensor power must be at least 1");
  }
  CVec out = a;
  for (int i = 1; i < k; ++i) {
    out = tensor(out, a);
  }
  return out;
}

CMat tensor_power(const CMat& a, int k) {
  if (k < 1) {
    throw DataError("tensor power must be at least 1");
  }
  CMat out = a;
  for (int i = 1; i < k; ++i) {
    out = tensor(out, a);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Partial trace

CMat partial_trace(const CMat& rho, std::span<const std::size_t> dims,
                   std::span<const std::size_t> keep) {
  if (rho.rows() != rho.cols()) {
    throw DimensionError("partial trace of a non-square matrix");
  }
  if (dims.empty() || keep.empty()) {
    throw DimensionError("partial trace needs subsystems and a nonempty keep set");
  }
  std::size_t total = 1;
  for (std::size_t d : dims) {
    if (d == 0) {
      throw DimensionError("subsystem dimension 0");
    }
    total *= d;
  }
  if (total != static_cast<std::size_t>(rho.rows())) {
    throw DimensionError("subsystem dimensions do not multiply to the matrix size");
  }
  std::vector<bool> kept(dims.size(), false);
  for (std::size_t k : keep) {
    if (k >= dims.size() || kept[k]) {
      throw DimensionError("invalid keep index in partial trace");
    }
    kept[k] = true;
  }

  // Split every flat index into (kept part, traced part), both big-endian.
  std::size_t kept_dim = 1;
  std::size_t traced_dim = 1;
  for (std::size_t s = 0; s < dims.size(); ++s) {
    (kept[s] ? kept_dim : traced_dim) *= dims[s];
  }
  // groups[t][i] = flat index whose traced part is t and kept part is i.
  std::vector<std::vector<Eigen::Index>> groups(traced_dim, std::vector<Eigen::Index>(kept_dim));
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    std::size_t k_idx = 0, t_idx = 0, k_stride = 1, t_stride = 1;
    for (std::size_t s = dims.size(); s-- > 0;) {
      const std::size_t digit = rem % dims[s];
      rem /= dims[s];
      if (kept[s]) {
        k_idx += digit * k_stride;
        k_stride *= dims[s];
      } else {
        t_idx += digit * t_stride;
        t_stride *= dims[s];
      }
    }
    groups[t_idx][k_idx] = static_cast<Eigen::Index>(flat);
  }

  const auto n = static_cast<Eigen::Index>(kept_dim);
  CMat out = CMat::Zero(n, n);
  for (const auto& idx : groups) {
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index i = 0; i < n; ++i) {
        out(i, j) += rho(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
      }
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
  CMat reduced = partial_trace(rho.matrix(), dims, keep);
  reduced = (0.5 * (reduced + reduced.adjoint())).eval();
  return DensityMatrix(std::move(reduced), Validation::structural);
}

// ---------------------------------------------------------------------------
// Similarity measures

double trace_product(const CMat& a, const CMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
    throw DimensionError("trace of product: dimension mismatch");
  }
  // Tr(AB) = sum_ij A_ij B_ji
  const Complex t = a.cwiseProduct(b.transpose()).sum();
  const double scale = std::max(1.0, a.norm() * b.norm());
  if (std::abs(t.imag()) > kStructuralTol * scale) {
    throw NumericError("trace of product has imaginary part " + std::to_string(t.imag()));
  }
  return t.real();
}

double hs_inner(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("hs_inner: dimension mismatch");
  }
  return trace_product(a.matrix(), b.matrix());
}

double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("fidelity: dimension mismatch");
  }
  // Eigenvalues below the floor are roundoff of exact zeros; their square
  // roots (~1e-8) would otherwise swamp the result for low-rank inputs.
  const double floor = 1e-14 * static_cast<double>(a.dim());
  HermitianSpectrum sa = eigh(a.matrix());
  for (Eigen::Index i = 0; i < sa.eigenvalues.size(); ++i) {
    double& v = sa.eigenvalues(i);
    if (v < -kPsdTol) {
      throw NumericError("fidelity: first argument is not PSD");
    }
    v = v > floor ? std::sqrt(v) : 0.0;
  }
  const CMat root = sa.reconstruct();
  CMat inner = root * b.matrix() * root;
  inner = (0.5 * (inner + inner.adjoint())).eval();
  const HermitianSpectrum s = eigh(inner);
  double tr = 0.0;
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
    const double v = s.eigenvalues(i);
    if (v < -kPsdTol) {
      throw NumericError("fidelity: intermediate matrix is not PSD");
    }
    tr += v > floor ? std::sqrt(v) : 0.0;
  }
  return tr * tr;
}

double squared_overlap(const QState& x, const QState& y) {
  if (x.dim() != y.dim()) {
    throw DimensionError("squared_overlap: dimension mismatch");
  }
  return std::norm(x.vec().dot(y.vec()));
}

}  // namespace qkc
