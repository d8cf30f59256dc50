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

#include "qkc/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qkc/error.hpp"

namespace qkc {

// ---------------------------------------------------------------------------
// Observable

Observable::Observable(Layout layout, std::optional<CMat> dense, std::vector<std::size_t> image,
                       std::vector<double> sign)
    : layout_(std::move(layout)),
      dense_(std::move(dense)),
      image_(std::move(image)),
      sign_(std::move(sign)) {}

Observable Observable::dense(CMat matrix, Layout layout) {
  if (matrix.rows() != matrix.cols() ||
      static_cast<std::size_t>(matrix.rows()) != layout.total_dim()) {
    throw DimensionError("observable matrix does not match layout " + layout.describe());
  }
  check_matrix_dim(static_cast<std::size_t>(matrix.rows()));
  const double scale = std::max(1.0, matrix.cwiseAbs().maxCoeff());
  if (hermiticity_defect(matrix) > kStructuralTol * scale) {
    throw NumericError("observable is not Hermitian");
  }
  matrix = (0.5 * (matrix + matrix.adjoint())).eval();
  return Observable(std::move(layout), std::move(matrix), {}, {});
}

Observable Observable::signed_permutation(std::vector<std::size_t> image, std::vector<double> sign,
                                          Layout layout) {
  const std::size_t n = layout.total_dim();
  if (image.size() != n || sign.size() != n) {
    throw DimensionError("signed permutation does not match layout " + layout.describe());
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (image[j] >= n || image[image[j]] != j) {
      throw NumericError("signed permutation image is not an involution");
    }
    if ((sign[j] != 1.0 && sign[j] != -1.0) || sign[j] != sign[image[j]]) {
      throw NumericError("signed permutation signs make the operator non-Hermitian");
    }
  }
  return Observable(std::move(layout), std::nullopt, std::move(image), std::move(sign));
}

CMat Observable::matrix() const {
  if (dense_) {
    return *dense_;
  }
  const std::size_t n = dim();
  check_matrix_dim(n);
  const auto d = static_cast<Eigen::Index>(n);
  CMat m = CMat::Zero(d, d);
  for (std::size_t j = 0; j < n; ++j) {
    m(static_cast<Eigen::Index>(image_[j]), static_cast<Eigen::Index>(j)) = sign_[j];
  }
  return m;
}

CVec Observable::apply(const CVec& v) const {
  if (static_cast<std::size_t>(v.size()) != dim()) {
    throw DimensionError("observable applied to a vector of the wrong size");
  }
  if (dense_) {
    return *dense_ * v;
  }
  CVec out(v.size());
  for (std::size_t j = 0; j < image_.size(); ++j) {
    out(static_cast<Eigen::Index>(image_[j])) = sign_[j] * v(static_cast<Eigen::Index>(j));
  }
  return out;
}

Complex Observable::trace_with(const CMat& rho) const {
  if (static_cast<std::size_t>(rho.rows()) != dim() || rho.rows() != rho.cols()) {
    throw DimensionError("observable traced against a matrix of the wrong size");
  }
  if (dense_) {
    return dense_->cwiseProduct(rho.transpose()).sum();
  }
  // O_{image_j, j} = sign_j, so Tr(O rho) = sum_j sign_j rho(j, image_j).
  Complex t = 0.0;
  for (std::size_t j = 0; j < image_.size(); ++j) {
    t += sign_[j] * rho(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(image_[j]));
  }
  return t;
}

HermitianSpectrum Observable::spectrum() const { return eigh(matrix()); }

bool Observable::has_pm_one_spectrum() const {
  if (!dense_) {
    return true;
  }
  const HermitianSpectrum s = spectrum();
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
    if (std::abs(std::abs(s.eigenvalues(i)) - 1.0) > kDerivedTol) {
      return false;
    }
  }
  return true;
}

CMat Observable::projector(int outcome) const {
  if (outcome != 1 && outcome != -1) {
    throw DataError("projector outcome must be +1 or -1");
  }
  if (!dense_) {
    const auto d = static_cast<Eigen::Index>(dim());
    return 0.5 * (CMat::Identity(d, d) + static_cast<double>(outcome) * matrix());
  }
  const HermitianSpectrum s = spectrum();
  const auto d = static_cast<Eigen::Index>(dim());
  CMat p = CMat::Zero(d, d);
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
    const double v = s.eigenvalues(i);
    if (std::abs(std::abs(v) - 1.0) > kDerivedTol) {
      throw NumericError("observable spectrum is not +-1");
    }
    if (std::abs(v - outcome) <= kDerivedTol) {
      p += s.eigenvectors.col(i) * s.eigenvectors.col(i).adjoint();
    }
  }
  return p;
}

// ---------------------------------------------------------------------------
// Layout-derived permutations

std::vector<std::size_t> pair_swap_permutation(const Layout& layout) {
  const std::size_t k = layout.count(Role::test);
  if (k == 0 || layout.count(Role::train) != k) {
    throw DimensionError("layout needs matching test and train copies: " + layout.describe());
  }
  struct Pair {
    std::size_t test_stride, train_stride, dim;
  };
  const auto strides = layout.strides();
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t t = layout.require(Role::test, i);
    const std::size_t d = layout.require(Role::train, i);
    if (layout[t].dim != layout[d].dim) {
      throw DimensionError("test and train copy " + std::to_string(i) + " differ in dimension");
    }
    pairs.push_back({strides[t], strides[d], layout[t].dim});
  }
  const std::size_t n = layout.total_dim();
  std::vector<std::size_t> image(n);
  for (std::size_t idx = 0; idx < n; ++idx) {
    std::size_t out = idx;
    for (const auto& p : pairs) {
      const std::size_t a = (idx / p.test_stride) % p.dim;
      const std::size_t b = (idx / p.train_stride) % p.dim;
      out = out - a * p.test_stride - b * p.train_stride + b * p.test_stride + a * p.train_stride;
    }
    image[idx] = out;
  }
  return image;
}

// ---------------------------------------------------------------------------
// SwapTestCircuit

SwapTestCircuit::SwapTestCircuit(Layout layout) : layout_(std::move(layout)) {
  const auto a = layout_.find(Role::ancilla);
  if (!a) {
    throw DimensionError("swap-test circuit needs an ancilla register: " + layout_.describe());
  }
  if (layout_[*a].dim != 2) {
    throw DimensionError("ancilla must be a qubit");
  }
  ancilla_stride_ = layout_.strides()[*a];
  controlled_swap_ = pair_swap_permutation(layout_);
  for (std::size_t idx = 0; idx < controlled_swap_.size(); ++idx) {
    if ((idx / ancilla_stride_) % 2 == 0) {
      controlled_swap_[idx] = idx;
    }
  }
}

void SwapTestCircuit::hadamard(CVec& v) const {
  const double r = (1.0 / std::numbers::sqrt2);
  for (std::size_t i = 0; i < static_cast<std::size_t>(v.size()); ++i) {
    if ((i / ancilla_stride_) % 2 != 0) continue;
    const auto i0 = static_cast<Eigen::Index>(i);
    const auto i1 = static_cast<Eigen::Index>(i + ancilla_stride_);
    const Complex x = v(i0), y = v(i1);
    v(i0) = r * (x + y);
    v(i1) = r * (x - y);
  }
}

void SwapTestCircuit::hadamard_rows(CMat& m) const {
  const double r = (1.0 / std::numbers::sqrt2);
  for (std::size_t i = 0; i < static_cast<std::size_t>(m.rows()); ++i) {
    if ((i / ancilla_stride_) % 2 != 0) continue;
    const auto i0 = static_cast<Eigen::Index>(i);
    const auto i1 = static_cast<Eigen::Index>(i + ancilla_stride_);
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const Complex x = m(i0, c), y = m(i1, c);
      m(i0, c) = r * (x + y);
      m(i1, c) = r * (x - y);
    }
  }
}

CVec SwapTestCircuit::apply(const CVec& psi) const {
  if (static_cast<std::size_t>(psi.size()) != layout_.total_dim()) {
    throw DimensionError("state does not match circuit layout");
  }
  CVec v = psi;
  hadamard(v);
  CVec w(v.size());
  for (std::size_t i = 0; i < controlled_swap_.size(); ++i) {
    w(static_cast<Eigen::Index>(i)) = v(static_cast<Eigen::Index>(controlled_swap_[i]));
  }
  hadamard(w);
  return w;
}

CMat SwapTestCircuit::apply(const CMat& rho) const {
  if (static_cast<std::size_t>(rho.rows()) != layout_.total_dim() || rho.rows() != rho.cols()) {
    throw DimensionError("density matrix does not match circuit layout");
  }
  // H is real symmetric: H rho H = (H (H rho)^T)^T.
  CMat m = rho;
  hadamard_rows(m);
  m.transposeInPlace();
  hadamard_rows(m);
  m.transposeInPlace();
  const auto n = static_cast<Eigen::Index>(controlled_swap_.size());
  CMat g(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto pj = static_cast<Eigen::Index>(controlled_swap_[static_cast<std::size_t>(j)]);
    for (Eigen::Index i = 0; i < n; ++i) {
      g(i, j) = m(static_cast<Eigen::Index>(controlled_swap_[static_cast<std::size_t>(i)]), pj);
    }
  }
  hadamard_rows(g);
  g.transposeInPlace();
  hadamard_rows(g);
  g.transposeInPlace();
  return g;
}

ClassifierState SwapTestCircuit::apply(const ClassifierState& state) const {
  if (state.layout() != layout_) {
    throw DimensionError("state layout " + state.layout().describe() +
                         " does not match circuit layout " + layout_.describe());
  }
  if (state.is_pure()) {
    CVec out = apply(state.vector());
    out /= out.norm();
    return ClassifierState::pure(layout_, std::move(out));
  }
  return ClassifierState::mixed(
      layout_, DensityMatrix(apply(state.density().matrix()), Validation::structural));
}

CMat SwapTestCircuit::matrix() const {
  const std::size_t n = layout_.total_dim();
  check_matrix_dim(n);
  const auto d = static_cast<Eigen::Index>(n);
  CMat v(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    CVec e = CVec::Zero(d);
    e(j) = 1.0;
    v.col(j) = apply(e);
  }
  return v;
}

CMat build_v(const Layout& layout) { return SwapTestCircuit(layout).matrix(); }

// ---------------------------------------------------------------------------
// Named observables

Observable build_swap(std::size_t qubits_per_side) {
  if (qubits_per_side == 0 || qubits_per_side > 10) {
    throw DimensionError("swap needs between 1 and 10 qubits per side");
  }
  const std::size_t d = std::size_t{1} << qubits_per_side;
  Layout layout({{Role::test, 0, d}, {Role::train, 0, d}});
  auto image = pair_swap_permutation(layout);
  return Observable::signed_permutation(std::move(image), std::vector<double>(d * d, 1.0),
                                        std::move(layout));
}

Observable build_o(const Layout& layout) {
  if (layout.find(Role::ancilla)) {
    throw DimensionError("the effective observable acts on ancilla-free layouts");
  }
  const std::size_t label = layout.require(Role::label);
  const std::size_t label_stride = layout.strides()[label];
  auto image = pair_swap_permutation(layout);
  std::vector<double> sign(image.size());
  for (std::size_t j = 0; j < sign.size(); ++j) {
    sign[j] = (j / label_stride) % 2 == 0 ? 1.0 : -1.0;
  }
  return Observable::signed_permutation(std::move(image), std::move(sign), layout);
}

Layout minimal_layout(int n, int k) {
  if (n < 1 || k < 1) {
    throw DimensionError("minimal layout needs n >= 1 and k >= 1");
  }
  if (static_cast<long long>(n) * k > 19) {
    throw DimensionError("n*k = " + std::to_string(n * k) + " exceeds the dimension cap");
  }
  const std::size_t d = std::size_t{1} << n;
  std::vector<Register> regs;
  for (int i = 0; i < k; ++i) {
    regs.push_back({Role::test, static_cast<std::size_t>(i), d});
    regs.push_back({Role::train, static_cast<std::size_t>(i), d});
  }
  regs.push_back({Role::label, 0, 2});
  return Layout(std::move(regs));
}

Observable build_o(int n, int k) { return build_o(minimal_layout(n, k)); }

namespace {

Observable diagonal_z(const Layout& layout, const std::vector<std::size_t>& registers) {
  const auto strides = layout.strides();
  const std::size_t n = layout.total_dim();
  std::vector<std::size_t> image(n);
  std::vector<double> sign(n);
  for (std::size_t j = 0; j < n; ++j) {
    image[j] = j;
    int parity = 0;
    for (std::size_t r : registers) {
      parity += static_cast<int>((j / strides[r]) % 2);
    }
    sign[j] = parity % 2 == 0 ? 1.0 : -1.0;
  }
  return Observable::signed_permutation(std::move(image), std::move(sign), layout);
}

}  // namespace

Observable build_z_al(const Layout& layout) {
  const std::size_t a = layout.require(Role::ancilla);
  const std::size_t l = layout.require(Role::label);
  if (layout[a].dim != 2 || layout[l].dim != 2) {
    throw DimensionError("ancilla and label must be qubits");
  }
  return diagonal_z(layout, {a, l});
}

Observable build_z_ancilla(const Layout& layout) {
  const std::size_t a = layout.require(Role::ancilla);
  if (layout[a].dim != 2) {
    throw DimensionError("ancilla must be a qubit");
  }
  return diagonal_z(layout, {a});
}

// ---------------------------------------------------------------------------
// Measurement

namespace {

void require_matching(const Observable& obs, const ClassifierState& state) {
  if (obs.layout() != state.layout()) {
    throw DimensionError("observable layout " + obs.layout().describe() +
                         " does not match state layout " + state.layout().describe());
  }
}

}  // namespace

double expectation(const Observable& obs, const ClassifierState& state) {
  require_matching(obs, state);
  Complex e;
  if (state.is_pure()) {
    const CVec& v = state.vector();
    e = v.dot(obs.apply(v));
  } else {
    e = obs.trace_with(state.density().matrix());
  }
  if (std::abs(e.imag()) > kDerivedTol) {
    throw NumericError("expectation has imaginary part " + std::to_string(e.imag()));
  }
  return e.real();
}

OutcomeProbabilities outcome_probabilities(const Observable& obs, const ClassifierState& state) {
  require_matching(obs, state);
  OutcomeProbabilities p;
  if (obs.is_signed_permutation()) {
    // P_lambda = (I + lambda O) / 2 for an involution O.
    Complex tr, tr_o;
    if (state.is_pure()) {
      const CVec& v = state.vector();
      tr = v.squaredNorm();
      tr_o = v.dot(obs.apply(v));
    } else {
      tr = state.density().matrix().trace();
      tr_o = obs.trace_with(state.density().matrix());
    }
    p.plus = 0.5 * (tr + tr_o).real();
    p.minus = 0.5 * (tr - tr_o).real();
  } else {
    const HermitianSpectrum s = obs.spectrum();
    for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
      const double v = s.eigenvalues(i);
      if (std::abs(std::abs(v) - 1.0) > kDerivedTol) {
        throw NumericError("outcome probabilities need a +-1 spectrum");
      }
      const CVec u = s.eigenvectors.col(i);
      double weight;
      if (state.is_pure()) {
        weight = std::norm(u.dot(state.vector()));
      } else {
        weight = u.dot(state.density().matrix() * u).real();
      }
      (v > 0 ? p.plus : p.minus) += weight;
    }
  }
  if (std::abs(p.plus + p.minus - 1.0) > kDerivedTol) {
    throw NumericError("outcome probabilities do not sum to 1");
  }
  // Clamp rounding noise at the edges of [0, 1].
  p.plus = std::clamp(p.plus, 0.0, 1.0);
  p.minus = std::clamp(p.minus, 0.0, 1.0);
  return p;
}

int draw_outcome(const OutcomeProbabilities& p, ShotRng& rng) {
  // 53 random bits -> uniform double in [0, 1); independent of the
  // standard library's distribution implementations.
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return u < p.plus ? 1 : -1;
}

std::vector<ShotRecord> sample_shots(const Observable& obs, const ClassifierState& state,
                                     std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) {
    throw DataError("shots must be at least 1");
  }
  const OutcomeProbabilities p = outcome_probabilities(obs, state);
  ShotRng rng(seed);
  std::uint64_t plus = 0;
  for (std::uint64_t s = 0; s < shots; ++s) {
    plus += draw_outcome(p, rng) == 1 ? 1 : 0;
  }
  return {ShotRecord{1, plus, seed}, ShotRecord{-1, shots - plus, seed}};
}

}  // namespace qkc
