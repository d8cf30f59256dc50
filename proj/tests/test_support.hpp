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

// Random inputs and reference constructions shared by the tests. The
// reference helpers are written from definitions with plain loops so they do
// not share code paths with the library.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <random>
#include <vector>

#include "qkc/qmath.hpp"

namespace qkc::testing {

using Rng = std::mt19937_64;

inline CVec random_vector(std::size_t dim, Rng& rng) {
  std::normal_distribution<double> g;
  CVec v(static_cast<Eigen::Index>(dim));
  for (auto& z : v) z = Complex(g(rng), g(rng));
  return v;
}

inline QState random_state(std::size_t dim, Rng& rng) {
  CVec v = random_vector(dim, rng);
  return QState(v / v.norm());
}

inline QState random_real_state(std::size_t dim, Rng& rng) {
  std::normal_distribution<double> g;
  CVec v(static_cast<Eigen::Index>(dim));
  for (auto& z : v) z = Complex(g(rng), 0.0);
  return QState(v / v.norm());
}

/// Random density matrix of the given rank (rank 0 means full rank).
inline DensityMatrix random_density(std::size_t dim, Rng& rng, std::size_t rank = 0) {
  if (rank == 0) rank = dim;
  const auto d = static_cast<Eigen::Index>(dim);
  CMat g(d, static_cast<Eigen::Index>(rank));
  std::normal_distribution<double> n;
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = Complex(n(rng), n(rng));
  }
  CMat rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(0.5 * (rho + rho.adjoint()));
}

inline std::vector<double> random_distribution(std::size_t n, Rng& rng) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> p(n);
  double s = 0.0;
  for (auto& x : p) s += (x = u(rng));
  for (auto& x : p) x /= s;
  return p;
}

namespace ref {

/// Kronecker product by explicit index arithmetic.
inline CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

inline CVec kron(const CVec& a, const CVec& b) {
  CVec out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    for (Eigen::Index k = 0; k < b.size(); ++k) out(i * b.size() + k) = a(i) * b(k);
  return out;
}

inline CMat kron_all(const std::vector<CMat>& ms) {
  CMat out = CMat::Identity(1, 1);
  for (const auto& m : ms) out = kron(out, m);
  return out;
}

inline CMat projector(const CVec& v) { return v * v.adjoint(); }

inline CMat pauli_z() {
  CMat z = CMat::Zero(2, 2);
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  return z;
}

inline CMat hadamard() {
  CMat h(2, 2);
  const double r = 1.0 / std::sqrt(2.0);
  h << r, r, r, -r;
  return h;
}

inline CVec ket(std::size_t dim, std::size_t i) {
  CVec v = CVec::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(i)) = 1.0;
  return v;
}

/// Swap of two d-dimensional registers, S|i>|j> = |j>|i>.
inline CMat swap(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d * d);
  CMat s = CMat::Zero(n, n);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      s(static_cast<Eigen::Index>(j * d + i), static_cast<Eigen::Index>(i * d + j)) = 1.0;
  return s;
}

/// Permutation matrix for registers of the given dims: P maps the basis state
/// with digits (r_0, ..., r_{n-1}) to the state whose digit at slot i is
/// r_{order[i]}.
inline CMat register_reorder(const std::vector<std::size_t>& dims,
                             const std::vector<std::size_t>& order) {
  std::size_t total = 1;
  for (auto d : dims) total *= d;
  CMat p = CMat::Zero(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(total));
  std::vector<std::size_t> digit(dims.size());
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    for (std::size_t r = dims.size(); r-- > 0;) {
      digit[r] = rest % dims[r];
      rest /= dims[r];
    }
    std::size_t out = 0;
    for (std::size_t i = 0; i < order.size(); ++i) out = out * dims[order[i]] + digit[order[i]];
    p(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(flat)) = 1.0;
  }
  return p;
}

/// Ancilla-first swap test unitary on [ancilla, t_0..t_{k-1}, d_0..d_{k-1},
/// rest]: H on the ancilla, swap of every (t_i, d_i) pair controlled on the
/// ancilla, H again.
inline CMat swap_test_unitary(std::size_t d, int k, std::size_t rest_dim) {
  // Swap of all k pairs on the grouped ordering (t..., d...).
  std::vector<std::size_t> dims(2 * k, d);
  std::vector<std::size_t> order(2 * k);
  for (int i = 0; i < k; ++i) {
    order[i] = static_cast<std::size_t>(k + i);
    order[k + i] = static_cast<std::size_t>(i);
  }
  const CMat s = kron(register_reorder(dims, order), CMat::Identity(rest_dim, rest_dim));
  const auto n = s.rows();
  const CMat p0 = projector(ket(2, 0)), p1 = projector(ket(2, 1));
  const CMat cswap = kron(p0, CMat::Identity(n, n)) + kron(p1, s);
  const CMat h = kron(hadamard(), CMat::Identity(n, n));
  return h * cswap * h;
}

}  // namespace ref

}  // namespace qkc::testing
