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
 * The swap-test unitary V = H_a . prod_i c-swap(test_i, train_i | a=1) . H_a,
 * the measured observables (Z_al, the swap operator, the effective
 * observable O = S (x) sigma_z), expectation values, outcome probabilities
 * and seeded shot sampling.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "qkc/qmath.hpp"
#include "qkc/state.hpp"

namespace qkc {

/// Hermitian observable over a register layout.
///
/// Two storage forms: a dense matrix, or a signed permutation
/// O|j> = sign_j |image_j> (every named observable here is one). The
/// spectrum is computed on demand from the dense form.
class Observable {
 public:
  static Observable dense(CMat matrix, Layout layout);
  /// `image` must be an involution and sign[j] == sign[image[j]] with
  /// entries +1 or -1, which makes the operator Hermitian with O^2 = I.
  static Observable signed_permutation(std::vector<std::size_t> image, std::vector<double> sign,
                                       Layout layout);

  std::size_t dim() const { return layout_.total_dim(); }
  const Layout& layout() const { return layout_; }
  bool is_signed_permutation() const { return !dense_.has_value(); }

  /// Dense matrix (materialized for signed permutations; subject to the
  /// dense operator cap).
  CMat matrix() const;
  CVec apply(const CVec& v) const;
  HermitianSpectrum spectrum() const;
  /// True when every eigenvalue is +1 or -1 within kDerivedTol.
  bool has_pm_one_spectrum() const;
  /// Spectral projector onto the eigenspace of `outcome` (+1 or -1).
  CMat projector(int outcome) const;

  /// Tr(O rho) for a dense rho of matching size (not necessarily a state).
  Complex trace_with(const CMat& rho) const;

 private:
  Observable(Layout layout, std::optional<CMat> dense, std::vector<std::size_t> image,
             std::vector<double> sign);

  Layout layout_;
  std::optional<CMat> dense_;
  std::vector<std::size_t> image_;
  std::vector<double> sign_;
};

/// Flat-index permutation that exchanges test copy i with train copy i for
/// every copy present in the layout (an involution).
std::vector<std::size_t> pair_swap_permutation(const Layout& layout);

/// The swap-test unitary for a layout that contains an ancilla qubit and at
/// least one (test, train) copy pair of equal dimension. All other registers
/// pass through.
class SwapTestCircuit {
 public:
  explicit SwapTestCircuit(Layout layout);

  const Layout& layout() const { return layout_; }
  /// Explicit unitary matrix.
  CMat matrix() const;
  CVec apply(const CVec& psi) const;
  /// V rho V^dagger.
  CMat apply(const CMat& rho) const;
  ClassifierState apply(const ClassifierState& state) const;

 private:
  void hadamard_rows(CMat& m) const;
  void hadamard(CVec& v) const;

  Layout layout_;
  std::size_t ancilla_stride_ = 0;
  /// Controlled swap as a flat-index involution (identity where ancilla = 0).
  std::vector<std::size_t> controlled_swap_;
};

/// Explicit V for `layout`; see SwapTestCircuit.
CMat build_v(const Layout& layout);

/// Swap of two registers of `qubits_per_side` qubits each.
Observable build_swap(std::size_t qubits_per_side);

/// Effective observable: the swap of every (test_i, train_i) pair times
/// sigma_z on the label, identity on any other register. The layout must not
/// contain an ancilla.
Observable build_o(const Layout& layout);

/// Ancilla-free layout (test0, train0, ..., test{k-1}, train{k-1}, label)
/// with data registers of n qubits.
Layout minimal_layout(int n, int k);

/// build_o(minimal_layout(n, k)).
Observable build_o(int n, int k);

/// sigma_z on the ancilla times sigma_z on the label.
Observable build_z_al(const Layout& layout);

/// sigma_z on the ancilla only.
Observable build_z_ancilla(const Layout& layout);

/// Tr(obs rho) (or <psi|obs|psi>); the imaginary residual must be below
/// kDerivedTol.
double expectation(const Observable& obs, const ClassifierState& state);

struct OutcomeProbabilities {
  double plus = 0.0;
  double minus = 0.0;

  double operator[](int outcome) const { return outcome == 1 ? plus : minus; }
};

/// Pr[lambda] = Tr(rho P_lambda) with P_lambda the spectral projector of a
/// +-1 observable. Signed permutations use P = (I + lambda O)/2, which for
/// the effective observable is the symmetric / antisymmetric swap subspace
/// paired with the matching label. Dense observables use their eigenvectors.
OutcomeProbabilities outcome_probabilities(const Observable& obs, const ClassifierState& state);

struct ShotRecord {
  int outcome = 1;
  std::uint64_t count = 0;
  std::uint64_t seed = 0;
};

/// Generator used for every sampled measurement.
using ShotRng = std::mt19937_64;

/// One draw of lambda in {+1, -1}.
int draw_outcome(const OutcomeProbabilities& p, ShotRng& rng);

/// `shots` i.i.d. draws; returns one record for +1 and one for -1.
std::vector<ShotRecord> sample_shots(const Observable& obs, const ClassifierState& state,
                                     std::uint64_t shots, std::uint64_t seed);

}  // namespace qkc
