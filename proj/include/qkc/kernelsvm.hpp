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
 * Kernels, Gram matrices, PSD certification, a dual SVM trainer (SMO) and the
 * class-centroid decision.
 */

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qkc/encoding.hpp"
#include "qkc/qmath.hpp"

namespace qkc {

enum class KernelKind {
  /// |<x|y>|^2 on pure states.
  squared_overlap,
  /// Tr(rho sigma) on density matrices.
  hs_trace,
  /// Re<x|y> on pure states.
  real_overlap,
};

std::string to_string(KernelKind kind);
KernelKind kernel_kind_from_string(std::string_view name);

struct KernelSpec {
  KernelKind kind = KernelKind::squared_overlap;
  /// The base kernel is raised to this power.
  int copies = 1;

  void validate() const;
  bool operator==(const KernelSpec&) const = default;
};

using KernelInput = std::variant<QState, DensityMatrix>;

double kernel_eval(const KernelSpec& spec, const KernelInput& a, const KernelInput& b);

struct GramMatrix {
  RMat matrix;
  KernelSpec kernel;
  /// Ascending.
  RVec eigenvalues;
  double min_eigenvalue = 0.0;
};

GramMatrix gram(const KernelSpec& spec, std::span<const KernelInput> inputs);
GramMatrix gram(const KernelSpec& spec, std::span<const QState> states);

/// Wraps a precomputed matrix; throws NumericError unless symmetric within
/// kStructuralTol (relative to its largest entry).
GramMatrix gram_from_matrix(RMat matrix, KernelSpec spec = {});

/// Complex Gram matrix of plain overlaps <x_n|x_m>. Not usable for training.
CMat overlap_gram(std::span<const QState> states);

struct PsdCertificate {
  bool certified = false;
  double min_eigenvalue = 0.0;
  /// min_eigenvalue is compared against -threshold.
  double threshold = 0.0;
};

/// Certified iff the smallest eigenvalue is >= -1e-8 max(1, ||G||_2).
PsdCertificate psd_certify(const GramMatrix& g);
PsdCertificate psd_certify(const RMat& g);

struct SvmOptions {
  double c = 1e6;
  double tol = 1e-6;
  std::size_t max_iter = 100000;
  double support_eps = 1e-8;
  bool record_objective = false;
};

struct SvmModel {
  /// a_m in [0, C].
  RVec multipliers;
  double bias = 0.0;
  std::vector<std::size_t> support;
  KernelSpec kernel;
  std::vector<Label> labels;
  std::size_t iterations = 0;
  bool converged = false;
  /// Dual objective after each iteration (only with record_objective).
  std::vector<double> objective_history;

  /// alpha_m = a_m (-1)^{y_m}.
  RVec signed_multipliers() const;
  /// sum_i a_i - 1/2 sum_ij a_i a_j l_i l_j G_ij.
  double dual_objective(const RMat& gram) const;
};

/// Maximizes the soft-margin dual by pairwise coordinate ascent with
/// maximal-violating-pair selection. Throws DataError for single-class input
/// and NumericError when the Gram matrix is not PSD certified.
SvmModel svm_train(const GramMatrix& g, std::span<const Label> labels,
                   const SvmOptions& options = {});

/// f(x~) = sum_j (-1)^{y_j} a_j kappa(x_j, x~) + b.
double regression(const SvmModel& model, const KernelSpec& spec,
                  std::span<const KernelInput> train, const KernelInput& test);

/// f from a precomputed kernel row k_j = kappa(x_j, x~).
double regression_from_row(const SvmModel& model, const RVec& kernel_row);

/// Pure training set holding the support vectors with weights a_m and the
/// model bias, ready for stc_classify_bias. Requires a squared-overlap kernel.
TrainingSet to_training_set(const SvmModel& model, std::span<const QState> train);

/// sum_{y_m=0} w_m kappa(x_m, x~) - sum_{y_m=1} w_m kappa(x_m, x~) with w the
/// normalized swap-test weights of ts and the kernel raised to ts.copies().
double centroid_decision(const TrainingSet& ts, const QState& test, const KernelSpec& spec);
double centroid_decision(const MixedTrainingSet& ts, const DensityMatrix& test);

}  // namespace qkc
