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
 * Swap-test (STC), Hadamard (HC) and qSVM-oracle classifiers, single-shot
 * classification, misclassification probability and the Helstrom operator.
 *
 * Every classifier reports an expectation value whose sign is the decision:
 * positive means class 0, negative class 1, and |value| <= kTieEps a tie.
 */

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qkc/circuit.hpp"
#include "qkc/encoding.hpp"
#include "qkc/qmath.hpp"

namespace qkc {

inline constexpr double kTieEps = 1e-12;

enum class Prediction { zero, one, tie };

Prediction decide(double expectation);
std::string to_string(Prediction p);

struct TermContribution {
  std::size_t m;
  double contribution;
};

struct ClassifierOutput {
  double expectation = 0.0;
  Prediction predicted = Prediction::tie;
  /// Per training datum contribution (-1)^{y_m} a_m kappa_m^k, scaled the
  /// same way as the expectation.
  std::vector<TermContribution> per_term;
  /// Contribution of the bias, zero for classifiers without one.
  double bias_term = 0.0;
};

enum class StcMode {
  /// Simulate V on the ancilla form and measure Z_al.
  ancilla_circuit,
  /// Measure the effective observable on the ancilla-free, index-free form.
  minimal,
  /// sum_m (-1)^{y_m} a_m kappa_m^k evaluated directly.
  analytic,
};

std::string to_string(StcMode mode);

/// Swap-test classifier on pure data. The bias of `ts`, if any, is ignored.
ClassifierOutput stc_classify(const TrainingSet& ts, const QState& test, StcMode mode);

/// Swap-test classifier on density-matrix data; kappa is Tr(rho~ rho_m).
ClassifierOutput stc_classify(const MixedTrainingSet& ts, const DensityMatrix& test,
                              StcMode mode);

/// Bias-extended swap-test classifier:
/// (b + sum_m (-1)^{y_m} a_m kappa_m^k) / (|b| + sum_m a_m).
/// Without a bias (or with b = 0) this is stc_classify.
ClassifierOutput stc_classify_bias(const TrainingSet& ts, const QState& test, StcMode mode);

/// Hadamard classifier. `test_features` are raw (their norm matters in
/// keep_norms mode). The circuit and the closed form are both evaluated and
/// must agree within kDerivedTol. Pure data only.
ClassifierOutput hadamard_classify(const TrainingSet& ts, const CVec& test_features,
                                   bool with_bias);

/// qSVM oracle classifier with signed multipliers alpha_m = a_m l_m and bias
/// b. Returns <sigma_z> of the ancilla after the Hadamard, Re<u~|x~>.
ClassifierOutput qsvm_oracle_classify(std::span<const double> alphas, double bias,
                                      const TrainingSet& ts, const CVec& test_features);

/// One projective measurement of the effective observable; returns
/// (1 - lambda)/2.
Label single_shot_classify(const TrainingSet& ts, const QState& test, std::uint64_t seed);
Label single_shot_classify(const MixedTrainingSet& ts, const DensityMatrix& test,
                           std::uint64_t seed);

/// Pr[lambda] through the spectral projectors of the effective observable.
OutcomeProbabilities stc_outcome_probabilities(const MixedTrainingSet& ts,
                                               const DensityMatrix& test);

/// Pr[lambda] = (1 + lambda sum_m (-1)^{y_m} a_m <rho~, rho_m>^k) / 2.
OutcomeProbabilities stc_outcome_probabilities_closed_form(const MixedTrainingSet& ts,
                                                           const DensityMatrix& test);

/// Test datum whose true class is i with probability p_i.
struct TestMixture {
  double p0;
  double p1;
  DensityMatrix rho0;
  DensityMatrix rho1;

  void validate() const;
  DensityMatrix mixture() const;
};

/// p0 Pr[-1 | rho0] + p1 Pr[+1 | rho1] via spectral projectors. Any k.
double misclassification_probability_projector(const MixedTrainingSet& ts,
                                               const TestMixture& mix);

/// Closed form in Hilbert-Schmidt inner products; k = 1 only.
double misclassification_probability_closed_form(const MixedTrainingSet& ts,
                                                 const TestMixture& mix);

/// Projector route, cross-checked against the closed form when k = 1.
double misclassification_probability(const MixedTrainingSet& ts, const TestMixture& mix);

struct HelstromSpec {
  double p0;
  double p1;
  DensityMatrix rho0;
  DensityMatrix rho1;
};

/// Class priors and class-conditional k-copy training states.
HelstromSpec helstrom_spec(const TrainingSet& ts);
HelstromSpec helstrom_spec(const MixedTrainingSet& ts);

/// p0 rho0 - p1 rho1.
CMat helstrom_operator(const TrainingSet& ts);
CMat helstrom_operator(const MixedTrainingSet& ts);

/// Classifier expectation of an assembled state: V then Z_al when the layout
/// has an ancilla, the effective observable otherwise.
double evaluate_state(const ClassifierState& state);

/// Ensemble over weight vectors: sum_s q_s f(rho~, a_s).
ClassifierOutput ensemble_weights_classify(const DensityMatrix& test,
                                           std::span<const WeightModel> models,
                                           std::span<const LabeledDensity> train, int copies,
                                           StcMode mode);

/// Ensemble over weights and exponents: sum_s q_s f(rho~, a_s, k_s).
ClassifierOutput ensemble_exponents_classify(const DensityMatrix& test,
                                             std::span<const ExponentModel> models,
                                             std::span<const LabeledDensity> train,
                                             int max_copies, StcMode mode);

}  // namespace qkc
