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
 * Classical data to quantum registers: amplitude encoding, training sets,
 * and assembly of the joint input states consumed by the classifiers.
 */

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "qkc/qmath.hpp"
#include "qkc/state.hpp"

namespace qkc {

/// Class label y in {0, 1}.
enum class Label : int { zero = 0, one = 1 };

/// Throws DataError unless value is 0 or 1.
Label label_from_int(long long value);
inline int to_int(Label y) { return static_cast<int>(y); }
/// (-1)^y: +1 for class 0, -1 for class 1. The only place this mapping lives.
inline int label_sign(Label y) { return y == Label::zero ? 1 : -1; }

/// (1 - x)/2 for x in {+1, -1}; inverse of label_sign.
Label label_from_sign(int sign);

/// |x> = x / ||x||, zero-padded to the next power of two.
QState amplitude_encode(const CVec& x);

using FeatureMap = std::function<QState(const CVec&)>;

struct RawDatum {
  CVec features;
  Label label = Label::zero;
  double weight = 1.0;
};

enum class Normalization {
  /// Every datum is a unit vector; weights are used as given.
  unit_vectors,
  /// The raw norms ||x_m|| enter the classifiers explicitly.
  keep_norms,
};

/// Labeled, weighted, encoded training data plus the copy count k and an
/// optional bias.
///
/// Weights are renormalized to sum to one at construction. The bias is divided
/// by the same factor, so b / (|b| + sum a) and the sign of b + sum l a kappa
/// are unchanged.
class TrainingSet {
 public:
  TrainingSet(std::vector<RawDatum> data, int copies = 1,
              std::optional<double> bias = std::nullopt,
              Normalization normalization = Normalization::unit_vectors,
              const FeatureMap& feature_map = amplitude_encode);

  std::size_t size() const { return states_.size(); }
  bool empty() const { return states_.empty(); }
  int copies() const { return copies_; }
  Normalization normalization() const { return normalization_; }
  /// Bias in the canonical (renormalized) scale.
  std::optional<double> bias() const { return bias_; }
  /// Sum of the weights as supplied, before renormalization.
  double weight_scale() const { return weight_scale_; }

  const QState& state(std::size_t m) const { return states_.at(m); }
  const std::vector<QState>& states() const { return states_; }
  Label label(std::size_t m) const { return labels_.at(m); }
  const std::vector<Label>& labels() const { return labels_; }
  /// Canonical weight a_m (sums to one over the set).
  double weight(std::size_t m) const { return weights_.at(m); }
  const std::vector<double>& weights() const { return weights_; }
  /// ||x_m|| of the raw features; 1 in unit_vectors mode.
  double norm(std::size_t m) const;
  /// Dimension of each encoded datum (a power of two).
  std::size_t data_dim() const { return data_dim_; }
  bool has_both_classes() const;

  /// Weights entering the swap-test state, a_m ||x_m||^(2k), not normalized.
  std::vector<double> stc_weights() const;

  TrainingSet with_copies(int k) const;
  TrainingSet with_bias(std::optional<double> bias) const;

 private:
  TrainingSet() = default;

  std::vector<QState> states_;
  std::vector<Label> labels_;
  std::vector<double> weights_;
  std::vector<double> raw_norms_;
  int copies_ = 1;
  std::optional<double> bias_;
  double weight_scale_ = 1.0;
  Normalization normalization_ = Normalization::unit_vectors;
  std::size_t data_dim_ = 0;
};

struct LabeledDensity {
  DensityMatrix rho;
  Label label;
};

struct MixedDatum {
  DensityMatrix rho;
  Label label;
  double weight;
};

/// Training data given as density matrices. Weights must already form a
/// probability distribution.
class MixedTrainingSet {
 public:
  MixedTrainingSet(std::vector<MixedDatum> data, int copies = 1);

  /// Pure training set lifted to density matrices (weights use stc_weights()).
  static MixedTrainingSet from_pure(const TrainingSet& ts);

  std::size_t size() const { return data_.size(); }
  int copies() const { return copies_; }
  const MixedDatum& operator[](std::size_t m) const { return data_.at(m); }
  auto begin() const { return data_.begin(); }
  auto end() const { return data_.end(); }
  std::size_t data_dim() const { return data_.front().rho.dim(); }
  bool has_both_classes() const;

  MixedTrainingSet with_copies(int k) const;

 private:
  std::vector<MixedDatum> data_;
  int copies_;
};

/// Throws DataError unless the values are nonnegative and sum to one within
/// kDerivedTol.
void require_distribution(std::span<const double> p, const char* what);

/// Joint input of the swap-test classifier for pure data.
///
/// with_index: the pure state sum_m sqrt(w_m) |0>|x~>^k |x_m>^k |y_m> |m>
///   with registers (ancilla, test0..test{k-1}, train0..train{k-1}, label,
///   index). The index register is one qudit of dimension M rounded up to a
///   power of two.
/// without index: the mixture |0><0| (x) |x~><x~|^k (x) sum_m w_m
///   |x_m><x_m|^k (x) |y_m><y_m| in the same register order.
///
/// w_m = stc_weights() renormalized. The bias of `ts` is ignored.
ClassifierState assemble_pure_stc_input(const TrainingSet& ts, const QState& test,
                                        bool with_index, bool with_ancilla = true);

/// |0><0| (x) sum_m a_m (rho~ (x) rho_m)^(x)k (x) |y_m><y_m| with the test and
/// train registers of each copy adjacent: (ancilla, test0, train0, test1,
/// train1, ..., label).
ClassifierState assemble_mixed_stc_input(const DensityMatrix& test,
                                         const MixedTrainingSet& train,
                                         bool with_ancilla = true);

/// Register order that maps the output of assemble_pure_stc_input(...,
/// with_index=false, with_ancilla) onto the interleaved order of
/// assemble_mixed_stc_input. Pass to permute_registers().
std::vector<std::size_t> interleave_copies_order(const Layout& grouped);

/// Bias-extended pure state: the training part is
/// N^{-1/2} (sqrt|b| |x~>^k |y_b>|0> + sum_m sqrt(w_m) |x_m>^k |y_m>|m+1>)
/// with y_b = (1 - sgn b)/2 and N = |b| + sum_m w_m. Requires a nonzero bias.
/// Registers: (ancilla?, test..., train..., label, index).
ClassifierState assemble_bias_extended(const TrainingSet& ts, const QState& test,
                                       bool with_ancilla = true);

struct WeightModel {
  double q;
  std::vector<double> weights;
};

/// |0><0| (x) sum_s q_s sum_m a_{m,s} (rho~ (x) rho_m)^(x)k (x) |y_m><y_m|.
ClassifierState assemble_ensemble_weights(const DensityMatrix& test,
                                          std::span<const WeightModel> models,
                                          std::span<const LabeledDensity> train, int copies,
                                          bool with_ancilla = true);

struct ExponentModel {
  double q;
  std::vector<double> weights;
  int copies;
};

/// Ensemble over copy exponents. Every member uses `max_copies` test/train
/// register pairs; member s fills the first k_s pairs with (rho~ (x) rho_m)
/// and the remaining ones with `padding`, a state on one (test, train) pair
/// supported on its symmetric subspace (so its swap expectation is 1).
/// The default padding is the normalized symmetric projector (I + S)/(d(d+1)).
ClassifierState assemble_ensemble_exponents(const DensityMatrix& test,
                                            std::span<const ExponentModel> models,
                                            std::span<const LabeledDensity> train,
                                            int max_copies,
                                            const std::optional<DensityMatrix>& padding = std::nullopt,
                                            bool with_ancilla = true);

/// (I + S) / (d (d + 1)) on two registers of dimension d.
DensityMatrix symmetric_pair_state(std::size_t dim);

}  // namespace qkc
