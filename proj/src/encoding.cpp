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

#include "qkc/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qkc/error.hpp"

namespace qkc {

namespace {

CVec basis_vector(std::size_t dim, std::size_t index) {
  CVec v = CVec::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return v;
}

CMat basis_projector(std::size_t dim, std::size_t index) {
  const auto n = static_cast<Eigen::Index>(dim);
  CMat p = CMat::Zero(n, n);
  p(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(index)) = 1.0;
  return p;
}

CMat hermitian_part(const CMat& m) { return 0.5 * (m + m.adjoint()); }

std::vector<double> normalized(std::vector<double> w) {
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  if (!(total > 0.0)) {
    throw DataError("weights sum to zero");
  }
  for (double& x : w) {
    x /= total;
  }
  return w;
}

void require_copies(int k) {
  if (k < 1) {
    throw DataError("copy count k must be at least 1, got " + std::to_string(k));
  }
}

ClassifierState with_leading_ancilla(const Layout& body, const CMat& rho, bool with_ancilla) {
  if (!with_ancilla) {
    return ClassifierState::mixed(body, DensityMatrix(hermitian_part(rho), Validation::structural));
  }
  std::vector<Register> regs{Register{Role::ancilla, 0, 2}};
  regs.insert(regs.end(), body.begin(), body.end());
  CMat full = tensor(basis_projector(2, 0), rho);
  return ClassifierState::mixed(Layout(std::move(regs)),
                                DensityMatrix(hermitian_part(full), Validation::structural));
}

ClassifierState with_leading_ancilla(const Layout& body, const CVec& vec, bool with_ancilla) {
  if (!with_ancilla) {
    return ClassifierState::pure(body, vec / vec.norm());
  }
  std::vector<Register> regs{Register{Role::ancilla, 0, 2}};
  regs.insert(regs.end(), body.begin(), body.end());
  CVec full = tensor(basis_vector(2, 0), vec);
  full /= full.norm();
  return ClassifierState::pure(Layout(std::move(regs)), std::move(full));
}

/// Registers test0..test{k-1}, train0..train{k-1}.
std::vector<Register> grouped_copies(std::size_t dim, int k) {
  std::vector<Register> regs;
  for (int i = 0; i < k; ++i) regs.push_back({Role::test, static_cast<std::size_t>(i), dim});
  for (int i = 0; i < k; ++i) regs.push_back({Role::train, static_cast<std::size_t>(i), dim});
  return regs;
}

/// Registers test0, train0, test1, train1, ...
std::vector<Register> interleaved_copies(std::size_t dim, int k) {
  std::vector<Register> regs;
  for (int i = 0; i < k; ++i) {
    regs.push_back({Role::test, static_cast<std::size_t>(i), dim});
    regs.push_back({Role::train, static_cast<std::size_t>(i), dim});
  }
  return regs;
}

CMat swap_permutation(std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  CMat s = CMat::Zero(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      s(j * d + i, i * d + j) = 1.0;
    }
  }
  return s;
}

void require_same_dims(std::span<const LabeledDensity> train, const DensityMatrix& test) {
  if (train.empty()) {
    throw DataError("training set is empty");
  }
  for (const auto& t : train) {
    if (t.rho.dim() != test.dim()) {
      throw DimensionError("training and test density matrices differ in dimension");
    }
  }
}

}  // namespace

Label label_from_int(long long value) {
  if (value == 0) return Label::zero;
  if (value == 1) return Label::one;
  throw DataError("label must be 0 or 1, got " + std::to_string(value));
}

Label label_from_sign(int sign) {
  if (sign == 1) return Label::zero;
  if (sign == -1) return Label::one;
  throw DataError("measurement outcome must be +1 or -1");
}

QState amplitude_encode(const CVec& x) {
  if (x.size() == 0) {
    throw DataError("cannot encode an empty vector");
  }
  if (!x.allFinite()) {
    throw DataError("cannot encode a vector with non-finite entries");
  }
  const double norm = x.norm();
  if (norm == 0.0) {
    throw DataError("cannot amplitude-encode the zero vector");
  }
  const std::size_t dim = next_power_of_two(static_cast<std::size_t>(x.size()));
  check_vector_dim(dim);
  CVec v = CVec::Zero(static_cast<Eigen::Index>(dim));
  v.head(x.size()) = x / norm;
  // Renormalize to absorb the rounding in x / norm.
  v /= v.norm();
  return QState(std::move(v));
}

// ---------------------------------------------------------------------------
// TrainingSet

TrainingSet::TrainingSet(std::vector<RawDatum> data, int copies, std::optional<double> bias,
                         Normalization normalization, const FeatureMap& feature_map)
    : copies_(copies), normalization_(normalization) {
  require_copies(copies);
  if (bias && !std::isfinite(*bias)) {
    throw DataError("bias must be finite");
  }
  if (data.empty() && !(bias && *bias != 0.0)) {
    throw DataError("training set is empty");
  }
  double total = 0.0;
  for (std::size_t m = 0; m < data.size(); ++m) {
    const double w = data[m].weight;
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw DataError("weight of datum " + std::to_string(m) + " must be nonnegative");
    }
    total += w;
  }
  if (!data.empty() && !(total > 0.0)) {
    throw DataError("training weights sum to zero");
  }
  weight_scale_ = data.empty() ? 1.0 : total;

  for (std::size_t m = 0; m < data.size(); ++m) {
    QState s = feature_map(data[m].features);
    if (m == 0) {
      data_dim_ = s.dim();
    } else if (s.dim() != data_dim_) {
      throw DimensionError("datum " + std::to_string(m) + " encodes to dimension " +
                           std::to_string(s.dim()) + ", expected " + std::to_string(data_dim_));
    }
    states_.push_back(std::move(s));
    labels_.push_back(data[m].label);
    weights_.push_back(data[m].weight / weight_scale_);
    raw_norms_.push_back(data[m].features.norm());
  }
  if (bias) {
    bias_ = *bias / weight_scale_;
  }
}

double TrainingSet::norm(std::size_t m) const {
  return normalization_ == Normalization::keep_norms ? raw_norms_.at(m) : 1.0;
}

bool TrainingSet::has_both_classes() const {
  return std::find(labels_.begin(), labels_.end(), Label::zero) != labels_.end() &&
         std::find(labels_.begin(), labels_.end(), Label::one) != labels_.end();
}

std::vector<double> TrainingSet::stc_weights() const {
  std::vector<double> w(weights_.size());
  for (std::size_t m = 0; m < w.size(); ++m) {
    w[m] = weights_[m] * std::pow(norm(m), 2 * copies_);
  }
  return w;
}

TrainingSet TrainingSet::with_copies(int k) const {
  require_copies(k);
  TrainingSet t = *this;
  t.copies_ = k;
  return t;
}

TrainingSet TrainingSet::with_bias(std::optional<double> bias) const {
  TrainingSet t = *this;
  if (bias && !std::isfinite(*bias)) {
    throw DataError("bias must be finite");
  }
  t.bias_ = bias;
  return t;
}

// ---------------------------------------------------------------------------
// MixedTrainingSet

void require_distribution(std::span<const double> p, const char* what) {
  double total = 0.0;
  for (double x : p) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw DataError(std::string(what) + " must be nonnegative");
    }
    total += x;
  }
  if (std::abs(total - 1.0) > kDerivedTol) {
    throw DataError(std::string(what) + " must sum to 1 (sum is " + std::to_string(total) + ")");
  }
}

MixedTrainingSet::MixedTrainingSet(std::vector<MixedDatum> data, int copies)
    : data_(std::move(data)), copies_(copies) {
  require_copies(copies);
  if (data_.empty()) {
    throw DataError("training set is empty");
  }
  std::vector<double> w;
  for (const auto& d : data_) {
    if (d.rho.dim() != data_.front().rho.dim()) {
      throw DimensionError("training density matrices differ in dimension");
    }
    w.push_back(d.weight);
  }
  require_distribution(w, "training weights");
  w = normalized(std::move(w));
  for (std::size_t m = 0; m < data_.size(); ++m) {
    data_[m].weight = w[m];
  }
}

MixedTrainingSet MixedTrainingSet::from_pure(const TrainingSet& ts) {
  if (ts.empty()) {
    throw DataError("training set is empty");
  }
  const auto w = normalized(ts.stc_weights());
  std::vector<MixedDatum> data;
  for (std::size_t m = 0; m < ts.size(); ++m) {
    data.push_back({DensityMatrix::pure(ts.state(m)), ts.label(m), w[m]});
  }
  return MixedTrainingSet(std::move(data), ts.copies());
}

bool MixedTrainingSet::has_both_classes() const {
  bool zero = false, one = false;
  for (const auto& d : data_) {
    (d.label == Label::zero ? zero : one) = true;
  }
  return zero && one;
}

MixedTrainingSet MixedTrainingSet::with_copies(int k) const {
  require_copies(k);
  MixedTrainingSet t = *this;
  t.copies_ = k;
  return t;
}

// ---------------------------------------------------------------------------
// Assembly

ClassifierState assemble_pure_stc_input(const TrainingSet& ts, const QState& test,
                                        bool with_index, bool with_ancilla) {
  if (ts.empty()) {
    throw DataError("training set is empty");
  }
  if (test.dim() != ts.data_dim()) {
    throw DimensionError("test state has dimension " + std::to_string(test.dim()) +
                         ", training data " + std::to_string(ts.data_dim()));
  }
  const int k = ts.copies();
  const std::size_t n = ts.data_dim();
  const auto w = normalized(ts.stc_weights());
  std::vector<Register> regs = grouped_copies(n, k);
  regs.push_back({Role::label, 0, 2});

  if (with_index) {
    const std::size_t index_dim = next_power_of_two(ts.size());
    regs.push_back({Role::index, 0, index_dim});
    const Layout body(regs);
    const CVec test_k = tensor_power(test.vec(), k);
    CVec vec = CVec::Zero(static_cast<Eigen::Index>(body.total_dim()));
    for (std::size_t m = 0; m < ts.size(); ++m) {
      const CVec tail = tensor(basis_vector(2, static_cast<std::size_t>(to_int(ts.label(m)))),
                               basis_vector(index_dim, m));
      vec += std::sqrt(w[m]) *
             tensor(test_k, tensor(tensor_power(ts.state(m).vec(), k), tail));
    }
    return with_leading_ancilla(body, vec, with_ancilla);
  }

  const Layout body(regs);
  const CMat test_k = tensor_power(DensityMatrix::pure(test).matrix(), k);
  const auto train_dim = static_cast<Eigen::Index>(std::pow(n, k) * 2);
  CMat train = CMat::Zero(train_dim, train_dim);
  for (std::size_t m = 0; m < ts.size(); ++m) {
    train += w[m] * tensor(tensor_power(DensityMatrix::pure(ts.state(m)).matrix(), k),
                           basis_projector(2, static_cast<std::size_t>(to_int(ts.label(m)))));
  }
  return with_leading_ancilla(body, tensor(test_k, train), with_ancilla);
}

ClassifierState assemble_mixed_stc_input(const DensityMatrix& test, const MixedTrainingSet& train,
                                         bool with_ancilla) {
  const int k = train.copies();
  if (test.dim() != train.data_dim()) {
    throw DimensionError("test and training density matrices differ in dimension");
  }
  std::vector<Register> regs = interleaved_copies(test.dim(), k);
  regs.push_back({Role::label, 0, 2});
  const Layout body(regs);
  const auto d = static_cast<Eigen::Index>(body.total_dim());
  CMat rho = CMat::Zero(d, d);
  for (const auto& datum : train) {
    rho += datum.weight *
           tensor(tensor_power(tensor(test.matrix(), datum.rho.matrix()), k),
                  basis_projector(2, static_cast<std::size_t>(to_int(datum.label))));
  }
  return with_leading_ancilla(body, rho, with_ancilla);
}

std::vector<std::size_t> interleave_copies_order(const Layout& grouped) {
  std::vector<std::size_t> order;
  if (auto a = grouped.find(Role::ancilla)) {
    order.push_back(*a);
  }
  const std::size_t k = grouped.count(Role::test);
  if (k == 0 || grouped.count(Role::train) != k) {
    throw DimensionError("layout needs matching test and train copies");
  }
  for (std::size_t i = 0; i < k; ++i) {
    order.push_back(grouped.require(Role::test, i));
    order.push_back(grouped.require(Role::train, i));
  }
  for (std::size_t r = 0; r < grouped.size(); ++r) {
    const Role role = grouped[r].role;
    if (role != Role::ancilla && role != Role::test && role != Role::train) {
      order.push_back(r);
    }
  }
  return order;
}

ClassifierState assemble_bias_extended(const TrainingSet& ts, const QState& test,
                                       bool with_ancilla) {
  if (!ts.bias() || *ts.bias() == 0.0) {
    throw DataError("bias-extended assembly needs a nonzero bias");
  }
  const std::size_t n = ts.empty() ? test.dim() : ts.data_dim();
  if (test.dim() != n) {
    throw DimensionError("test state has dimension " + std::to_string(test.dim()) +
                         ", training data " + std::to_string(n));
  }
  const int k = ts.copies();
  const double b = *ts.bias();
  const Label y_b = b > 0.0 ? Label::zero : Label::one;
  const auto w = ts.stc_weights();
  const double norm = std::abs(b) + std::accumulate(w.begin(), w.end(), 0.0);

  const std::size_t index_dim = next_power_of_two(ts.size() + 1);
  std::vector<Register> regs = grouped_copies(n, k);
  regs.push_back({Role::label, 0, 2});
  regs.push_back({Role::index, 0, index_dim});
  const Layout body(regs);

  const CVec test_k = tensor_power(test.vec(), k);
  CVec training = std::sqrt(std::abs(b)) *
                  tensor(test_k, tensor(basis_vector(2, static_cast<std::size_t>(to_int(y_b))),
                                        basis_vector(index_dim, 0)));
  for (std::size_t m = 0; m < ts.size(); ++m) {
    training += std::sqrt(w[m]) *
                tensor(tensor_power(ts.state(m).vec(), k),
                       tensor(basis_vector(2, static_cast<std::size_t>(to_int(ts.label(m)))),
                              basis_vector(index_dim, m + 1)));
  }
  training /= std::sqrt(norm);
  return with_leading_ancilla(body, tensor(test_k, training), with_ancilla);
}

ClassifierState assemble_ensemble_weights(const DensityMatrix& test,
                                          std::span<const WeightModel> models,
                                          std::span<const LabeledDensity> train, int copies,
                                          bool with_ancilla) {
  require_copies(copies);
  require_same_dims(train, test);
  if (models.empty()) {
    throw DataError("ensemble needs at least one model");
  }
  std::vector<double> q;
  for (const auto& model : models) {
    q.push_back(model.q);
    if (model.weights.size() != train.size()) {
      throw DataError("model weight vector length differs from the training set size");
    }
    require_distribution(model.weights, "model weights");
  }
  require_distribution(q, "ensemble probabilities");

  std::vector<Register> regs = interleaved_copies(test.dim(), copies);
  regs.push_back({Role::label, 0, 2});
  const Layout body(regs);
  const auto d = static_cast<Eigen::Index>(body.total_dim());
  std::vector<CMat> terms;
  for (const auto& t : train) {
    terms.push_back(tensor(tensor_power(tensor(test.matrix(), t.rho.matrix()), copies),
                           basis_projector(2, static_cast<std::size_t>(to_int(t.label)))));
  }
  CMat rho = CMat::Zero(d, d);
  for (const auto& model : models) {
    for (std::size_t m = 0; m < train.size(); ++m) {
      rho += model.q * model.weights[m] * terms[m];
    }
  }
  return with_leading_ancilla(body, rho, with_ancilla);
}

DensityMatrix symmetric_pair_state(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim * dim);
  CMat p = CMat::Identity(n, n) + swap_permutation(dim);
  p /= static_cast<double>(dim * (dim + 1));
  return DensityMatrix(std::move(p), Validation::structural);
}

ClassifierState assemble_ensemble_exponents(const DensityMatrix& test,
                                            std::span<const ExponentModel> models,
                                            std::span<const LabeledDensity> train,
                                            int max_copies,
                                            const std::optional<DensityMatrix>& padding,
                                            bool with_ancilla) {
  require_copies(max_copies);
  require_same_dims(train, test);
  if (models.empty()) {
    throw DataError("ensemble needs at least one model");
  }
  std::vector<double> q;
  for (const auto& model : models) {
    q.push_back(model.q);
    if (model.copies < 1 || model.copies > max_copies) {
      throw DataError("model exponent " + std::to_string(model.copies) + " outside [1, " +
                      std::to_string(max_copies) + "]");
    }
    if (model.weights.size() != train.size()) {
      throw DataError("model weight vector length differs from the training set size");
    }
    require_distribution(model.weights, "model weights");
  }
  require_distribution(q, "ensemble probabilities");

  const std::size_t n = test.dim();
  const DensityMatrix pad = padding ? *padding : symmetric_pair_state(n);
  if (pad.dim() != n * n) {
    throw DimensionError("padding must act on one (test, train) register pair");
  }
  if (std::abs(trace_product(swap_permutation(n), pad.matrix()) - 1.0) > kDerivedTol) {
    throw DataError("padding state must lie in the symmetric subspace of the pair");
  }

  std::vector<Register> regs = interleaved_copies(n, max_copies);
  regs.push_back({Role::label, 0, 2});
  const Layout body(regs);
  const auto d = static_cast<Eigen::Index>(body.total_dim());
  CMat rho = CMat::Zero(d, d);
  for (const auto& model : models) {
    const int unused = max_copies - model.copies;
    for (std::size_t m = 0; m < train.size(); ++m) {
      CMat block = tensor_power(tensor(test.matrix(), train[m].rho.matrix()), model.copies);
      if (unused > 0) {
        block = tensor(block, tensor_power(pad.matrix(), unused));
      }
      rho += model.q * model.weights[m] *
             tensor(block, basis_projector(2, static_cast<std::size_t>(to_int(train[m].label))));
    }
  }
  return with_leading_ancilla(body, rho, with_ancilla);
}

}  // namespace qkc
