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

#include "qkc/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "qkc/error.hpp"

namespace qkc {

namespace {

ClassifierOutput make_output(double expectation, std::vector<TermContribution> terms,
                             double bias_term = 0.0) {
  ClassifierOutput out;
  out.expectation = expectation;
  out.predicted = decide(expectation);
  out.per_term = std::move(terms);
  out.bias_term = bias_term;
  return out;
}

std::vector<double> normalized_weights(std::vector<double> w) {
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& x : w) x /= total;
  return w;
}

/// <psi_v|O|psi_v> for every value v of the index register, where psi_v is
/// psi restricted to index digit v. Requires O to preserve the index digit.
std::vector<double> expectation_by_index(const Observable& obs, const ClassifierState& state) {
  const Layout& layout = state.layout();
  const std::size_t r = layout.require(Role::index);
  const std::size_t stride = layout.strides()[r];
  const std::size_t dim = layout[r].dim;
  const CVec& psi = state.vector();
  std::vector<double> out(dim, 0.0);
  for (std::size_t v = 0; v < dim; ++v) {
    CVec masked = CVec::Zero(psi.size());
    for (Eigen::Index i = 0; i < psi.size(); ++i) {
      if ((static_cast<std::size_t>(i) / stride) % dim == v) masked(i) = psi(i);
    }
    out[v] = masked.dot(obs.apply(masked)).real();
  }
  return out;
}

TrainingSet single_datum(const TrainingSet& ts, std::size_t m) {
  return TrainingSet({RawDatum{ts.state(m).vec(), ts.label(m), 1.0}}, ts.copies());
}

MixedTrainingSet single_datum(const MixedTrainingSet& ts, std::size_t m) {
  return MixedTrainingSet({MixedDatum{ts[m].rho, ts[m].label, 1.0}}, ts.copies());
}

ClassifierState minimal_state(const TrainingSet& ts, const QState& test) {
  return assemble_pure_stc_input(ts, test, /*with_index=*/false, /*with_ancilla=*/false);
}

/// Vector for the shared-register classifiers: ancilla (x) index (x) data
/// [(x) label], from the two halves that sit behind ancilla |0> and |1>.
CVec interfere(const CVec& upper, const CVec& lower) {
  CVec phi(upper.size() * 2);
  phi.head(upper.size()) = upper * (1.0 / std::numbers::sqrt2);
  phi.tail(lower.size()) = lower * (1.0 / std::numbers::sqrt2);
  // Hadamard on the most significant (ancilla) qubit.
  CVec out(phi.size());
  out.head(upper.size()) = (phi.head(upper.size()) + phi.tail(lower.size())) * (1.0 / std::numbers::sqrt2);
  out.tail(lower.size()) = (phi.head(upper.size()) - phi.tail(lower.size())) * (1.0 / std::numbers::sqrt2);
  return out;
}

CVec basis(std::size_t dim, std::size_t i) {
  CVec v = CVec::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(i)) = 1.0;
  return v;
}

}  // namespace

Prediction decide(double expectation) {
  if (expectation > kTieEps) return Prediction::zero;
  if (expectation < -kTieEps) return Prediction::one;
  return Prediction::tie;
}

std::string to_string(Prediction p) {
  switch (p) {
    case Prediction::zero: return "0";
    case Prediction::one: return "1";
    case Prediction::tie: return "tie";
  }
  return "tie";
}

std::string to_string(StcMode mode) {
  switch (mode) {
    case StcMode::ancilla_circuit: return "circuit";
    case StcMode::minimal: return "minimal";
    case StcMode::analytic: return "analytic";
  }
  return "analytic";
}

double evaluate_state(const ClassifierState& state) {
  if (state.layout().find(Role::ancilla)) {
    const SwapTestCircuit v(state.layout());
    return expectation(build_z_al(state.layout()), v.apply(state));
  }
  return expectation(build_o(state.layout()), state);
}

// ---------------------------------------------------------------------------
// Swap-test classifier

ClassifierOutput stc_classify(const TrainingSet& ts, const QState& test, StcMode mode) {
  if (ts.empty()) {
    throw DataError("training set is empty");
  }
  if (test.dim() != ts.data_dim()) {
    throw DimensionError("test state and training data differ in dimension");
  }
  const auto w = normalized_weights(ts.stc_weights());
  const int k = ts.copies();
  std::vector<TermContribution> terms;

  switch (mode) {
    case StcMode::analytic: {
      double total = 0.0;
      for (std::size_t m = 0; m < ts.size(); ++m) {
        const double c = label_sign(ts.label(m)) * w[m] *
                         std::pow(squared_overlap(test, ts.state(m)), k);
        terms.push_back({m, c});
        total += c;
      }
      return make_output(total, std::move(terms));
    }
    case StcMode::ancilla_circuit: {
      const ClassifierState input = assemble_pure_stc_input(ts, test, /*with_index=*/true);
      const ClassifierState out = SwapTestCircuit(input.layout()).apply(input);
      const Observable z = build_z_al(out.layout());
      const auto by_index = expectation_by_index(z, out);
      for (std::size_t m = 0; m < ts.size(); ++m) terms.push_back({m, by_index[m]});
      return make_output(expectation(z, out), std::move(terms));
    }
    case StcMode::minimal: {
      const ClassifierState state = minimal_state(ts, test);
      const double e = expectation(build_o(state.layout()), state);
      for (std::size_t m = 0; m < ts.size(); ++m) {
        const ClassifierState single = minimal_state(single_datum(ts, m), test);
        terms.push_back({m, w[m] * expectation(build_o(single.layout()), single)});
      }
      return make_output(e, std::move(terms));
    }
  }
  throw DataError("unknown classifier mode");
}

ClassifierOutput stc_classify(const MixedTrainingSet& ts, const DensityMatrix& test,
                              StcMode mode) {
  if (test.dim() != ts.data_dim()) {
    throw DimensionError("test and training density matrices differ in dimension");
  }
  const int k = ts.copies();
  std::vector<TermContribution> terms;
  if (mode == StcMode::analytic) {
    double total = 0.0;
    for (std::size_t m = 0; m < ts.size(); ++m) {
      const double c = label_sign(ts[m].label) * ts[m].weight * std::pow(hs_inner(test, ts[m].rho), k);
      terms.push_back({m, c});
      total += c;
    }
    return make_output(total, std::move(terms));
  }
  const bool with_ancilla = mode == StcMode::ancilla_circuit;
  const double e = evaluate_state(assemble_mixed_stc_input(test, ts, with_ancilla));
  for (std::size_t m = 0; m < ts.size(); ++m) {
    const double single = evaluate_state(assemble_mixed_stc_input(test, single_datum(ts, m), with_ancilla));
    terms.push_back({m, ts[m].weight * single});
  }
  return make_output(e, std::move(terms));
}

ClassifierOutput stc_classify_bias(const TrainingSet& ts, const QState& test, StcMode mode) {
  if (!ts.bias() || *ts.bias() == 0.0) {
    // b = 0 is the plain classifier; the bias slot would carry no amplitude.
    if (ts.empty()) throw DataError("bias-extended classification needs a nonzero bias or training data");
    return stc_classify(ts, test, mode);
  }
  if (!ts.empty() && test.dim() != ts.data_dim()) {
    throw DimensionError("test state and training data differ in dimension");
  }
  const double b = *ts.bias();
  const auto w = ts.stc_weights();
  const double norm = std::abs(b) + std::accumulate(w.begin(), w.end(), 0.0);
  const int k = ts.copies();
  std::vector<TermContribution> terms;

  if (mode == StcMode::analytic) {
    double total = b / norm;
    for (std::size_t m = 0; m < ts.size(); ++m) {
      const double c = label_sign(ts.label(m)) * w[m] *
                       std::pow(squared_overlap(test, ts.state(m)), k) / norm;
      terms.push_back({m, c});
      total += c;
    }
    return make_output(total, std::move(terms), b / norm);
  }

  const bool with_ancilla = mode == StcMode::ancilla_circuit;
  ClassifierState state = assemble_bias_extended(ts, test, with_ancilla);
  std::optional<Observable> obs;
  if (with_ancilla) {
    state = SwapTestCircuit(state.layout()).apply(state);
    obs = build_z_al(state.layout());
  } else {
    obs = build_o(state.layout());
  }
  const auto by_index = expectation_by_index(*obs, state);
  for (std::size_t m = 0; m < ts.size(); ++m) terms.push_back({m, by_index[m + 1]});
  return make_output(expectation(*obs, state), std::move(terms), by_index[0]);
}

// ---------------------------------------------------------------------------
// Hadamard and qSVM classifiers

ClassifierOutput hadamard_classify(const TrainingSet& ts, const CVec& test_features,
                                   bool with_bias) {
  if (ts.empty()) {
    throw DataError("training set is empty");
  }
  const QState test = amplitude_encode(test_features);
  if (test.dim() != ts.data_dim()) {
    throw DimensionError("test datum and training data differ in dimension");
  }
  double b = 0.0;
  if (with_bias) {
    if (!ts.bias() || *ts.bias() == 0.0) {
      throw DataError("Hadamard classifier with bias needs a nonzero bias");
    }
    b = *ts.bias();
  }
  const double test_norm =
      ts.normalization() == Normalization::keep_norms ? test_features.norm() : 1.0;
  const std::size_t offset = with_bias ? 1 : 0;
  const std::size_t index_dim = next_power_of_two(ts.size() + offset);
  const std::size_t n = ts.data_dim();

  // Registers after the ancilla: index, data, label.
  const auto slot = [&](std::size_t index, const CVec& data, Label y) {
    return tensor(basis(index_dim, index), tensor(data, basis(2, static_cast<std::size_t>(to_int(y)))));
  };
  const auto dim = static_cast<Eigen::Index>(index_dim * n * 2);
  CVec u = CVec::Zero(dim), x = CVec::Zero(dim);
  double norm_u = 0.0, norm_x = 0.0;
  if (with_bias) {
    const Label y_b = b > 0.0 ? Label::zero : Label::one;
    u += std::sqrt(std::abs(b)) * slot(0, basis(n, 0), y_b);
    x += std::sqrt(std::abs(b)) * slot(0, basis(n, 0), y_b);
    norm_u += std::abs(b);
    norm_x += std::abs(b);
  }
  for (std::size_t m = 0; m < ts.size(); ++m) {
    const double a = ts.weight(m);
    u += std::sqrt(a) * ts.norm(m) * slot(m + offset, ts.state(m).vec(), ts.label(m));
    x += std::sqrt(a) * test_norm * slot(m + offset, test.vec(), ts.label(m));
    norm_u += a * ts.norm(m) * ts.norm(m);
    norm_x += a * test_norm * test_norm;
  }
  if (!(norm_u > 0.0) || !(norm_x > 0.0)) {
    throw DataError("Hadamard classifier states have zero norm");
  }
  u /= std::sqrt(norm_u);
  x /= std::sqrt(norm_x);

  const Layout layout({{Role::ancilla, 0, 2}, {Role::index, 0, index_dim}, {Role::data, 0, n},
                       {Role::label, 0, 2}});
  const ClassifierState out = ClassifierState::pure(layout, interfere(u, x));
  const double circuit = expectation(build_z_al(layout), out);

  const double scale = 1.0 / std::sqrt(norm_u * norm_x);
  std::vector<TermContribution> terms;
  double analytic = b * scale;
  for (std::size_t m = 0; m < ts.size(); ++m) {
    const double c = scale * label_sign(ts.label(m)) * ts.weight(m) * test_norm * ts.norm(m) *
                     ts.state(m).vec().dot(test.vec()).real();
    terms.push_back({m, c});
    analytic += c;
  }
  if (std::abs(circuit - analytic) > kDerivedTol) {
    throw NumericError("Hadamard classifier circuit and closed form disagree");
  }
  return make_output(circuit, std::move(terms), b * scale);
}

ClassifierOutput qsvm_oracle_classify(std::span<const double> alphas, double bias,
                                      const TrainingSet& ts, const CVec& test_features) {
  if (ts.empty()) {
    throw DataError("training set is empty");
  }
  if (alphas.size() != ts.size()) {
    throw DataError("need one multiplier per training datum");
  }
  if (!std::isfinite(bias) ||
      (bias == 0.0 && std::all_of(alphas.begin(), alphas.end(), [](double a) { return a == 0.0; }))) {
    throw DataError("degenerate qSVM oracle: all multipliers and the bias are zero");
  }
  const QState test = amplitude_encode(test_features);
  if (test.dim() != ts.data_dim()) {
    throw DimensionError("test datum and training data differ in dimension");
  }
  const double test_norm =
      ts.normalization() == Normalization::keep_norms ? test_features.norm() : 1.0;
  const std::size_t index_dim = next_power_of_two(ts.size() + 1);
  const std::size_t n = ts.data_dim();

  CVec u = bias * tensor(basis(index_dim, 0), basis(n, 0));
  CVec x = tensor(basis(index_dim, 0), basis(n, 0));
  double norm_u = bias * bias;
  double norm_x = 1.0;
  for (std::size_t m = 0; m < ts.size(); ++m) {
    u += alphas[m] * ts.norm(m) * tensor(basis(index_dim, m + 1), ts.state(m).vec());
    x += test_norm * tensor(basis(index_dim, m + 1), test.vec());
    norm_u += alphas[m] * alphas[m] * ts.norm(m) * ts.norm(m);
    norm_x += test_norm * test_norm;
  }
  u /= std::sqrt(norm_u);
  x /= std::sqrt(norm_x);

  const Layout layout({{Role::ancilla, 0, 2}, {Role::index, 0, index_dim}, {Role::data, 0, n}});
  const ClassifierState out = ClassifierState::pure(layout, interfere(u, x));
  const double circuit = expectation(build_z_ancilla(layout), out);

  const double scale = 1.0 / std::sqrt(norm_u * norm_x);
  std::vector<TermContribution> terms;
  double analytic = bias * scale;
  for (std::size_t m = 0; m < ts.size(); ++m) {
    const double c = scale * alphas[m] * ts.norm(m) * test_norm *
                     ts.state(m).vec().dot(test.vec()).real();
    terms.push_back({m, c});
    analytic += c;
  }
  if (std::abs(circuit - analytic) > kDerivedTol) {
    throw NumericError("qSVM oracle circuit and closed form disagree");
  }
  return make_output(circuit, std::move(terms), bias * scale);
}

// ---------------------------------------------------------------------------
// Projective measurement

Label single_shot_classify(const TrainingSet& ts, const QState& test, std::uint64_t seed) {
  const ClassifierState state = minimal_state(ts, test);
  ShotRng rng(seed);
  return label_from_sign(draw_outcome(outcome_probabilities(build_o(state.layout()), state), rng));
}

Label single_shot_classify(const MixedTrainingSet& ts, const DensityMatrix& test,
                           std::uint64_t seed) {
  ShotRng rng(seed);
  return label_from_sign(draw_outcome(stc_outcome_probabilities(ts, test), rng));
}

OutcomeProbabilities stc_outcome_probabilities(const MixedTrainingSet& ts,
                                               const DensityMatrix& test) {
  const ClassifierState state = assemble_mixed_stc_input(test, ts, /*with_ancilla=*/false);
  return outcome_probabilities(build_o(state.layout()), state);
}

OutcomeProbabilities stc_outcome_probabilities_closed_form(const MixedTrainingSet& ts,
                                                           const DensityMatrix& test) {
  if (test.dim() != ts.data_dim()) {
    throw DimensionError("test and training density matrices differ in dimension");
  }
  double f = 0.0;
  for (const auto& d : ts) {
    f += label_sign(d.label) * d.weight * std::pow(hs_inner(test, d.rho), ts.copies());
  }
  return {0.5 * (1.0 + f), 0.5 * (1.0 - f)};
}

void TestMixture::validate() const {
  const double p[] = {p0, p1};
  require_distribution(p, "test class priors");
  if (rho0.dim() != rho1.dim()) {
    throw DimensionError("class-conditional test states differ in dimension");
  }
}

DensityMatrix TestMixture::mixture() const {
  validate();
  return DensityMatrix(p0 * rho0.matrix() + p1 * rho1.matrix(), Validation::structural);
}

double misclassification_probability_projector(const MixedTrainingSet& ts,
                                               const TestMixture& mix) {
  mix.validate();
  double err = 0.0;
  if (mix.p0 > 0.0) err += mix.p0 * stc_outcome_probabilities(ts, mix.rho0).minus;
  if (mix.p1 > 0.0) err += mix.p1 * stc_outcome_probabilities(ts, mix.rho1).plus;
  return err;
}

double misclassification_probability_closed_form(const MixedTrainingSet& ts,
                                                 const TestMixture& mix) {
  mix.validate();
  if (ts.copies() != 1) {
    throw DataError("the closed-form misclassification probability is defined for k = 1");
  }
  if (mix.rho0.dim() != ts.data_dim()) {
    throw DimensionError("test and training density matrices differ in dimension");
  }
  // <p0 rho0 - p1 rho1, rho_m> enters with sign +1 for y_m = 1 and -1 for y_m = 0.
  const CMat helstrom = mix.p0 * mix.rho0.matrix() - mix.p1 * mix.rho1.matrix();
  double sum = 0.0;
  for (const auto& d : ts) {
    sum -= label_sign(d.label) * d.weight * trace_product(helstrom, d.rho.matrix());
  }
  return 0.5 * (1.0 + sum);
}

double misclassification_probability(const MixedTrainingSet& ts, const TestMixture& mix) {
  const double p = misclassification_probability_projector(ts, mix);
  if (ts.copies() == 1 &&
      std::abs(p - misclassification_probability_closed_form(ts, mix)) > kDerivedTol) {
    throw NumericError("misclassification probability: projector and closed form disagree");
  }
  if (p < -kDerivedTol || p > 1.0 + kDerivedTol) {
    throw NumericError("misclassification probability outside [0, 1]");
  }
  return std::clamp(p, 0.0, 1.0);
}

// ---------------------------------------------------------------------------
// Helstrom operator

HelstromSpec helstrom_spec(const MixedTrainingSet& ts) {
  if (!ts.has_both_classes()) {
    throw DataError("the Helstrom operator needs training data from both classes");
  }
  const int k = ts.copies();
  const auto d = static_cast<Eigen::Index>(std::pow(ts.data_dim(), k));
  CMat r0 = CMat::Zero(d, d), r1 = CMat::Zero(d, d);
  double p0 = 0.0, p1 = 0.0;
  for (const auto& datum : ts) {
    const CMat block = tensor_power(datum.rho.matrix(), k);
    if (datum.label == Label::zero) {
      p0 += datum.weight;
      r0 += datum.weight * block;
    } else {
      p1 += datum.weight;
      r1 += datum.weight * block;
    }
  }
  if (!(p0 > 0.0) || !(p1 > 0.0)) {
    throw DataError("the Helstrom operator needs positive weight on both classes");
  }
  return {p0, p1, DensityMatrix(r0 / p0, Validation::structural),
          DensityMatrix(r1 / p1, Validation::structural)};
}

HelstromSpec helstrom_spec(const TrainingSet& ts) {
  return helstrom_spec(MixedTrainingSet::from_pure(ts));
}

CMat helstrom_operator(const MixedTrainingSet& ts) {
  const HelstromSpec h = helstrom_spec(ts);
  return h.p0 * h.rho0.matrix() - h.p1 * h.rho1.matrix();
}

CMat helstrom_operator(const TrainingSet& ts) {
  return helstrom_operator(MixedTrainingSet::from_pure(ts));
}

// ---------------------------------------------------------------------------
// Ensembles

ClassifierOutput ensemble_weights_classify(const DensityMatrix& test,
                                           std::span<const WeightModel> models,
                                           std::span<const LabeledDensity> train, int copies,
                                           StcMode mode) {
  // Validates the whole ensemble even in analytic mode.
  const ClassifierState state =
      assemble_ensemble_weights(test, models, train, copies, mode != StcMode::minimal);
  std::vector<TermContribution> terms;
  if (mode == StcMode::analytic) {
    double total = 0.0;
    for (std::size_t m = 0; m < train.size(); ++m) {
      const double kappa = std::pow(hs_inner(test, train[m].rho), copies);
      double c = 0.0;
      for (const auto& model : models) c += model.q * model.weights[m];
      c *= label_sign(train[m].label) * kappa;
      terms.push_back({m, c});
      total += c;
    }
    return make_output(total, std::move(terms));
  }
  const bool with_ancilla = mode == StcMode::ancilla_circuit;
  for (std::size_t m = 0; m < train.size(); ++m) {
    double weight = 0.0;
    for (const auto& model : models) weight += model.q * model.weights[m];
    const double single = evaluate_state(
        assemble_mixed_stc_input(test, MixedTrainingSet({{train[m].rho, train[m].label, 1.0}}, copies),
                                 with_ancilla));
    terms.push_back({m, weight * single});
  }
  return make_output(evaluate_state(state), std::move(terms));
}

ClassifierOutput ensemble_exponents_classify(const DensityMatrix& test,
                                             std::span<const ExponentModel> models,
                                             std::span<const LabeledDensity> train,
                                             int max_copies, StcMode mode) {
  const ClassifierState state = assemble_ensemble_exponents(
      test, models, train, max_copies, std::nullopt, mode != StcMode::minimal);
  std::vector<TermContribution> terms;
  if (mode == StcMode::analytic) {
    double total = 0.0;
    for (std::size_t m = 0; m < train.size(); ++m) {
      const double kappa = hs_inner(test, train[m].rho);
      double c = 0.0;
      for (const auto& model : models) c += model.q * model.weights[m] * std::pow(kappa, model.copies);
      c *= label_sign(train[m].label);
      terms.push_back({m, c});
      total += c;
    }
    return make_output(total, std::move(terms));
  }
  const bool with_ancilla = mode == StcMode::ancilla_circuit;
  for (std::size_t m = 0; m < train.size(); ++m) {
    // Restrict every member to datum m, keeping its share q_s a_{m,s}.
    double share = 0.0;
    for (const auto& model : models) share += model.q * model.weights[m];
    if (share == 0.0) {
      terms.push_back({m, 0.0});
      continue;
    }
    std::vector<ExponentModel> restricted;
    for (const auto& model : models) {
      restricted.push_back({model.q * model.weights[m] / share, {1.0}, model.copies});
    }
    const LabeledDensity only[] = {train[m]};
    const double single = evaluate_state(assemble_ensemble_exponents(
        test, restricted, only, max_copies, std::nullopt, with_ancilla));
    terms.push_back({m, share * single});
  }
  return make_output(evaluate_state(state), std::move(terms));
}

}  // namespace qkc
