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

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "qkc/classifier.hpp"
#include "qkc/error.hpp"
#include "test_support.hpp"

namespace qkc {
namespace {

using testing::Rng;
namespace ref = testing::ref;

CVec vec2(Complex a, Complex b) {
  CVec v(2);
  v << a, b;
  return v;
}

/// Dense reference for the swap-test classifier on density inputs: builds
/// |0><0| (x) sum_m a_m rho~^k (x) rho_m^k (x) |y_m><y_m| in grouped order,
/// conjugates with the reference unitary and reads off <Z_a Z_l>.
double reference_stc(const CMat& test, const std::vector<CMat>& train,
                     const std::vector<int>& labels, const std::vector<double>& a, int k) {
  const auto d = test.rows();
  CMat test_k = test, body;
  for (int i = 1; i < k; ++i) test_k = ref::kron(test_k, test);
  const auto big = test_k.rows();
  body = CMat::Zero(big * big * 2, big * big * 2);
  for (std::size_t m = 0; m < train.size(); ++m) {
    CMat tk = train[m];
    for (int i = 1; i < k; ++i) tk = ref::kron(tk, train[m]);
    body += a[m] * ref::kron(ref::kron(test_k, tk), ref::projector(ref::ket(2, labels[m])));
  }
  const CMat rho = ref::kron(ref::projector(ref::ket(2, 0)), body);
  const CMat v = ref::swap_test_unitary(static_cast<std::size_t>(d), k, 2);
  const auto mid = big * big;
  const CMat z = ref::kron_all({ref::pauli_z(), CMat::Identity(mid, mid), ref::pauli_z()});
  return (z * v * rho * v.adjoint()).trace().real();
}

TEST(Decide, TieBand) {
  EXPECT_EQ(decide(0.5), Prediction::zero);
  EXPECT_EQ(decide(-0.5), Prediction::one);
  EXPECT_EQ(decide(1e-13), Prediction::tie);
  EXPECT_EQ(decide(-1e-13), Prediction::tie);
  EXPECT_EQ(to_string(Prediction::tie), "tie");
}

TEST(StcPure, PerfectMatch) {
  Rng rng(31);
  const QState x = testing::random_state(4, rng);
  const TrainingSet ts({{x.vec(), Label::zero, 1.0}});
  for (auto mode : {StcMode::analytic, StcMode::ancilla_circuit, StcMode::minimal}) {
    const auto out = stc_classify(ts, x, mode);
    EXPECT_NEAR(out.expectation, 1.0, 1e-12);
    EXPECT_EQ(out.predicted, Prediction::zero);
  }
}

TEST(StcPure, AntisymmetricTie) {
  const TrainingSet ts({{vec2(1, 0), Label::zero, 1.0}, {vec2(1, 0), Label::one, 1.0}});
  for (auto mode : {StcMode::analytic, StcMode::ancilla_circuit, StcMode::minimal}) {
    const auto out = stc_classify(ts, QState::basis(2, 0), mode);
    EXPECT_NEAR(out.expectation, 0.0, 1e-15);
    EXPECT_EQ(out.predicted, Prediction::tie);
  }
}

TEST(StcPure, HandComputedTwoCopies) {
  const double r = 1.0 / std::sqrt(2.0);
  const TrainingSet ts({{vec2(r, r), Label::zero, 0.7}, {vec2(0, 1), Label::one, 0.3}}, 2);
  for (auto mode : {StcMode::analytic, StcMode::ancilla_circuit, StcMode::minimal}) {
    const auto out = stc_classify(ts, QState::basis(2, 0), mode);
    EXPECT_NEAR(out.expectation, 0.175, 1e-12) << to_string(mode);
    EXPECT_EQ(out.predicted, Prediction::zero);
    ASSERT_EQ(out.per_term.size(), 2u);
    EXPECT_NEAR(out.per_term[0].contribution, 0.175, 1e-12);
    EXPECT_NEAR(out.per_term[1].contribution, 0.0, 1e-12);
  }
}

TEST(StcPure, ModesAgreeWithDenseReference) {
  Rng rng(32);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t d = trial % 2 ? 2 : 4;
    const int k = 1 + trial % 2;
    const std::size_t m_count = 1 + trial % 3;
    const QState test = testing::random_state(d, rng);
    const auto w = testing::random_distribution(m_count, rng);
    std::vector<RawDatum> data;
    std::vector<CMat> train;
    std::vector<int> labels;
    for (std::size_t m = 0; m < m_count; ++m) {
      const QState x = testing::random_state(d, rng);
      const int y = static_cast<int>(rng() % 2);
      data.push_back({x.vec(), label_from_int(y), w[m]});
      train.push_back(ref::projector(x.vec()));
      labels.push_back(y);
    }
    const TrainingSet ts(data, k);
    const double want = reference_stc(ref::projector(test.vec()), train, labels, w, k);
    for (auto mode : {StcMode::analytic, StcMode::ancilla_circuit, StcMode::minimal}) {
      const auto out = stc_classify(ts, test, mode);
      EXPECT_NEAR(out.expectation, want, 1e-10) << to_string(mode);
      double sum = 0.0;
      for (const auto& t : out.per_term) sum += t.contribution;
      EXPECT_NEAR(sum, out.expectation, 1e-12);
    }
  }
}

TEST(StcMixed, ModesAgreeWithDenseReference) {
  Rng rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 2;
    const int k = 1 + trial % 2;
    const std::size_t m_count = 1 + trial % 4;
    const DensityMatrix test = testing::random_density(d, rng);
    const auto w = testing::random_distribution(m_count, rng);
    std::vector<MixedDatum> data;
    std::vector<CMat> train;
    std::vector<int> labels;
    for (std::size_t m = 0; m < m_count; ++m) {
      const DensityMatrix r = testing::random_density(d, rng);
      const int y = static_cast<int>(rng() % 2);
      data.push_back({r, label_from_int(y), w[m]});
      train.push_back(r.matrix());
      labels.push_back(y);
    }
    const MixedTrainingSet ts(data, k);
    const double want = reference_stc(test.matrix(), train, labels, w, k);
    for (auto mode : {StcMode::analytic, StcMode::ancilla_circuit, StcMode::minimal}) {
      const auto out = stc_classify(ts, test, mode);
      EXPECT_NEAR(out.expectation, want, 1e-10) << to_string(mode);
      double sum = 0.0;
      for (const auto& t : out.per_term) sum += t.contribution;
      EXPECT_NEAR(sum, out.expectation, 1e-12);
    }
  }
}

TEST(StcPure, GlobalPhaseInvariance) {
  Rng rng(34);
  const QState test = testing::random_state(4, rng);
  const QState x0 = testing::random_state(4, rng), x1 = testing::random_state(4, rng);
  const TrainingSet ts({{x0.vec(), Label::zero, 0.4}, {x1.vec(), Label::one, 0.6}}, 2);
  const Complex phase = std::polar(1.0, 0.7);
  const TrainingSet rotated({{phase * x0.vec(), Label::zero, 0.4}, {x1.vec(), Label::one, 0.6}}, 2);
  for (auto mode : {StcMode::analytic, StcMode::ancilla_circuit, StcMode::minimal}) {
    const double base = stc_classify(ts, test, mode).expectation;
    EXPECT_NEAR(stc_classify(ts, QState(phase * test.vec()), mode).expectation, base, 1e-12);
    EXPECT_NEAR(stc_classify(rotated, test, mode).expectation, base, 1e-12);
  }
}

TEST(StcBias, ClosedFormAndPerTerm) {
  Rng rng(35);
  for (int trial = 0; trial < 10; ++trial) {
    const QState test = testing::random_state(2, rng);
    const QState x0 = testing::random_state(2, rng), x1 = testing::random_state(2, rng);
    const double b = trial % 2 ? 0.35 : -0.2;
    const TrainingSet ts({{x0.vec(), Label::zero, 0.5}, {x1.vec(), Label::one, 0.5}}, 1, b);
    const double k0 = std::norm(x0.vec().dot(test.vec())), k1 = std::norm(x1.vec().dot(test.vec()));
    const double want = (b + 0.5 * k0 - 0.5 * k1) / (std::abs(b) + 1.0);
    for (auto mode : {StcMode::analytic, StcMode::ancilla_circuit, StcMode::minimal}) {
      const auto out = stc_classify_bias(ts, test, mode);
      EXPECT_NEAR(out.expectation, want, 1e-10) << to_string(mode);
      EXPECT_NEAR(out.bias_term, b / (std::abs(b) + 1.0), 1e-12);
      EXPECT_NEAR(out.bias_term + out.per_term[0].contribution + out.per_term[1].contribution,
                  out.expectation, 1e-12);
    }
  }
}

TEST(StcBias, BiasOnlyAndCancellation) {
  const TrainingSet orth({{vec2(0, 1), Label::one, 1.0}}, 1, 0.5);
  const auto out = stc_classify_bias(orth, QState::basis(2, 0), StcMode::ancilla_circuit);
  EXPECT_GT(out.expectation, 0.0);
  EXPECT_EQ(out.predicted, Prediction::zero);
  // b = +a kappa cancels the single class-1 term at kappa = 1.
  const TrainingSet cancel({{vec2(1, 0), Label::one, 1.0}}, 1, 1.0);
  for (auto mode : {StcMode::analytic, StcMode::ancilla_circuit, StcMode::minimal}) {
    EXPECT_EQ(stc_classify_bias(cancel, QState::basis(2, 0), mode).predicted, Prediction::tie);
  }
  const TrainingSet only({}, 1, -0.3);
  EXPECT_NEAR(stc_classify_bias(only, QState::basis(2, 0), StcMode::ancilla_circuit).expectation,
              -1.0, 1e-14);
  const TrainingSet unbiased({{vec2(1, 0), Label::one, 1.0}, {vec2(0, 1), Label::zero, 1.0}});
  for (auto mode : {StcMode::analytic, StcMode::ancilla_circuit, StcMode::minimal}) {
    EXPECT_NEAR(stc_classify_bias(unbiased, QState::basis(2, 0), mode).expectation,
                stc_classify(unbiased, QState::basis(2, 0), mode).expectation, 1e-14);
  }
}

TEST(Hadamard, ClosedForm) {
  Rng rng(36);
  for (int trial = 0; trial < 10; ++trial) {
    const CVec t = testing::random_vector(4, rng);
    std::vector<RawDatum> data;
    for (int m = 0; m < 3; ++m) data.push_back({testing::random_vector(4, rng), label_from_int(m % 2), 1.0 + m});
    for (auto norm : {Normalization::unit_vectors, Normalization::keep_norms}) {
      const TrainingSet ts(data, 1, 0.25, norm);
      for (bool with_bias : {false, true}) {
        // Independent evaluation of Re<u~|x~> from the definitions.
        const double tn = norm == Normalization::keep_norms ? t.norm() : 1.0;
        double num = with_bias ? *ts.bias() : 0.0;
        double nu = with_bias ? std::abs(*ts.bias()) : 0.0, nx = nu;
        for (int m = 0; m < 3; ++m) {
          const double xn = norm == Normalization::keep_norms ? data[m].features.norm() : 1.0;
          num += label_sign(data[m].label) * ts.weight(m) * xn * tn *
                 data[m].features.normalized().dot(t.normalized()).real();
          nu += ts.weight(m) * xn * xn;
          nx += ts.weight(m) * tn * tn;
        }
        const auto out = hadamard_classify(ts, t, with_bias);
        EXPECT_NEAR(out.expectation, num / std::sqrt(nu * nx), 1e-10);
      }
    }
  }
}

TEST(Hadamard, RealDataSignsMatchStc) {
  Rng rng(37);
  const QState t = testing::random_real_state(2, rng);
  CVec x0 = t.vec();
  const TrainingSet ts({{x0, Label::zero, 1.0}, {vec2(t[1], -t[0]), Label::one, 1.0}});
  const auto hc = hadamard_classify(ts, t.vec(), false);
  const auto stc = stc_classify(ts, t, StcMode::analytic);
  EXPECT_GT(hc.per_term[0].contribution, 0.0);
  EXPECT_GT(stc.per_term[0].contribution, 0.0);
  EXPECT_NEAR(hc.expectation, 0.5, 1e-12);
}

TEST(Hadamard, OrthogonalAndPhaseSensitivity) {
  const TrainingSet ts({{vec2(1, 0), Label::zero, 1.0}});
  EXPECT_NEAR(hadamard_classify(ts, vec2(0, 1), false).expectation, 0.0, 1e-15);
  const double plain = hadamard_classify(ts, vec2(1, 0), false).expectation;
  const double rotated = hadamard_classify(ts, vec2(Complex(0, 1), 0), false).expectation;
  EXPECT_NEAR(plain, 1.0, 1e-12);
  EXPECT_NEAR(rotated, 0.0, 1e-12);
  EXPECT_NEAR(stc_classify(ts, QState(vec2(Complex(0, 1), 0)), StcMode::analytic).expectation,
              1.0, 1e-12);
  EXPECT_THROW(hadamard_classify(ts, vec2(1, 0), true), DataError);
}

TEST(QsvmOracle, Examples) {
  const TrainingSet ts({{vec2(1, 0), Label::zero, 1.0}});
  const std::vector<double> one{1.0};
  const auto a = qsvm_oracle_classify(one, 0.0, ts, vec2(1, 0));
  // N_u = 1, N_x = 2.
  EXPECT_NEAR(a.expectation, 1.0 / std::sqrt(2.0), 1e-12);
  const std::vector<double> zero{0.0};
  EXPECT_LT(qsvm_oracle_classify(zero, -0.4, ts, vec2(0, 1)).expectation, 0.0);
  EXPECT_THROW(qsvm_oracle_classify(zero, 0.0, ts, vec2(1, 0)), DataError);
  EXPECT_THROW(qsvm_oracle_classify(std::vector<double>{1.0, 2.0}, 0.0, ts, vec2(1, 0)), DataError);
}

TEST(QsvmOracle, ClosedForm) {
  Rng rng(38);
  std::vector<RawDatum> data;
  for (int m = 0; m < 3; ++m) data.push_back({testing::random_vector(2, rng), label_from_int(m % 2), 1.0});
  const TrainingSet ts(data, 1, std::nullopt, Normalization::keep_norms);
  const std::vector<double> alpha{0.7, -0.2, -0.5};
  const CVec t = testing::random_vector(2, rng);
  const double b = 0.1;
  double num = b, nu = b * b, nx = 1.0;
  for (int m = 0; m < 3; ++m) {
    num += alpha[m] * data[m].features.dot(t).real();
    nu += alpha[m] * alpha[m] * data[m].features.squaredNorm();
    nx += t.squaredNorm();
  }
  EXPECT_NEAR(qsvm_oracle_classify(alpha, b, ts, t).expectation, num / std::sqrt(nu * nx), 1e-10);
}

TEST(SingleShot, DeterministicAndCertain) {
  Rng rng(39);
  const QState x = testing::random_state(2, rng);
  const TrainingSet ts({{x.vec(), Label::zero, 1.0}});
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    EXPECT_EQ(single_shot_classify(ts, x, seed), Label::zero);
  }
  const TrainingSet orth({{vec2(0, 1), Label::zero, 1.0}});
  EXPECT_EQ(single_shot_classify(orth, QState::basis(2, 0), 5),
            single_shot_classify(orth, QState::basis(2, 0), 5));
  int ones = 0;
  const int trials = 100000;
  const auto mts = MixedTrainingSet::from_pure(orth);
  const DensityMatrix t0 = DensityMatrix::pure(QState::basis(2, 0));
  for (int s = 0; s < trials; ++s) {
    ones += single_shot_classify(mts, t0, static_cast<std::uint64_t>(s)) == Label::one;
  }
  EXPECT_LT(std::abs(ones / static_cast<double>(trials) - 0.5), 3.0 * std::sqrt(0.25 / trials));
}

TEST(OutcomeLaw, ProjectorMatchesClosedForm) {
  Rng rng(40);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<MixedDatum> data;
    const auto w = testing::random_distribution(3, rng);
    for (int m = 0; m < 3; ++m) data.push_back({testing::random_density(2, rng), label_from_int(m % 2), w[m]});
    const MixedTrainingSet ts(data, 1);
    const DensityMatrix test = testing::random_density(2, rng);
    const auto p = stc_outcome_probabilities(ts, test);
    const auto q = stc_outcome_probabilities_closed_form(ts, test);
    EXPECT_NEAR(p.plus, q.plus, 1e-10);
    EXPECT_NEAR(p.minus, q.minus, 1e-10);
  }
}

TEST(Misclassification, TwoPointInstance) {
  const DensityMatrix r0 = DensityMatrix::pure(QState::basis(2, 0));
  const DensityMatrix r1 = DensityMatrix::pure(QState::basis(2, 1));
  const MixedTrainingSet ts({{r0, Label::zero, 0.5}, {r1, Label::one, 0.5}});
  const TestMixture mix{0.5, 0.5, r0, r1};
  EXPECT_NEAR(misclassification_probability(ts, mix), 0.25, 1e-12);
  EXPECT_NEAR(misclassification_probability_closed_form(ts, mix), 0.25, 1e-12);
  const MixedTrainingSet swapped({{r0, Label::one, 0.5}, {r1, Label::zero, 0.5}});
  EXPECT_NEAR(misclassification_probability(swapped, mix), 0.75, 1e-12);
  const TestMixture flat{0.5, 0.5, r0, r0};
  EXPECT_NEAR(misclassification_probability(ts, flat), 0.5, 1e-12);
  EXPECT_THROW(misclassification_probability(ts, TestMixture{0.7, 0.7, r0, r1}), DataError);
  EXPECT_THROW(misclassification_probability_closed_form(ts.with_copies(2), mix), DataError);
  EXPECT_NO_THROW(misclassification_probability(ts.with_copies(2), mix));
}

TEST(Misclassification, MonteCarloCrossCheck) {
  Rng rng(41);
  const DensityMatrix r0 = testing::random_density(2, rng), r1 = testing::random_density(2, rng);
  const MixedTrainingSet ts({{testing::random_density(2, rng), Label::zero, 0.5},
                             {testing::random_density(2, rng), Label::one, 0.5}});
  const TestMixture mix{0.3, 0.7, r0, r1};
  const double p = misclassification_probability(ts, mix);
  const int trials = 50000;
  std::bernoulli_distribution pick(mix.p1);
  int errors = 0;
  for (int s = 0; s < trials; ++s) {
    const bool truth_one = pick(rng);
    const Label got = single_shot_classify(ts, truth_one ? r1 : r0, static_cast<std::uint64_t>(s));
    errors += (got == Label::one) != truth_one;
  }
  EXPECT_LT(std::abs(errors / static_cast<double>(trials) - p), 3.0 * std::sqrt(0.25 / trials));
}

TEST(Helstrom, Operator) {
  const TrainingSet ts({{vec2(1, 0), Label::zero, 1.0}, {vec2(0, 1), Label::one, 1.0}});
  const CMat h = helstrom_operator(ts);
  EXPECT_NEAR(h(0, 0).real(), 0.5, 1e-15);
  EXPECT_NEAR(h(1, 1).real(), -0.5, 1e-15);
  const TrainingSet same({{vec2(1, 0), Label::zero, 1.0}, {vec2(1, 0), Label::one, 1.0}});
  EXPECT_LT(helstrom_operator(same).norm(), 1e-15);
  EXPECT_THROW(helstrom_operator(TrainingSet({{vec2(1, 0), Label::zero, 1.0}})), DataError);
}

TEST(Helstrom, ExpectationIdentity) {
  Rng rng(42);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<RawDatum> data;
    for (int m = 0; m < 4; ++m) data.push_back({testing::random_vector(2, rng), label_from_int(m % 2), 1.0 + m});
    const TrainingSet ts(data, 2);
    const QState test = testing::random_state(2, rng);
    const CMat t2 = ref::projector(ref::kron(test.vec(), test.vec()));
    const double via_operator = (t2 * helstrom_operator(ts)).trace().real();
    EXPECT_NEAR(via_operator, stc_classify(ts, test, StcMode::analytic).expectation, 1e-12);
  }
}

TEST(Ensembles, WeightsLinearity) {
  Rng rng(43);
  const DensityMatrix test = testing::random_density(2, rng);
  std::vector<LabeledDensity> train;
  for (int m = 0; m < 3; ++m) train.push_back({testing::random_density(2, rng), label_from_int(m % 2)});
  std::vector<WeightModel> models;
  const auto q = testing::random_distribution(3, rng);
  for (int s = 0; s < 3; ++s) models.push_back({q[s], testing::random_distribution(3, rng)});
  double want = 0.0;
  for (const auto& model : models) {
    std::vector<MixedDatum> data;
    for (int m = 0; m < 3; ++m) data.push_back({train[m].rho, train[m].label, model.weights[m]});
    want += model.q * stc_classify(MixedTrainingSet(data, 2), test, StcMode::analytic).expectation;
  }
  for (auto mode : {StcMode::analytic, StcMode::ancilla_circuit, StcMode::minimal}) {
    EXPECT_NEAR(ensemble_weights_classify(test, models, train, 2, mode).expectation, want, 1e-10);
  }
}

TEST(Ensembles, ExponentsClosedForm) {
  Rng rng(44);
  const QState t = testing::random_state(2, rng), x = testing::random_state(2, rng);
  const double kappa = std::norm(t.vec().dot(x.vec()));
  const DensityMatrix test = DensityMatrix::pure(t);
  for (Label y : {Label::zero, Label::one}) {
    const std::vector<LabeledDensity> train{{DensityMatrix::pure(x), y}};
    const std::vector<ExponentModel> models{{0.5, {1.0}, 1}, {0.5, {1.0}, 2}};
    for (auto mode : {StcMode::analytic, StcMode::ancilla_circuit, StcMode::minimal}) {
      EXPECT_NEAR(ensemble_exponents_classify(test, models, train, 2, mode).expectation,
                  0.5 * label_sign(y) * (kappa + kappa * kappa), 1e-10);
    }
    const std::vector<ExponentModel> first_only{{1.0, {1.0}, 1}, {0.0, {1.0}, 2}};
    EXPECT_NEAR(ensemble_exponents_classify(test, first_only, train, 2, StcMode::ancilla_circuit).expectation,
                label_sign(y) * kappa, 1e-10);
  }
}

}  // namespace
}  // namespace qkc
