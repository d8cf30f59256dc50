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
#include <vector>

#include "qkc/classifier.hpp"
#include "qkc/error.hpp"
#include "qkc/kernelsvm.hpp"
#include "test_support.hpp"

namespace qkc {
namespace {

using testing::Rng;

CVec vec2(Complex a, Complex b) {
  CVec v(2);
  v << a, b;
  return v;
}

/// Two clusters around |0> and |1> with small random tilts.
void toy_clusters(std::size_t per_class, Rng& rng, std::vector<QState>& states,
                  std::vector<Label>& labels) {
  std::uniform_real_distribution<double> tilt(-0.3, 0.3);
  for (std::size_t i = 0; i < per_class; ++i) {
    for (int y = 0; y < 2; ++y) {
      const double angle = (y == 0 ? 0.0 : std::numbers::pi / 2) + tilt(rng);
      states.push_back(QState(vec2(std::cos(angle), std::sin(angle))));
      labels.push_back(label_from_int(y));
    }
  }
}

TEST(KernelEval, Examples) {
  const QState zero = QState::basis(2, 0);
  const QState plus(vec2(1 / std::sqrt(2.0), 1 / std::sqrt(2.0)));
  EXPECT_DOUBLE_EQ(kernel_eval({KernelKind::squared_overlap, 1}, zero, zero), 1.0);
  EXPECT_NEAR(kernel_eval({KernelKind::squared_overlap, 3}, zero, plus), 0.125, 1e-15);
  Rng rng(51);
  EXPECT_NEAR(kernel_eval({KernelKind::hs_trace, 1}, DensityMatrix::maximally_mixed(2),
                          testing::random_density(2, rng)),
              0.5, 1e-12);
  EXPECT_NEAR(kernel_eval({KernelKind::real_overlap, 1}, zero, QState(vec2(Complex(0, 1), 0))), 0.0,
              1e-15);
  EXPECT_THROW(kernel_eval({KernelKind::hs_trace, 1}, zero, zero), DataError);
  EXPECT_THROW(kernel_eval({KernelKind::squared_overlap, 0}, zero, zero), DataError);
  EXPECT_EQ(kernel_kind_from_string("hs-trace"), KernelKind::hs_trace);
  EXPECT_THROW(kernel_kind_from_string("rbf"), DataError);
}

TEST(Gram, IdentityAndRankOne) {
  std::vector<QState> basis;
  for (std::size_t i = 0; i < 4; ++i) basis.push_back(QState::basis(4, i));
  const GramMatrix g = gram(KernelSpec{}, basis);
  EXPECT_LT((g.matrix - RMat::Identity(4, 4)).norm(), 1e-15);
  Rng rng(52);
  const QState x = testing::random_state(4, rng);
  const std::vector<QState> dup(3, x);
  const GramMatrix r = gram(KernelSpec{}, dup);
  EXPECT_LT((r.matrix - RMat::Ones(3, 3)).norm(), 1e-12);
  EXPECT_NEAR(r.eigenvalues(2), 3.0, 1e-12);
  EXPECT_NEAR(r.eigenvalues(0), 0.0, 1e-12);
  std::vector<KernelInput> mixed{x, DensityMatrix::pure(x)};
  EXPECT_THROW(gram(KernelSpec{}, mixed), DataError);
}

TEST(Gram, RandomSetsArePsd) {
  Rng rng(53);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t dim = std::size_t{1} << (1 + trial % 3);
    const std::size_t count = 2 + trial % 9;
    std::vector<QState> pure;
    std::vector<KernelInput> dens;
    for (std::size_t i = 0; i < count; ++i) {
      pure.push_back(testing::random_state(dim, rng));
      dens.push_back(testing::random_density(dim, rng, 1 + i % dim));
    }
    EXPECT_TRUE(psd_certify(gram({KernelKind::squared_overlap, 1}, pure)).certified);
    EXPECT_TRUE(psd_certify(gram({KernelKind::hs_trace, 1}, dens)).certified);
    EXPECT_TRUE(psd_certify(gram({KernelKind::squared_overlap, 2}, pure)).certified);
  }
}

TEST(Gram, SchurProductIdentity) {
  Rng rng(54);
  std::vector<QState> states;
  for (int i = 0; i < 6; ++i) states.push_back(testing::random_state(8, rng));
  const CMat o = overlap_gram(states);
  const RMat schur = o.cwiseProduct(o.conjugate()).real();
  EXPECT_LT((gram(KernelSpec{}, states).matrix - schur).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(PsdCertify, Examples) {
  EXPECT_TRUE(psd_certify(RMat(RMat::Identity(3, 3))).certified);
  RMat bad(2, 2);
  bad << 1, 2, 2, 1;
  const auto cert = psd_certify(bad);
  EXPECT_FALSE(cert.certified);
  EXPECT_NEAR(cert.min_eigenvalue, -1.0, 1e-12);
  RMat asym(2, 2);
  asym << 1, 0.5, 0.4, 1;
  EXPECT_THROW(psd_certify(asym), NumericError);
}

TEST(Svm, TwoPointIdentityKernel) {
  const GramMatrix g = gram_from_matrix(RMat::Identity(2, 2));
  const std::vector<Label> labels{Label::zero, Label::one};
  SvmOptions opt;
  opt.c = 10.0;
  const SvmModel m = svm_train(g, labels, opt);
  EXPECT_NEAR(m.multipliers(0), 1.0, 1e-6);
  EXPECT_NEAR(m.multipliers(1), 1.0, 1e-6);
  EXPECT_NEAR(m.bias, 0.0, 1e-6);
  EXPECT_NEAR(regression_from_row(m, g.matrix.col(0)), 1.0, 1e-6);
  EXPECT_NEAR(regression_from_row(m, g.matrix.col(1)), -1.0, 1e-6);
}

TEST(Svm, DuplicatedPointSaturates) {
  const GramMatrix g = gram_from_matrix(RMat::Ones(2, 2));
  const std::vector<Label> labels{Label::zero, Label::one};
  SvmOptions opt;
  opt.c = 3.0;
  const SvmModel m = svm_train(g, labels, opt);
  // On the feasible line a1 = a2 = t the dual is 2t, maximized at t = C.
  double best_t = 0.0, best = -1.0;
  for (int i = 0; i <= 300; ++i) {
    const double t = i * 0.01;
    const double obj = 2 * t - 0.5 * (t * t - 2 * t * t + t * t);
    if (obj > best) best = obj, best_t = t;
  }
  EXPECT_NEAR(m.multipliers(0), best_t, 1e-9);
  EXPECT_NEAR(m.multipliers(1), best_t, 1e-9);
}

TEST(Svm, KktAndMonotoneObjective) {
  Rng rng(55);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<QState> states;
    std::vector<Label> labels;
    toy_clusters(5, rng, states, labels);
    const GramMatrix g = gram(KernelSpec{}, states);
    SvmOptions opt;
    opt.record_objective = true;
    const SvmModel m = svm_train(g, labels, opt);
    EXPECT_TRUE(m.converged);
    EXPECT_LT(std::abs(m.signed_multipliers().sum()), 1e-8);
    EXPECT_GE(m.multipliers.minCoeff(), 0.0);
    EXPECT_LE(m.multipliers.maxCoeff(), opt.c);
    for (std::size_t i = 1; i < m.objective_history.size(); ++i) {
      EXPECT_GE(m.objective_history[i], m.objective_history[i - 1] - 1e-9 * std::abs(m.objective_history[i]));
    }
    EXPECT_NEAR(m.objective_history.back(), m.dual_objective(g.matrix), 1e-6 * std::max(1.0, std::abs(m.dual_objective(g.matrix))));
    for (std::size_t s : m.support) {
      const double f = regression_from_row(m, g.matrix.col(static_cast<Eigen::Index>(s)));
      EXPECT_GE(label_sign(labels[s]) * f, 1.0 - 1e-6);
    }
    for (std::size_t i = 0; i < states.size(); ++i) {
      const std::vector<KernelInput> train(states.begin(), states.end());
      const double f = regression(m, KernelSpec{}, train, states[i]);
      EXPECT_EQ(f > 0, labels[i] == Label::zero);
    }
  }
}

TEST(Svm, ScalingPreservesSigns) {
  Rng rng(56);
  std::vector<QState> states;
  std::vector<Label> labels;
  toy_clusters(4, rng, states, labels);
  const GramMatrix g = gram(KernelSpec{}, states);
  const SvmModel a = svm_train(g, labels);
  const GramMatrix scaled = gram_from_matrix(g.matrix * 3.5);
  const SvmModel b = svm_train(scaled, labels);
  for (Eigen::Index i = 0; i < g.matrix.rows(); ++i) {
    EXPECT_EQ(regression_from_row(a, g.matrix.col(i)) > 0,
              regression_from_row(b, scaled.matrix.col(i)) > 0);
  }
}

TEST(Svm, Rejections) {
  const std::vector<Label> one_class{Label::zero, Label::zero};
  EXPECT_THROW(svm_train(gram_from_matrix(RMat::Identity(2, 2)), one_class), DataError);
  RMat bad(2, 2);
  bad << 1, 2, 2, 1;
  const std::vector<Label> labels{Label::zero, Label::one};
  EXPECT_THROW(svm_train(gram_from_matrix(bad), labels), NumericError);
}

TEST(Svm, RegressionMatchesBiasClassifierSign) {
  Rng rng(57);
  std::vector<QState> states;
  std::vector<Label> labels;
  toy_clusters(2, rng, states, labels);
  const GramMatrix g = gram(KernelSpec{}, states);
  const SvmModel m = svm_train(g, labels);
  const TrainingSet ts = to_training_set(m, states);
  const std::vector<KernelInput> train(states.begin(), states.end());
  for (std::size_t i = 0; i < states.size(); ++i) {
    const double f = regression(m, KernelSpec{}, train, states[i]);
    const auto out = stc_classify_bias(ts, states[i], StcMode::ancilla_circuit);
    EXPECT_EQ(f > 0, out.expectation > 0);
    EXPECT_EQ(out.predicted, f > 0 ? Prediction::zero : Prediction::one);
  }
}

TEST(Regression, ZeroMultipliersGiveBias) {
  SvmModel m;
  m.multipliers = RVec::Zero(2);
  m.labels = {Label::zero, Label::one};
  m.bias = -0.25;
  EXPECT_DOUBLE_EQ(regression_from_row(m, RVec::Ones(2)), -0.25);
  m.kernel = KernelSpec{};
  const std::vector<KernelInput> train{QState::basis(2, 0), QState::basis(2, 1)};
  EXPECT_THROW(regression(m, KernelSpec{KernelKind::squared_overlap, 2}, train, QState::basis(2, 0)),
               DataError);
}

TEST(Centroid, EqualsStcAnalytic) {
  Rng rng(58);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<RawDatum> data;
    for (int m = 0; m < 4; ++m) data.push_back({testing::random_vector(4, rng), label_from_int(m % 2), 1.0 + m});
    const TrainingSet ts(data, 1 + trial % 2);
    const QState t = testing::random_state(4, rng);
    EXPECT_NEAR(centroid_decision(ts, t, KernelSpec{}), stc_classify(ts, t, StcMode::analytic).expectation,
                1e-12);
  }
  const TrainingSet orth({{vec2(1, 0), Label::zero, 1.0}, {vec2(0, 1), Label::one, 1.0}});
  EXPECT_NEAR(centroid_decision(orth, QState::basis(2, 0), KernelSpec{}), 0.5, 1e-15);
  const double r = 1 / std::sqrt(2.0);
  EXPECT_NEAR(centroid_decision(orth, QState(vec2(r, r)), KernelSpec{}), 0.0, 1e-15);
}

}  // namespace
}  // namespace qkc
