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

#include "qkc/kernelsvm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "qkc/error.hpp"

namespace qkc {

namespace {

const QState& as_pure(const KernelInput& in, KernelKind kind) {
  if (const auto* s = std::get_if<QState>(&in)) return *s;
  throw DataError(to_string(kind) + " kernel needs pure-state inputs");
}

const DensityMatrix& as_density(const KernelInput& in) {
  if (const auto* r = std::get_if<DensityMatrix>(&in)) return *r;
  throw DataError("hs-trace kernel needs density-matrix inputs");
}

double base_kernel(KernelKind kind, const KernelInput& a, const KernelInput& b) {
  switch (kind) {
    case KernelKind::squared_overlap: {
      const QState& x = as_pure(a, kind);
      const QState& y = as_pure(b, kind);
      if (x.dim() != y.dim()) throw DimensionError("kernel inputs differ in dimension");
      return squared_overlap(x, y);
    }
    case KernelKind::real_overlap: {
      const QState& x = as_pure(a, kind);
      const QState& y = as_pure(b, kind);
      if (x.dim() != y.dim()) throw DimensionError("kernel inputs differ in dimension");
      return x.vec().dot(y.vec()).real();
    }
    case KernelKind::hs_trace: {
      const DensityMatrix& x = as_density(a);
      const DensityMatrix& y = as_density(b);
      if (x.dim() != y.dim()) throw DimensionError("kernel inputs differ in dimension");
      return hs_inner(x, y);
    }
  }
  throw DataError("unknown kernel kind");
}

GramMatrix attach_spectrum(RMat m, KernelSpec spec) {
  GramMatrix g;
  if (m.rows() > 0) {
    Eigen::SelfAdjointEigenSolver<RMat> es(m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
      throw NumericError("Gram eigendecomposition failed");
    }
    g.eigenvalues = es.eigenvalues();
    g.min_eigenvalue = g.eigenvalues(0);
  }
  g.matrix = std::move(m);
  g.kernel = spec;
  return g;
}

}  // namespace

std::string to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::squared_overlap: return "squared-overlap";
    case KernelKind::hs_trace: return "hs-trace";
    case KernelKind::real_overlap: return "real-overlap";
  }
  return "squared-overlap";
}

KernelKind kernel_kind_from_string(std::string_view name) {
  if (name == "squared-overlap") return KernelKind::squared_overlap;
  if (name == "hs-trace") return KernelKind::hs_trace;
  if (name == "real-overlap") return KernelKind::real_overlap;
  throw DataError("unknown kernel '" + std::string(name) + "'");
}

void KernelSpec::validate() const {
  if (copies < 1) {
    throw DataError("kernel exponent must be a positive integer");
  }
}

double kernel_eval(const KernelSpec& spec, const KernelInput& a, const KernelInput& b) {
  spec.validate();
  return std::pow(base_kernel(spec.kind, a, b), spec.copies);
}

GramMatrix gram(const KernelSpec& spec, std::span<const KernelInput> inputs) {
  spec.validate();
  if (inputs.empty()) {
    throw DataError("Gram matrix of an empty list");
  }
  const std::size_t kind = inputs.front().index();
  for (const auto& in : inputs) {
    if (in.index() != kind) throw DataError("Gram matrix inputs mix pure and mixed states");
  }
  const auto m = static_cast<Eigen::Index>(inputs.size());
  RMat g(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i; j < m; ++j) {
      g(i, j) = kernel_eval(spec, inputs[static_cast<std::size_t>(i)],
                            inputs[static_cast<std::size_t>(j)]);
      g(j, i) = g(i, j);
    }
  }
  return attach_spectrum(std::move(g), spec);
}

GramMatrix gram(const KernelSpec& spec, std::span<const QState> states) {
  const std::vector<KernelInput> inputs(states.begin(), states.end());
  return gram(spec, inputs);
}

GramMatrix gram_from_matrix(RMat matrix, KernelSpec spec) {
  spec.validate();
  if (matrix.rows() != matrix.cols()) {
    throw DimensionError("Gram matrix must be square");
  }
  if (!matrix.allFinite()) {
    throw NumericError("Gram matrix has non-finite entries");
  }
  const double scale = std::max(1.0, matrix.cwiseAbs().maxCoeff());
  if ((matrix - matrix.transpose()).cwiseAbs().maxCoeff() > kStructuralTol * scale) {
    throw NumericError("Gram matrix is not symmetric");
  }
  return attach_spectrum(std::move(matrix), spec);
}

CMat overlap_gram(std::span<const QState> states) {
  const auto m = static_cast<Eigen::Index>(states.size());
  CMat g(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      const auto& x = states[static_cast<std::size_t>(i)];
      const auto& y = states[static_cast<std::size_t>(j)];
      if (x.dim() != y.dim()) throw DimensionError("overlap inputs differ in dimension");
      g(i, j) = x.vec().dot(y.vec());
    }
  }
  return g;
}

PsdCertificate psd_certify(const RMat& g) {
  return psd_certify(gram_from_matrix(g));
}

PsdCertificate psd_certify(const GramMatrix& g) {
  PsdCertificate cert;
  if (g.matrix.rows() == 0) {
    cert.certified = true;
    return cert;
  }
  const double scale = std::max(1.0, g.matrix.cwiseAbs().maxCoeff());
  if ((g.matrix - g.matrix.transpose()).cwiseAbs().maxCoeff() > kStructuralTol * scale) {
    throw NumericError("PSD certification needs a symmetric matrix");
  }
  const double norm2 = g.eigenvalues.cwiseAbs().maxCoeff();
  cert.min_eigenvalue = g.min_eigenvalue;
  cert.threshold = 1e-8 * std::max(1.0, norm2);
  cert.certified = cert.min_eigenvalue >= -cert.threshold;
  return cert;
}

RVec SvmModel::signed_multipliers() const {
  RVec alpha = multipliers;
  for (Eigen::Index i = 0; i < alpha.size(); ++i) {
    alpha(i) *= label_sign(labels[static_cast<std::size_t>(i)]);
  }
  return alpha;
}

double SvmModel::dual_objective(const RMat& gram) const {
  const RVec alpha = signed_multipliers();
  return multipliers.sum() - 0.5 * alpha.dot(gram * alpha);
}

SvmModel svm_train(const GramMatrix& g, std::span<const Label> labels,
                   const SvmOptions& options) {
  const auto n = static_cast<Eigen::Index>(labels.size());
  if (g.matrix.rows() != n || g.matrix.cols() != n) {
    throw DimensionError("Gram matrix size differs from the number of labels");
  }
  if (!(options.c > 0.0) || !(options.tol > 0.0)) {
    throw DataError("SVM needs C > 0 and a positive tolerance");
  }
  const bool has0 = std::find(labels.begin(), labels.end(), Label::zero) != labels.end();
  const bool has1 = std::find(labels.begin(), labels.end(), Label::one) != labels.end();
  if (!has0 || !has1) {
    throw DataError("SVM training needs both classes");
  }
  const PsdCertificate cert = psd_certify(g);
  if (!cert.certified) {
    throw NumericError("Gram matrix is not positive semidefinite (min eigenvalue " +
                       std::to_string(cert.min_eigenvalue) + ")");
  }

  const double c = options.c;
  RVec y(n);
  for (Eigen::Index i = 0; i < n; ++i) y(i) = label_sign(labels[static_cast<std::size_t>(i)]);
  const RMat q = y.asDiagonal() * g.matrix * y.asDiagonal();

  // Minimize 1/2 a'Qa - e'a; grad = Qa - e.
  RVec a = RVec::Zero(n);
  RVec grad = RVec::Constant(n, -1.0);
  const auto up = [&](Eigen::Index t) { return (y(t) > 0 && a(t) < c) || (y(t) < 0 && a(t) > 0); };
  const auto low = [&](Eigen::Index t) { return (y(t) > 0 && a(t) > 0) || (y(t) < 0 && a(t) < c); };
  constexpr double kTau = 1e-12;

  SvmModel model;
  model.kernel = g.kernel;
  model.labels.assign(labels.begin(), labels.end());

  std::size_t iter = 0;
  for (; iter < options.max_iter; ++iter) {
    Eigen::Index i = -1, j = -1;
    double gmax = -std::numeric_limits<double>::infinity();
    double gmin = std::numeric_limits<double>::infinity();
    for (Eigen::Index t = 0; t < n; ++t) {
      const double v = -y(t) * grad(t);
      if (up(t) && v > gmax) {
        gmax = v;
        i = t;
      }
      if (low(t) && v < gmin) {
        gmin = v;
        j = t;
      }
    }
    if (i < 0 || j < 0 || gmax - gmin < options.tol) {
      model.converged = true;
      break;
    }

    const double old_ai = a(i), old_aj = a(j);
    if (y(i) != y(j)) {
      double quad = q(i, i) + q(j, j) + 2.0 * q(i, j);
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad(i) - grad(j)) / quad;
      const double diff = a(i) - a(j);
      a(i) += delta;
      a(j) += delta;
      if (diff > 0.0) {
        if (a(j) < 0.0) {
          a(j) = 0.0;
          a(i) = diff;
        }
      } else if (a(i) < 0.0) {
        a(i) = 0.0;
        a(j) = -diff;
      }
      if (diff > 0.0) {
        if (a(i) > c) {
          a(i) = c;
          a(j) = c - diff;
        }
      } else if (a(j) > c) {
        a(j) = c;
        a(i) = c + diff;
      }
    } else {
      double quad = q(i, i) + q(j, j) - 2.0 * q(i, j);
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad(i) - grad(j)) / quad;
      const double sum = a(i) + a(j);
      a(i) -= delta;
      a(j) += delta;
      if (sum > c) {
        if (a(i) > c) {
          a(i) = c;
          a(j) = sum - c;
        }
      } else if (a(j) < 0.0) {
        a(j) = 0.0;
        a(i) = sum;
      }
      if (sum > c) {
        if (a(j) > c) {
          a(j) = c;
          a(i) = sum - c;
        }
      } else if (a(i) < 0.0) {
        a(i) = 0.0;
        a(j) = sum;
      }
    }
    const double di = a(i) - old_ai, dj = a(j) - old_aj;
    grad += q.col(i) * di + q.col(j) * dj;
    if (options.record_objective) {
      // L(a) = -(1/2 a'Qa - e'a) = -1/2 sum_t a_t (grad_t - 1).
      model.objective_history.push_back(-0.5 * a.dot(grad - RVec::Ones(n)));
    }
  }
  model.iterations = iter;

  // b = l_s - sum_j a_j l_j G_js = -l_s grad_s on free vectors.
  double sum_free = 0.0;
  std::size_t n_free = 0;
  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  for (Eigen::Index t = 0; t < n; ++t) {
    const double yg = y(t) * grad(t);
    if (a(t) > options.support_eps && a(t) < c - options.support_eps) {
      sum_free -= yg;
      ++n_free;
    } else if ((a(t) >= c - options.support_eps) == (y(t) < 0)) {
      ub = std::min(ub, yg);
    } else {
      lb = std::max(lb, yg);
    }
  }
  if (n_free > 0) {
    model.bias = sum_free / static_cast<double>(n_free);
  } else {
    model.bias = -0.5 * (ub + lb);
  }

  model.multipliers = a;
  for (Eigen::Index t = 0; t < n; ++t) {
    if (a(t) > options.support_eps) model.support.push_back(static_cast<std::size_t>(t));
  }
  return model;
}

double regression_from_row(const SvmModel& model, const RVec& kernel_row) {
  if (kernel_row.size() != model.multipliers.size()) {
    throw DimensionError("kernel row length differs from the number of multipliers");
  }
  return model.signed_multipliers().dot(kernel_row) + model.bias;
}

double regression(const SvmModel& model, const KernelSpec& spec,
                  std::span<const KernelInput> train, const KernelInput& test) {
  if (!(spec == model.kernel)) {
    throw DataError("regression kernel differs from the training kernel");
  }
  if (train.size() != static_cast<std::size_t>(model.multipliers.size())) {
    throw DataError("regression data differ in size from the training data");
  }
  RVec row(static_cast<Eigen::Index>(train.size()));
  for (std::size_t j = 0; j < train.size(); ++j) {
    row(static_cast<Eigen::Index>(j)) = kernel_eval(spec, train[j], test);
  }
  return regression_from_row(model, row);
}

TrainingSet to_training_set(const SvmModel& model, std::span<const QState> train) {
  if (model.kernel.kind != KernelKind::squared_overlap) {
    throw DataError("only squared-overlap models map onto the swap-test classifier");
  }
  if (train.size() != static_cast<std::size_t>(model.multipliers.size())) {
    throw DataError("training data differ in size from the model");
  }
  std::vector<RawDatum> data;
  for (std::size_t s : model.support) {
    data.push_back({train[s].vec(), model.labels[s], model.multipliers(static_cast<Eigen::Index>(s))});
  }
  std::optional<double> bias;
  if (model.bias != 0.0) bias = model.bias;
  return TrainingSet(std::move(data), model.kernel.copies, bias);
}

double centroid_decision(const TrainingSet& ts, const QState& test, const KernelSpec& spec) {
  if (spec.kind != KernelKind::squared_overlap) {
    throw DataError("centroid decision on pure data uses the squared-overlap kernel");
  }
  if (ts.empty()) {
    throw DataError("training set is empty");
  }
  const KernelSpec k{spec.kind, ts.copies()};
  const auto w = ts.stc_weights();
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  double class0 = 0.0, class1 = 0.0;
  for (std::size_t m = 0; m < ts.size(); ++m) {
    const double v = w[m] / total * kernel_eval(k, ts.state(m), test);
    (ts.label(m) == Label::zero ? class0 : class1) += v;
  }
  return class0 - class1;
}

double centroid_decision(const MixedTrainingSet& ts, const DensityMatrix& test) {
  const KernelSpec k{KernelKind::hs_trace, ts.copies()};
  double class0 = 0.0, class1 = 0.0;
  for (const auto& d : ts) {
    const double v = d.weight * kernel_eval(k, d.rho, test);
    (d.label == Label::zero ? class0 : class1) += v;
  }
  return class0 - class1;
}

}  // namespace qkc
