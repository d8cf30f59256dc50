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

#include "qkc/cli/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>
#include <sstream>

#include "qkc/error.hpp"

namespace qkc::cli {

namespace {

using json = nlohmann::ordered_json;

/// Uniform double in [0, 1) from 53 generator bits; portable across
/// standard libraries, unlike std::uniform_real_distribution.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double normal01(std::mt19937_64& rng) {
  const double u1 = 1.0 - uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

json label_json(Prediction p, bool tie_as_zero) {
  switch (p) {
    case Prediction::zero: return 0;
    case Prediction::one: return 1;
    case Prediction::tie: return tie_as_zero ? json(0) : json("tie");
  }
  return "tie";
}

json kernel_json(const KernelSpec& k) { return {{"kind", to_string(k.kind)}, {"copies", k.copies}}; }

/// Training data after weights and bias are resolved.
struct Prepared {
  std::vector<RawDatum> data;
  /// Dataset row of every entry in data.
  std::vector<std::size_t> rows;
  std::optional<double> bias;
  std::optional<SvmModel> model;
  std::optional<GramMatrix> gram;
};

Prepared prepare(const ExperimentConfig& cfg, const Dataset& train) {
  Prepared p;
  const std::size_t m = train.rows.size();
  std::vector<double> w(m, 1.0);

  if (cfg.weights == WeightsMode::explicit_values) {
    if (!cfg.weight_values.empty()) {
      if (cfg.weight_values.size() != m) {
        throw DataError("explicit weights: got " + std::to_string(cfg.weight_values.size()) +
                        " values for " + std::to_string(m) + " training rows");
      }
      require_distribution(cfg.weight_values, "explicit weights");
      w = cfg.weight_values;
    } else {
      if (!train.has_weights()) {
        throw DataError("explicit weights need --weight-values or a weight column in the dataset");
      }
      for (std::size_t i = 0; i < m; ++i) w[i] = *train.rows[i].weight;
      require_distribution(w, "dataset weights");
    }
  } else if (cfg.weights == WeightsMode::trained) {
    const KernelSpec spec{cfg.classifier == ClassifierKind::stc ? KernelKind::squared_overlap
                                                                : KernelKind::real_overlap,
                          cfg.classifier == ClassifierKind::stc ? cfg.copies : 1};
    std::vector<QState> states;
    std::vector<Label> labels;
    for (const auto& r : train.rows) {
      states.push_back(amplitude_encode(r.features));
      labels.push_back(r.label);
    }
    p.gram = gram(spec, states);
    p.model = svm_train(*p.gram, labels, cfg.svm);
    for (std::size_t i = 0; i < m; ++i) w[i] = p.model->multipliers(static_cast<Eigen::Index>(i));
  }

  if (cfg.bias == BiasMode::explicit_value) {
    p.bias = cfg.bias_value;
  } else if (cfg.bias == BiasMode::trained) {
    if (!p.model) throw DataError("bias=trained needs weights=trained");
    p.bias = p.model->bias;
  }

  for (std::size_t i = 0; i < m; ++i) {
    const bool keep = p.model ? w[i] > cfg.svm.support_eps : w[i] > 0.0;
    if (!keep) continue;
    p.data.push_back({train.rows[i].features, train.rows[i].label, w[i]});
    p.rows.push_back(i);
  }
  if (p.data.empty() && !(p.bias && *p.bias != 0.0)) {
    throw DataError("no training datum carries positive weight");
  }
  return p;
}

ClassifierOutput classify_point(const ExperimentConfig& cfg, const Prepared& p, const CVec& x) {
  const bool with_bias = p.bias && *p.bias != 0.0;
  switch (cfg.classifier) {
    case ClassifierKind::stc: {
      const TrainingSet ts(p.data, cfg.copies, with_bias ? p.bias : std::nullopt, cfg.normalization);
      const QState test = amplitude_encode(x);
      return with_bias ? stc_classify_bias(ts, test, cfg.mode) : stc_classify(ts, test, cfg.mode);
    }
    case ClassifierKind::hadamard: {
      const TrainingSet ts(p.data, 1, with_bias ? p.bias : std::nullopt, cfg.normalization);
      return hadamard_classify(ts, x, with_bias);
    }
    case ClassifierKind::qsvm: {
      std::vector<RawDatum> unit = p.data;
      std::vector<double> alphas;
      for (auto& d : unit) {
        alphas.push_back(d.weight * label_sign(d.label));
        d.weight = 1.0;
      }
      const TrainingSet ts(unit, 1, std::nullopt, cfg.normalization);
      return qsvm_oracle_classify(alphas, p.bias.value_or(0.0), ts, x);
    }
  }
  throw DataError("unknown classifier");
}

}  // namespace

// ---------------------------------------------------------------------------

ClassifierKind classifier_from_string(const std::string& s) {
  if (s == "stc") return ClassifierKind::stc;
  if (s == "hadamard") return ClassifierKind::hadamard;
  if (s == "qsvm") return ClassifierKind::qsvm;
  throw DataError("unknown classifier '" + s + "'");
}

std::string to_string(ClassifierKind k) {
  switch (k) {
    case ClassifierKind::stc: return "stc";
    case ClassifierKind::hadamard: return "hadamard";
    case ClassifierKind::qsvm: return "qsvm";
  }
  return "stc";
}

StcMode mode_from_string(const std::string& s) {
  if (s == "analytic") return StcMode::analytic;
  if (s == "circuit") return StcMode::ancilla_circuit;
  if (s == "minimal") return StcMode::minimal;
  throw DataError("unknown mode '" + s + "'");
}

WeightsMode weights_from_string(const std::string& s) {
  if (s == "uniform") return WeightsMode::uniform;
  if (s == "trained") return WeightsMode::trained;
  if (s == "explicit") return WeightsMode::explicit_values;
  throw DataError("unknown weights mode '" + s + "'");
}

std::string to_string(WeightsMode m) {
  switch (m) {
    case WeightsMode::uniform: return "uniform";
    case WeightsMode::trained: return "trained";
    case WeightsMode::explicit_values: return "explicit";
  }
  return "uniform";
}

BiasMode bias_from_string(const std::string& s) {
  if (s == "none") return BiasMode::none;
  if (s == "explicit") return BiasMode::explicit_value;
  if (s == "trained") return BiasMode::trained;
  throw DataError("unknown bias mode '" + s + "'");
}

std::string to_string(BiasMode m) {
  switch (m) {
    case BiasMode::none: return "none";
    case BiasMode::explicit_value: return "explicit";
    case BiasMode::trained: return "trained";
  }
  return "none";
}

Normalization normalization_from_string(const std::string& s) {
  if (s == "unit") return Normalization::unit_vectors;
  if (s == "keep-norms") return Normalization::keep_norms;
  throw DataError("unknown normalization '" + s + "'");
}

std::string to_string(Normalization n) {
  return n == Normalization::unit_vectors ? "unit" : "keep-norms";
}

void ExperimentConfig::validate() const {
  if (copies < 1) throw DataError("copies must be at least 1");
  if (classifier != ClassifierKind::stc && copies != 1) {
    throw DataError("copies > 1 applies to the swap-test classifier only");
  }
  if (!weight_values.empty() && weights != WeightsMode::explicit_values) {
    throw DataError("weight values given but weights mode is " + to_string(weights));
  }
  if (bias == BiasMode::explicit_value && !std::isfinite(bias_value)) {
    throw DataError("bias must be finite");
  }
  if (!(svm.c > 0.0)) throw DataError("SVM C must be positive");
}

json ExperimentConfig::to_json() const {
  json j;
  j["classifier"] = to_string(classifier);
  j["mode"] = classifier == ClassifierKind::stc ? json(qkc::to_string(mode)) : json("circuit");
  j["copies"] = copies;
  j["weights"] = to_string(weights);
  j["weight_values"] = weight_values;
  j["bias"] = to_string(bias);
  j["bias_value"] = bias_value;
  j["normalization"] = to_string(normalization);
  j["shots"] = shots;
  j["seed"] = seed;
  j["tie_as_zero"] = tie_as_zero;
  j["svm"] = {{"c", svm.c}, {"tol", svm.tol}, {"max_iter", svm.max_iter}, {"support_eps", svm.support_eps}};
  return j;
}

json run_experiment(const ExperimentConfig& config, const Dataset& train, const Dataset& test) {
  const auto start = std::chrono::steady_clock::now();
  config.validate();
  if (train.rows.empty()) throw DataError("training dataset is empty");
  if (!test.rows.empty() && test.feature_dim() != train.feature_dim()) {
    throw DimensionError("test points have " + std::to_string(test.feature_dim()) +
                         " features, training data " + std::to_string(train.feature_dim()));
  }
  const Prepared p = prepare(config, train);

  json results;
  results["schema_version"] = kSchemaVersion;
  results["config"] = config.to_json();
  results["seed"] = config.seed;
  results["dataset"] = {{"train_rows", train.rows.size()},
                        {"test_rows", test.rows.size()},
                        {"feature_dim", train.feature_dim()}};
  if (p.model) {
    std::vector<double> a(p.model->multipliers.data(),
                          p.model->multipliers.data() + p.model->multipliers.size());
    results["svm"] = {{"kernel", kernel_json(p.model->kernel)},
                      {"multipliers", a},
                      {"bias", p.model->bias},
                      {"support", p.model->support},
                      {"iterations", p.model->iterations},
                      {"converged", p.model->converged}};
    const PsdCertificate cert = psd_certify(*p.gram);
    results["gram"] = {{"size", p.gram->matrix.rows()},
                       {"min_eigenvalue", p.gram->min_eigenvalue},
                       {"max_eigenvalue", p.gram->eigenvalues.maxCoeff()},
                       {"certified", cert.certified}};
  }

  json predictions = json::array();
  std::size_t correct = 0;
  for (std::size_t i = 0; i < test.rows.size(); ++i) {
    const ClassifierOutput out = classify_point(config, p, test.rows[i].features);
    json row;
    row["index"] = i;
    row["expectation"] = out.expectation;
    row["prediction"] = qkc::to_string(out.predicted);
    row["label"] = label_json(out.predicted, config.tie_as_zero);
    row["true_label"] = to_int(test.rows[i].label);
    json terms = json::array();
    for (const auto& t : out.per_term) {
      terms.push_back({{"m", p.rows[t.m]}, {"contribution", t.contribution}});
    }
    row["per_term"] = terms;
    row["bias_term"] = out.bias_term;
    if (config.shots > 0) {
      // Every observable here has outcomes +-1, so Pr[+1] = (1 + <O>) / 2.
      const double plus = std::clamp(0.5 * (1.0 + out.expectation), 0.0, 1.0);
      const OutcomeProbabilities prob{plus, 1.0 - plus};
      const std::uint64_t seed = config.seed + i;
      ShotRng rng(seed);
      std::uint64_t n_plus = 0;
      for (std::uint64_t s = 0; s < config.shots; ++s) n_plus += draw_outcome(prob, rng) == 1;
      row["shots"] = {{"shots", config.shots},
                      {"seed", seed},
                      {"plus", n_plus},
                      {"minus", config.shots - n_plus},
                      {"frequency_plus", static_cast<double>(n_plus) / static_cast<double>(config.shots)}};
    }
    const json& label = row["label"];
    if (label.is_number() && label.get<int>() == to_int(test.rows[i].label)) ++correct;
    predictions.push_back(std::move(row));
  }
  results["predictions"] = std::move(predictions);
  results["accuracy"] = test.rows.empty() ? 0.0 : static_cast<double>(correct) / static_cast<double>(test.rows.size());
  results["wall_clock_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return results;
}

json gram_report(const KernelSpec& spec, const Dataset& data) {
  if (data.rows.empty()) throw DataError("dataset is empty");
  std::vector<KernelInput> inputs;
  for (const auto& r : data.rows) {
    const QState s = amplitude_encode(r.features);
    if (spec.kind == KernelKind::hs_trace) {
      inputs.emplace_back(DensityMatrix::pure(s));
    } else {
      inputs.emplace_back(s);
    }
  }
  const GramMatrix g = gram(spec, inputs);
  const PsdCertificate cert = psd_certify(g);
  json matrix = json::array();
  for (Eigen::Index i = 0; i < g.matrix.rows(); ++i) {
    std::vector<double> row(static_cast<std::size_t>(g.matrix.cols()));
    for (Eigen::Index j = 0; j < g.matrix.cols(); ++j) row[static_cast<std::size_t>(j)] = g.matrix(i, j);
    matrix.push_back(row);
  }
  json r;
  r["schema_version"] = kSchemaVersion;
  r["kernel"] = kernel_json(spec);
  r["size"] = g.matrix.rows();
  r["matrix"] = matrix;
  r["eigenvalues"] = std::vector<double>(g.eigenvalues.data(), g.eigenvalues.data() + g.eigenvalues.size());
  r["min_eigenvalue"] = g.min_eigenvalue;
  r["certified"] = cert.certified;
  r["threshold"] = cert.threshold;
  return r;
}

std::string plot_csv(const json& results) {
  std::ostringstream out;
  out << "index,expectation,label,shot_frequency_plus\n";
  if (!results.contains("predictions")) return out.str();
  for (const auto& p : results["predictions"]) {
    out << p.at("index").get<std::size_t>() << ',' << format_double(p.at("expectation").get<double>()) << ',';
    const auto& label = p.at("label");
    out << (label.is_string() ? label.get<std::string>() : std::to_string(label.get<int>())) << ',';
    if (p.contains("shots")) out << format_double(p["shots"].at("frequency_plus").get<double>());
    out << '\n';
  }
  return out.str();
}

std::uint64_t default_seed() {
  const char* env = std::getenv("QKC_SEED");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == nullptr || *end != '\0') return 0;
  return v;
}

ToyKind toy_from_string(const std::string& s) {
  if (s == "orthogonal") return ToyKind::orthogonal;
  if (s == "separable") return ToyKind::separable;
  if (s == "random") return ToyKind::random;
  throw DataError("unknown toy set '" + s + "'");
}

Dataset generate_toy(ToyKind kind, std::size_t count, std::size_t dim, std::uint64_t seed) {
  if (dim < 2) throw DataError("toy data need at least 2 features");
  if (count == 0) throw DataError("toy data need at least one point");
  std::mt19937_64 rng(seed);
  Dataset d;
  const auto n = static_cast<Eigen::Index>(dim);
  switch (kind) {
    case ToyKind::orthogonal:
      for (std::size_t i = 0; i < count; ++i) {
        for (int y = 0; y < 2; ++y) {
          CVec x = CVec::Zero(n);
          x(y) = 1.0;
          d.rows.push_back({x, label_from_int(y), std::nullopt});
        }
      }
      break;
    case ToyKind::separable:
      for (std::size_t i = 0; i < count; ++i) {
        for (int y = 0; y < 2; ++y) {
          const double t = 0.6 * uniform01(rng) - 0.3;
          CVec x = CVec::Zero(n);
          x(y) = std::cos(t);
          x(1 - y) = std::sin(t);
          d.rows.push_back({x, label_from_int(y), std::nullopt});
        }
      }
      break;
    case ToyKind::random:
      for (std::size_t i = 0; i < count; ++i) {
        CVec x(n);
        for (auto& z : x) z = Complex(normal01(rng), normal01(rng));
        d.rows.push_back({x, label_from_int(static_cast<long long>(rng() >> 63)), std::nullopt});
      }
      break;
  }
  return d;
}

}  // namespace qkc::cli
