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
 * Experiment configuration and the batch runner behind the qkc tool.
 *
 * Results are JSON objects with a `schema_version` field. Apart from
 * `wall_clock_seconds`, identical inputs produce byte-identical output.
 *
 * Plot CSV columns, in this order: index, expectation, label,
 * shot_frequency_plus (empty when no shots were taken).
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qkc/classifier.hpp"
#include "qkc/cli/dataset.hpp"
#include "qkc/kernelsvm.hpp"

namespace qkc::cli {

inline constexpr int kSchemaVersion = 1;

enum class ClassifierKind { stc, hadamard, qsvm };
enum class WeightsMode { uniform, trained, explicit_values };
enum class BiasMode { none, explicit_value, trained };

struct ExperimentConfig {
  ClassifierKind classifier = ClassifierKind::stc;
  StcMode mode = StcMode::analytic;
  int copies = 1;
  WeightsMode weights = WeightsMode::uniform;
  /// Explicit weights; empty means the dataset's weight column.
  std::vector<double> weight_values;
  BiasMode bias = BiasMode::none;
  double bias_value = 0.0;
  Normalization normalization = Normalization::unit_vectors;
  /// 0 means exact expectations only.
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  bool tie_as_zero = false;
  SvmOptions svm;

  void validate() const;
  nlohmann::ordered_json to_json() const;
};

ClassifierKind classifier_from_string(const std::string& s);
std::string to_string(ClassifierKind k);
StcMode mode_from_string(const std::string& s);
WeightsMode weights_from_string(const std::string& s);
std::string to_string(WeightsMode m);
BiasMode bias_from_string(const std::string& s);
std::string to_string(BiasMode m);
Normalization normalization_from_string(const std::string& s);
std::string to_string(Normalization n);

/// Runs the configured classifier on every test point.
nlohmann::ordered_json run_experiment(const ExperimentConfig& config, const Dataset& train,
                                      const Dataset& test);

/// Gram matrix report for a dataset.
nlohmann::ordered_json gram_report(const KernelSpec& spec, const Dataset& data);

std::string plot_csv(const nlohmann::ordered_json& results);

/// Seed default: QKC_SEED when set and valid, otherwise 0.
std::uint64_t default_seed();

enum class ToyKind { orthogonal, separable, random };
ToyKind toy_from_string(const std::string& s);

/// Seeded toy datasets. orthogonal: the basis states |0> (label 0) and |1>
/// (label 1) of dimension dim; separable: count points per class tilted
/// around those two states; random: count complex points with random labels.
Dataset generate_toy(ToyKind kind, std::size_t count, std::size_t dim, std::uint64_t seed);

}  // namespace qkc::cli
