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

// qkc: command-line front end for the classifiers.
//
// Exit codes: 0 success, 2 usage, 3 data, 4 numeric or dimension failure.
// Failures print {"error": {"type", "message"}} on stderr and write no files.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qkc/cli/dataset.hpp"
#include "qkc/cli/experiment.hpp"
#include "qkc/error.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace qkc;
using namespace qkc::cli;

int fail(const std::string& type, const std::string& message, int code) {
  json err;
  err["error"] = {{"type", type}, {"message", message}};
  std::cerr << err.dump() << '\n';
  return code;
}

void emit(const std::string& text, const std::string& output) {
  if (output.empty()) {
    std::cout << text;
  } else {
    write_file_atomic(output, text);
  }
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact simulator for quantum kernel binary classifiers"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML configuration file");

  std::string train_path, test_path, format_name, output, plot_path;
  std::string classifier = "stc", mode = "analytic", weights = "uniform", bias = "none";
  std::string normalization = "unit";
  std::vector<double> weight_values;
  double bias_value = 0.0;
  int copies = 1;
  std::uint64_t shots = 0, seed = 0;
  bool tie_as_zero = false;
  double svm_c = SvmOptions{}.c;

  app.add_option("--train", train_path, "Training dataset (CSV or JSON)");
  app.add_option("--test", test_path, "Test dataset; defaults to the training set");
  app.add_option("--format", format_name, "Dataset format: csv or json (default: from extension)");
  app.add_option("--classifier", classifier, "stc, hadamard or qsvm")
      ->check(CLI::IsMember({"stc", "hadamard", "qsvm"}));
  app.add_option("--mode", mode, "Swap-test evaluation: analytic, circuit or minimal")
      ->check(CLI::IsMember({"analytic", "circuit", "minimal"}));
  app.add_option("--copies", copies, "Copies k of every state")->check(CLI::PositiveNumber);
  app.add_option("--weights", weights, "uniform, trained or explicit")
      ->check(CLI::IsMember({"uniform", "trained", "explicit"}));
  app.add_option("--weight-values", weight_values, "Explicit weights, one per training row")
      ->delimiter(',');
  app.add_option("--bias", bias, "none, explicit or trained")
      ->check(CLI::IsMember({"none", "explicit", "trained"}));
  app.add_option("--bias-value", bias_value, "Bias for --bias explicit");
  app.add_option("--normalization", normalization, "unit or keep-norms")
      ->check(CLI::IsMember({"unit", "keep-norms"}));
  app.add_option("--shots", shots, "Sampled measurements per test point");
  auto* seed_opt = app.add_option("--seed", seed, "RNG seed (default: QKC_SEED or 0)");
  app.add_flag("--tie-as-zero", tie_as_zero, "Report ties as label 0");
  app.add_option("--svm-c", svm_c, "SVM box constraint C")->check(CLI::PositiveNumber);
  app.add_option("--output", output, "Output file (default: stdout)");
  app.add_option("--plot", plot_path, "Also write the plot CSV here");

  auto* classify = app.add_subcommand("classify", "Classify every test point");
  auto* train_svm = app.add_subcommand("train-svm", "Train SVM weights and bias, then classify");
  auto* sample = app.add_subcommand("sample", "Classify with sampled measurements");

  auto* gram_cmd = app.add_subcommand("gram", "Gram matrix and PSD check of a dataset");
  std::string kernel = "squared-overlap";
  gram_cmd->add_option("--kernel", kernel, "squared-overlap, hs-trace or real-overlap")
      ->check(CLI::IsMember({"squared-overlap", "hs-trace", "real-overlap"}));

  auto* toy = app.add_subcommand("gen-toy", "Write a seeded toy dataset");
  std::string toy_kind = "orthogonal";
  std::size_t count = 1, dim = 2;
  toy->add_option("--kind", toy_kind, "orthogonal, separable or random")
      ->check(CLI::IsMember({"orthogonal", "separable", "random"}));
  toy->add_option("--count", count, "Points (per class for orthogonal and separable)");
  toy->add_option("--dim", dim, "Feature dimension");

  auto* plot = app.add_subcommand("emit-plot", "Plot CSV from a results file");
  std::string results_path;
  plot->add_option("--results", results_path, "Results JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what(), 2);
  }

  try {
    if (seed_opt->count() == 0) seed = default_seed();

    if (*plot) {
      const json results = json::parse(read_text(results_path), nullptr, false);
      if (results.is_discarded()) throw DataError("'" + results_path + "' is not valid JSON");
      emit(plot_csv(results), output);
      return 0;
    }

    if (*toy) {
      const Dataset d = generate_toy(toy_from_string(toy_kind), count, dim, seed);
      DatasetFormat f = DatasetFormat::csv;
      if (!format_name.empty()) {
        f = format_from_string(format_name);
      } else if (!output.empty()) {
        f = format_for(output);
      }
      std::string text;
      if (f == DatasetFormat::json) {
        text = to_json_text(d);
      } else {
        std::ostringstream s;
        write_csv(d, s);
        text = s.str();
      }
      emit(text, output);
      return 0;
    }

    if (train_path.empty()) return fail("usage", "--train is required", 2);
    std::optional<DatasetFormat> fmt;
    if (!format_name.empty()) fmt = format_from_string(format_name);
    const Dataset train = ingest(train_path, fmt);

    if (*gram_cmd) {
      const KernelSpec spec{kernel_kind_from_string(kernel), copies};
      emit(gram_report(spec, train).dump(2) + "\n", output);
      return 0;
    }

    const Dataset test = test_path.empty() ? train : ingest(test_path, fmt);
    ExperimentConfig cfg;
    cfg.classifier = classifier_from_string(classifier);
    cfg.mode = mode_from_string(mode);
    cfg.copies = copies;
    cfg.weights = weights_from_string(weights);
    cfg.weight_values = weight_values;
    cfg.bias = bias_from_string(bias);
    cfg.bias_value = bias_value;
    cfg.normalization = normalization_from_string(normalization);
    cfg.shots = shots;
    cfg.seed = seed;
    cfg.tie_as_zero = tie_as_zero;
    cfg.svm.c = svm_c;
    std::string command = "classify";
    if (*train_svm) {
      command = "train-svm";
      cfg.weights = WeightsMode::trained;
      cfg.bias = BiasMode::trained;
    } else if (*sample) {
      command = "sample";
      if (cfg.shots == 0) cfg.shots = 1000;
    }
    (void)classify;

    json results;
    results["command"] = command;
    results.update(run_experiment(cfg, train, test));
    const std::string text = results.dump(2) + "\n";
    // Both outputs are rendered before anything is written.
    const std::string plot_text = plot_path.empty() ? std::string() : plot_csv(results);
    emit(text, output);
    if (!plot_path.empty()) write_file_atomic(plot_path, plot_text);
    return 0;
  } catch (const DataError& e) {
    return fail("data", e.what(), 3);
  } catch (const DimensionError& e) {
    return fail("dimension", e.what(), 4);
  } catch (const NumericError& e) {
    return fail("numeric", e.what(), 4);
  } catch (const Error& e) {
    return fail("error", e.what(), 3);
  } catch (const std::exception& e) {
    return fail("data", e.what(), 3);
  }
}
