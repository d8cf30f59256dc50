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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "qkc/circuit.hpp"
#include "qkc/classifier.hpp"
#include "qkc/encoding.hpp"
#include "qkc/error.hpp"
#include "qkc/kernelsvm.hpp"
#include "qkc/qmath.hpp"

namespace py = pybind11;
using namespace qkc;

namespace {

StcMode mode_from(const std::string& s) {
  if (s == "analytic") return StcMode::analytic;
  if (s == "circuit") return StcMode::ancilla_circuit;
  if (s == "minimal") return StcMode::minimal;
  throw DataError("unknown mode '" + s + "'");
}

Normalization normalization_from(const std::string& s) {
  if (s == "unit") return Normalization::unit_vectors;
  if (s == "keep-norms") return Normalization::keep_norms;
  throw DataError("unknown normalization '" + s + "'");
}

std::vector<Label> labels_from(const std::vector<int>& ys) {
  std::vector<Label> out;
  for (int y : ys) out.push_back(label_from_int(y));
  return out;
}

TrainingSet make_training_set(const std::vector<CVec>& features, const std::vector<int>& labels,
                              std::optional<std::vector<double>> weights, int copies,
                              std::optional<double> bias, const std::string& normalization) {
  if (features.size() != labels.size()) throw DataError("features and labels differ in length");
  if (weights && weights->size() != features.size()) throw DataError("weights and features differ in length");
  std::vector<RawDatum> data;
  for (std::size_t m = 0; m < features.size(); ++m) {
    data.push_back({features[m], label_from_int(labels[m]), weights ? (*weights)[m] : 1.0});
  }
  return TrainingSet(std::move(data), copies, bias, normalization_from(normalization));
}

MixedTrainingSet make_mixed_set(const std::vector<CMat>& rhos, const std::vector<int>& labels,
                                std::optional<std::vector<double>> weights, int copies) {
  if (rhos.size() != labels.size()) throw DataError("density matrices and labels differ in length");
  std::vector<MixedDatum> data;
  for (std::size_t m = 0; m < rhos.size(); ++m) {
    const double w = weights ? weights->at(m) : 1.0 / static_cast<double>(rhos.size());
    data.push_back({DensityMatrix(rhos[m]), label_from_int(labels[m]), w});
  }
  return MixedTrainingSet(std::move(data), copies);
}

}  // namespace

PYBIND11_MODULE(_qkc, m) {
  m.doc() = "Exact simulator for quantum kernel binary classifiers";

  auto error = py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<DataError>(m, "DataError", error.ptr());
  py::register_exception<DimensionError>(m, "DimensionError", error.ptr());
  py::register_exception<NumericError>(m, "NumericError", error.ptr());

  py::class_<ClassifierOutput>(m, "ClassifierOutput")
      .def_readonly("expectation", &ClassifierOutput::expectation)
      .def_property_readonly("predicted", [](const ClassifierOutput& o) { return to_string(o.predicted); })
      .def_property_readonly("per_term",
                             [](const ClassifierOutput& o) {
                               std::vector<std::pair<std::size_t, double>> t;
                               for (const auto& c : o.per_term) t.emplace_back(c.m, c.contribution);
                               return t;
                             })
      .def_readonly("bias_term", &ClassifierOutput::bias_term)
      .def("__repr__", [](const ClassifierOutput& o) {
        return "ClassifierOutput(expectation=" + std::to_string(o.expectation) + ", predicted='" +
               to_string(o.predicted) + "')";
      });

  py::class_<TrainingSet>(m, "TrainingSet")
      .def(py::init(&make_training_set), py::arg("features"), py::arg("labels"), py::arg("weights") = py::none(),
           py::arg("copies") = 1, py::arg("bias") = py::none(), py::arg("normalization") = "unit")
      .def("__len__", &TrainingSet::size)
      .def_property_readonly("copies", &TrainingSet::copies)
      .def_property_readonly("weights", &TrainingSet::weights)
      .def_property_readonly("bias", &TrainingSet::bias)
      .def_property_readonly("labels",
                             [](const TrainingSet& ts) {
                               std::vector<int> ys;
                               for (Label y : ts.labels()) ys.push_back(to_int(y));
                               return ys;
                             })
      .def("state", [](const TrainingSet& ts, std::size_t i) { return ts.state(i).vec(); });

  m.def("amplitude_encode", [](const CVec& x) { return amplitude_encode(x).vec(); }, py::arg("x"));

  m.def(
      "stc_classify",
      [](const TrainingSet& ts, const CVec& test, const std::string& mode) {
        return stc_classify(ts, amplitude_encode(test), mode_from(mode));
      },
      py::arg("training_set"), py::arg("test"), py::arg("mode") = "analytic",
      "Swap-test classifier; `test` holds raw features.");
  m.def(
      "stc_classify_bias",
      [](const TrainingSet& ts, const CVec& test, const std::string& mode) {
        return stc_classify_bias(ts, amplitude_encode(test), mode_from(mode));
      },
      py::arg("training_set"), py::arg("test"), py::arg("mode") = "analytic");
  m.def(
      "stc_classify_mixed",
      [](const std::vector<CMat>& rhos, const std::vector<int>& labels, const CMat& test,
         std::optional<std::vector<double>> weights, int copies, const std::string& mode) {
        return stc_classify(make_mixed_set(rhos, labels, weights, copies), DensityMatrix(test), mode_from(mode));
      },
      py::arg("train"), py::arg("labels"), py::arg("test"), py::arg("weights") = py::none(),
      py::arg("copies") = 1, py::arg("mode") = "analytic");
  m.def("hadamard_classify", &hadamard_classify, py::arg("training_set"), py::arg("test"),
        py::arg("with_bias") = false);
  m.def(
      "qsvm_oracle_classify",
      [](const std::vector<double>& alphas, double bias, const TrainingSet& ts, const CVec& test) {
        return qsvm_oracle_classify(alphas, bias, ts, test);
      },
      py::arg("alphas"), py::arg("bias"), py::arg("training_set"), py::arg("test"));
  m.def(
      "misclassification_probability",
      [](const std::vector<CMat>& rhos, const std::vector<int>& labels, double p0, const CMat& rho0,
         const CMat& rho1, std::optional<std::vector<double>> weights, int copies) {
        const TestMixture mix{p0, 1.0 - p0, DensityMatrix(rho0), DensityMatrix(rho1)};
        return misclassification_probability(make_mixed_set(rhos, labels, weights, copies), mix);
      },
      py::arg("train"), py::arg("labels"), py::arg("p0"), py::arg("rho0"), py::arg("rho1"),
      py::arg("weights") = py::none(), py::arg("copies") = 1);

  m.def("hs_inner", [](const CMat& a, const CMat& b) { return hs_inner(DensityMatrix(a), DensityMatrix(b)); });
  m.def("fidelity", [](const CMat& a, const CMat& b) { return fidelity(DensityMatrix(a), DensityMatrix(b)); });
  m.def(
      "build_o", [](int n, int k) { return build_o(n, k).matrix(); }, py::arg("n"), py::arg("k"),
      "Effective observable as a dense matrix, registers ordered test, train, label.");

  m.def(
      "gram",
      [](const std::vector<CMat>& inputs, const std::string& kind, int copies) {
        const KernelSpec spec{kernel_kind_from_string(kind), copies};
        std::vector<KernelInput> in;
        for (const CMat& x : inputs) {
          if (spec.kind == KernelKind::hs_trace) {
            in.emplace_back(DensityMatrix(x));
          } else {
            if (x.cols() != 1) throw DataError("state kernels take vectors");
            in.emplace_back(QState(x.col(0)));
          }
        }
        return gram(spec, in).matrix;
      },
      py::arg("inputs"), py::arg("kind") = "squared-overlap", py::arg("copies") = 1,
      "Gram matrix of normalized state vectors, or of density matrices for kind='hs-trace'.");
  m.def(
      "psd_certify",
      [](const RMat& g) {
        const PsdCertificate c = psd_certify(g);
        py::dict d;
        d["certified"] = c.certified;
        d["min_eigenvalue"] = c.min_eigenvalue;
        d["threshold"] = c.threshold;
        return d;
      },
      py::arg("gram"));

  py::class_<SvmModel>(m, "SvmModel")
      .def_readonly("multipliers", &SvmModel::multipliers)
      .def_readonly("bias", &SvmModel::bias)
      .def_readonly("support", &SvmModel::support)
      .def_readonly("iterations", &SvmModel::iterations)
      .def_readonly("converged", &SvmModel::converged)
      .def("signed_multipliers", &SvmModel::signed_multipliers)
      .def("regression_from_row", [](const SvmModel& model, const RVec& row) { return regression_from_row(model, row); })
      .def("to_training_set", [](const SvmModel& model, const std::vector<CVec>& states) {
        std::vector<QState> qs;
        for (const auto& s : states) qs.emplace_back(s);
        return to_training_set(model, qs);
      });
  m.def(
      "svm_train",
      [](const RMat& g, const std::vector<int>& labels, double c, double tol, std::size_t max_iter) {
        SvmOptions opt;
        opt.c = c;
        opt.tol = tol;
        opt.max_iter = max_iter;
        const auto ys = labels_from(labels);
        return svm_train(gram_from_matrix(g), ys, opt);
      },
      py::arg("gram"), py::arg("labels"), py::arg("c") = SvmOptions{}.c, py::arg("tol") = SvmOptions{}.tol,
      py::arg("max_iter") = SvmOptions{}.max_iter);
}
