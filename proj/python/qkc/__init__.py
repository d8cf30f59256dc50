# Copyright 2026 The qkc Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Exact simulator for quantum kernel binary classifiers."""

from ._qkc import (
    ClassifierOutput,
    DataError,
    DimensionError,
    Error,
    NumericError,
    SvmModel,
    TrainingSet,
    amplitude_encode,
    build_o,
    fidelity,
    gram,
    hadamard_classify,
    hs_inner,
    misclassification_probability,
    psd_certify,
    qsvm_oracle_classify,
    stc_classify,
    stc_classify_bias,
    stc_classify_mixed,
    svm_train,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
