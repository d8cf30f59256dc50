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

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qkc/qmath.hpp"

namespace qkc {

/// What a register holds in a joint classifier state.
enum class Role {
  ancilla,
  test,   // one copy of the test datum (swap-test classifier)
  train,  // one copy of a training datum (swap-test classifier)
  label,
  index,
  data,   // shared data register of the Hadamard and qSVM classifiers
};

std::string to_string(Role role);

struct Register {
  Role role;
  /// Copy number for test/train registers, 0-based. Zero elsewhere.
  std::size_t copy = 0;
  std::size_t dim = 2;

  bool operator==(const Register&) const = default;
};

/// Ordered register descriptor, most significant register first.
class Layout {
 public:
  Layout() = default;
  explicit Layout(std::vector<Register> registers);

  std::size_t size() const { return regs_.size(); }
  const Register& operator[](std::size_t i) const { return regs_[i]; }
  auto begin() const { return regs_.begin(); }
  auto end() const { return regs_.end(); }

  std::size_t total_dim() const;
  std::vector<std::size_t> dims() const;
  /// Flat-index stride of every register.
  std::vector<std::size_t> strides() const;

  std::optional<std::size_t> find(Role role, std::size_t copy = 0) const;
  /// Like find() but throws DimensionError when absent.
  std::size_t require(Role role, std::size_t copy = 0) const;
  std::size_t count(Role role) const;

  /// Human readable form, e.g. "ancilla:2 test0:4 train0:4 label:2".
  std::string describe() const;

  bool operator==(const Layout&) const = default;

 private:
  std::vector<Register> regs_;
};

/// Joint state over a Layout. Stored as a state vector when the state is pure
/// (the indexed constructions) and as a density matrix otherwise.
class ClassifierState {
 public:
  static ClassifierState pure(Layout layout, CVec vec);
  static ClassifierState mixed(Layout layout, DensityMatrix rho);

  bool is_pure() const { return std::holds_alternative<CVec>(data_); }
  const Layout& layout() const { return layout_; }
  std::size_t dim() const { return layout_.total_dim(); }

  /// State vector; throws if the state is mixed.
  const CVec& vector() const;
  /// Density matrix; throws if the state is pure.
  const DensityMatrix& density() const;
  /// Density matrix in either case (materializes |psi><psi| for pure states).
  DensityMatrix to_density() const;

 private:
  ClassifierState(Layout layout, std::variant<CVec, DensityMatrix> data)
      : layout_(std::move(layout)), data_(std::move(data)) {}

  Layout layout_;
  std::variant<CVec, DensityMatrix> data_;
};

/// Flat-index map for reordering registers: the result r satisfies
/// new_index = r[old_index] when register order[i] of `from` becomes
/// register i of the output.
std::vector<std::size_t> register_permutation(const Layout& from,
                                              std::span<const std::size_t> order);

Layout permute_layout(const Layout& from, std::span<const std::size_t> order);

/// Reorders the registers of a state; order[i] names the old register that
/// lands at position i.
ClassifierState permute_registers(const ClassifierState& state,
                                  std::span<const std::size_t> order);

}  // namespace qkc
