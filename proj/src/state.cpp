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

#include "qkc/state.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qkc/error.hpp"

namespace qkc {

std::string to_string(Role role) {
  switch (role) {
    case Role::ancilla: return "ancilla";
    case Role::test: return "test";
    case Role::train: return "train";
    case Role::label: return "label";
    case Role::index: return "index";
    case Role::data: return "data";
  }
  return "unknown";
}

Layout::Layout(std::vector<Register> registers) : regs_(std::move(registers)) {
  if (regs_.empty()) {
    throw DimensionError("layout needs at least one register");
  }
  std::size_t total = 1;
  for (const auto& r : regs_) {
    if (r.dim == 0) {
      throw DimensionError("register of dimension 0");
    }
    if (total > kMaxDim / r.dim) {
      throw DimensionError("layout dimension exceeds the cap of " + std::to_string(kMaxDim));
    }
    total *= r.dim;
  }
  for (std::size_t i = 0; i < regs_.size(); ++i) {
    for (std::size_t j = i + 1; j < regs_.size(); ++j) {
      if (regs_[i].role == regs_[j].role && regs_[i].copy == regs_[j].copy) {
        throw DimensionError("duplicate register " + to_string(regs_[i].role));
      }
    }
  }
}

std::size_t Layout::total_dim() const {
  std::size_t total = 1;
  for (const auto& r : regs_) {
    total *= r.dim;
  }
  return total;
}

std::vector<std::size_t> Layout::dims() const {
  std::vector<std::size_t> d;
  d.reserve(regs_.size());
  for (const auto& r : regs_) {
    d.push_back(r.dim);
  }
  return d;
}

std::vector<std::size_t> Layout::strides() const {
  std::vector<std::size_t> s(regs_.size());
  std::size_t stride = 1;
  for (std::size_t i = regs_.size(); i-- > 0;) {
    s[i] = stride;
    stride *= regs_[i].dim;
  }
  return s;
}

std::optional<std::size_t> Layout::find(Role role, std::size_t copy) const {
  for (std::size_t i = 0; i < regs_.size(); ++i) {
    if (regs_[i].role == role && regs_[i].copy == copy) {
      return i;
    }
  }
  return std::nullopt;
}

std::size_t Layout::require(Role role, std::size_t copy) const {
  if (auto p = find(role, copy)) {
    return *p;
  }
  throw DimensionError("layout has no " + to_string(role) + " register (copy " +
                       std::to_string(copy) + ")");
}

std::size_t Layout::count(Role role) const {
  return static_cast<std::size_t>(
      std::count_if(regs_.begin(), regs_.end(), [role](const Register& r) { return r.role == role; }));
}

std::string Layout::describe() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < regs_.size(); ++i) {
    if (i) out << ' ';
    out << to_string(regs_[i].role);
    if (regs_[i].role == Role::test || regs_[i].role == Role::train) {
      out << regs_[i].copy;
    }
    out << ':' << regs_[i].dim;
  }
  return out.str();
}

// ---------------------------------------------------------------------------

ClassifierState ClassifierState::pure(Layout layout, CVec vec) {
  if (static_cast<std::size_t>(vec.size()) != layout.total_dim()) {
    throw DimensionError("state vector does not match layout " + layout.describe());
  }
  if (std::abs(vec.norm() - 1.0) > kStructuralTol) {
    throw DataError("joint state is not normalized");
  }
  return ClassifierState(std::move(layout), std::move(vec));
}

ClassifierState ClassifierState::mixed(Layout layout, DensityMatrix rho) {
  if (rho.dim() != layout.total_dim()) {
    throw DimensionError("density matrix does not match layout " + layout.describe());
  }
  return ClassifierState(std::move(layout), std::move(rho));
}

const CVec& ClassifierState::vector() const {
  if (const auto* v = std::get_if<CVec>(&data_)) {
    return *v;
  }
  throw DataError("state is mixed; no state vector");
}

const DensityMatrix& ClassifierState::density() const {
  if (const auto* d = std::get_if<DensityMatrix>(&data_)) {
    return *d;
  }
  throw DataError("state is pure; use to_density()");
}

DensityMatrix ClassifierState::to_density() const {
  if (const auto* v = std::get_if<CVec>(&data_)) {
    return DensityMatrix::pure(*v);
  }
  return std::get<DensityMatrix>(data_);
}

// ---------------------------------------------------------------------------

Layout permute_layout(const Layout& from, std::span<const std::size_t> order) {
  if (order.size() != from.size()) {
    throw DimensionError("register order has the wrong length");
  }
  std::vector<bool> seen(from.size(), false);
  std::vector<Register> regs;
  regs.reserve(order.size());
  for (std::size_t o : order) {
    if (o >= from.size() || seen[o]) {
      throw DimensionError("register order is not a permutation");
    }
    seen[o] = true;
    regs.push_back(from[o]);
  }
  return Layout(std::move(regs));
}

std::vector<std::size_t> register_permutation(const Layout& from,
                                              std::span<const std::size_t> order) {
  const Layout to = permute_layout(from, order);
  const auto old_strides = from.strides();
  const auto new_strides = to.strides();
  const std::size_t total = from.total_dim();
  std::vector<std::size_t> map(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t mapped = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      const std::size_t r = order[i];
      const std::size_t digit = (idx / old_strides[r]) % from[r].dim;
      mapped += digit * new_strides[i];
    }
    map[idx] = mapped;
  }
  return map;
}

ClassifierState permute_registers(const ClassifierState& state,
                                  std::span<const std::size_t> order) {
  const auto map = register_permutation(state.layout(), order);
  Layout to = permute_layout(state.layout(), order);
  const auto n = static_cast<Eigen::Index>(map.size());
  if (state.is_pure()) {
    const CVec& v = state.vector();
    CVec out(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      out(static_cast<Eigen::Index>(map[static_cast<std::size_t>(i)])) = v(i);
    }
    return ClassifierState::pure(std::move(to), std::move(out));
  }
  const CMat& m = state.density().matrix();
  CMat out(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto mj = static_cast<Eigen::Index>(map[static_cast<std::size_t>(j)]);
    for (Eigen::Index i = 0; i < n; ++i) {
      out(static_cast<Eigen::Index>(map[static_cast<std::size_t>(i)]), mj) = m(i, j);
    }
  }
  return ClassifierState::mixed(std::move(to), DensityMatrix(std::move(out), Validation::structural));
}

}  // namespace qkc
