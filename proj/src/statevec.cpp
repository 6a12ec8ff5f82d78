// Copyright 2026 The bmattack Authors
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

#include "bmattack/statevec.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "bmattack/errors.hpp"

namespace bmattack {

void RegisterLayout::validate(unsigned cap) const {
  if (domain_qubits < 1 || bit_qubits < 1) {
    throw ParameterError("register layout needs at least one domain and one bit qubit");
  }
  if (total() > cap) {
    throw ResourceError("layout needs " + std::to_string(total()) + " qubits, cap is " +
                        std::to_string(cap));
  }
}

StateVector::StateVector(RegisterLayout layout, std::vector<Amplitude> amplitudes)
    : layout_(layout), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != layout_.dimension()) {
    throw ParameterError("amplitude count " + std::to_string(amplitudes_.size()) +
                         " does not match layout dimension " +
                         std::to_string(layout_.dimension()));
  }
}

double StateVector::norm_squared() const {
  double total = 0.0;
  for (const auto& a : amplitudes_) total += std::norm(a);
  return total;
}

StateVector init_state(const RegisterLayout& layout, unsigned cap) {
  layout.validate(cap);
  std::vector<Amplitude> amps(layout.dimension());
  amps[layout.index(0, 0, 1)] = 1.0;
  return StateVector(layout, std::move(amps));
}

namespace {

void hadamard_on_bit(std::span<Amplitude> amps, std::size_t mask) {
  static const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (i & mask) continue;
    const Amplitude a0 = amps[i];
    const Amplitude a1 = amps[i | mask];
    amps[i] = (a0 + a1) * kInvSqrt2;
    amps[i | mask] = (a0 - a1) * kInvSqrt2;
  }
}

bool is_bijection(std::span<const Encoding> table) {
  std::vector<bool> seen(table.size(), false);
  for (const auto y : table) {
    if (y >= table.size() || seen[y]) return false;
    seen[y] = true;
  }
  return true;
}

std::uint64_t pattern_value(const RegisterLayout& layout, std::span<const Bit> pattern) {
  if (pattern.size() != layout.bit_qubits) {
    throw ParameterError("bit pattern has length " + std::to_string(pattern.size()) +
                         ", bit register has " + std::to_string(layout.bit_qubits) + " qubits");
  }
  std::uint64_t value = 0;
  for (const Bit b : pattern) value = (value << 1) | (b & 1U);
  return value;
}

}  // namespace

void apply_hadamard_layer(StateVector& state, RegisterSet target) {
  if (target.contains(Register::kBits)) {
    throw ParameterError("the bit register is never a Hadamard target");
  }
  const auto& layout = state.layout();
  auto amps = state.amplitudes();
  if (target.contains(Register::kAncilla)) hadamard_on_bit(amps, 1);
  if (target.contains(Register::kDomain)) {
    for (unsigned q = 0; q < layout.domain_qubits; ++q) {
      hadamard_on_bit(amps, std::size_t{1} << (layout.bit_qubits + 1 + q));
    }
  }
}

void apply_permutation_gate(StateVector& state, std::span<const Encoding> table) {
  const auto& layout = state.layout();
  if (table.size() != layout.domain_size() || !is_bijection(table)) {
    throw ParameterError("permutation gate table is not a bijection on the domain register");
  }
  const std::size_t block = std::size_t{1} << (layout.bit_qubits + 1);
  const auto amps = state.amplitudes();
  std::vector<Amplitude> out(amps.size());
  for (std::size_t x = 0; x < table.size(); ++x) {
    const std::size_t src = x * block;
    const std::size_t dst = static_cast<std::size_t>(table[x]) * block;
    for (std::size_t r = 0; r < block; ++r) out[dst + r] = amps[src + r];
  }
  std::copy(out.begin(), out.end(), amps.begin());
}

void apply_predicate_flip(StateVector& state, const std::vector<bool>& marked, unsigned step) {
  const auto& layout = state.layout();
  if (step < 1 || step > layout.bit_qubits) {
    throw ParameterError("predicate flip step " + std::to_string(step) + " outside [1, " +
                         std::to_string(layout.bit_qubits) + "]");
  }
  if (marked.size() != layout.domain_size()) {
    throw ParameterError("marked set must cover the whole domain register");
  }
  const std::size_t mask = layout.step_mask(step);
  auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if ((i & mask) || !marked[layout.domain_of(i)]) continue;
    std::swap(amps[i], amps[i | mask]);
  }
}

void apply_phase_oracle(StateVector& state, std::span<const Bit> pattern) {
  const auto& layout = state.layout();
  const auto good = pattern_value(layout, pattern);
  auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (layout.bits_of(i) == good) amps[i] = -amps[i];
  }
}

void apply_ancilla_oracle(StateVector& state, std::span<const Bit> pattern) {
  const auto& layout = state.layout();
  const auto good = pattern_value(layout, pattern);
  auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); i += 2) {
    if (layout.bits_of(i) == good) std::swap(amps[i], amps[i + 1]);
  }
}

void reflect_about_basis_state(StateVector& state, std::size_t basis_index) {
  auto amps = state.amplitudes();
  if (basis_index >= amps.size()) throw ParameterError("basis index out of range");
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (i != basis_index) amps[i] = -amps[i];
  }
}

PermutationGate make_permutation_gate(std::span<const Encoding> table) {
  if (!is_bijection(table)) throw ParameterError("permutation gate table is not a bijection");
  PermutationGate gate{{table.begin(), table.end()}, std::vector<Encoding>(table.size())};
  for (std::size_t x = 0; x < table.size(); ++x) gate.inverse[table[x]] = static_cast<Encoding>(x);
  return gate;
}

void apply_gate(StateVector& state, const Gate& gate) {
  std::visit(
      [&state](const auto& g) {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, HadamardGate>) {
          apply_hadamard_layer(state, g.target);
        } else if constexpr (std::is_same_v<T, PermutationGate>) {
          apply_permutation_gate(state, g.table);
        } else {
          apply_predicate_flip(state, g.marked, g.step);
        }
      },
      gate);
}

void apply_gate_inverse(StateVector& state, const Gate& gate) {
  // H and the controlled flips are involutions.
  if (const auto* perm = std::get_if<PermutationGate>(&gate)) {
    apply_permutation_gate(state, perm->inverse);
  } else {
    apply_gate(state, gate);
  }
}

void Circuit::apply(StateVector& state) const {
  for (const auto& gate : gates_) apply_gate(state, gate);
}

void Circuit::apply_inverse(StateVector& state) const {
  for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) apply_gate_inverse(state, *it);
}

void grover_iterate(StateVector& state, const Circuit& prepare, std::span<const Bit> good_bits,
                    long k) {
  if (k < 0) throw ParameterError("Grover iteration count must be >= 0");
  const auto& layout = state.layout();
  pattern_value(layout, good_bits);
  const std::size_t origin = layout.index(0, 0, 1);
  for (long round = 0; round < k; ++round) {
    apply_phase_oracle(state, good_bits);
    prepare.apply_inverse(state);
    reflect_about_basis_state(state, origin);
    prepare.apply(state);
  }
}

double subspace_probability(const StateVector& state, std::span<const Bit> pattern) {
  const auto& layout = state.layout();
  const auto good = pattern_value(layout, pattern);
  double total = 0.0;
  const auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (layout.bits_of(i) == good) total += std::norm(amps[i]);
  }
  return total;
}

namespace {

std::uint64_t register_value(const RegisterLayout& layout, std::size_t index, Register reg) {
  switch (reg) {
    case Register::kDomain:
      return layout.domain_of(index);
    case Register::kBits:
      return layout.bits_of(index);
    case Register::kAncilla:
      return layout.ancilla_of(index);
  }
  return 0;
}

}  // namespace

std::map<std::uint64_t, double> measure_register_distribution(const StateVector& state,
                                                              Register reg) {
  std::map<std::uint64_t, double> dist;
  const auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const double p = std::norm(amps[i]);
    if (p == 0.0) continue;
    dist[register_value(state.layout(), i, reg)] += p;
  }
  return dist;
}

std::uint64_t sample_measurement(const StateVector& state, Register reg, std::uint64_t rng_seed) {
  const auto dist = measure_register_distribution(state, reg);
  if (dist.empty()) throw ParameterError("cannot sample from a zero state");
  double total = 0.0;
  for (const auto& [outcome, p] : dist) total += p;
  std::mt19937_64 rng(rng_seed);
  // 53 random mantissa bits; avoids library-specific canonical generation.
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * total;
  double acc = 0.0;
  for (const auto& [outcome, p] : dist) {
    acc += p;
    if (u < acc) return outcome;
  }
  return dist.rbegin()->first;
}

GateMatrix::GateMatrix(std::size_t dimension)
    : dimension_(dimension), entries_(dimension * dimension) {}

GateMatrix GateMatrix::identity(std::size_t dimension) {
  GateMatrix m(dimension);
  for (std::size_t i = 0; i < dimension; ++i) m(i, i) = 1.0;
  return m;
}

GateMatrix GateMatrix::adjoint() const {
  GateMatrix out(dimension_);
  for (std::size_t r = 0; r < dimension_; ++r) {
    for (std::size_t c = 0; c < dimension_; ++c) out(c, r) = std::conj((*this)(r, c));
  }
  return out;
}

GateMatrix GateMatrix::transpose() const {
  GateMatrix out(dimension_);
  for (std::size_t r = 0; r < dimension_; ++r) {
    for (std::size_t c = 0; c < dimension_; ++c) out(c, r) = (*this)(r, c);
  }
  return out;
}

GateMatrix GateMatrix::operator*(const GateMatrix& rhs) const {
  if (rhs.dimension_ != dimension_) throw ParameterError("matrix dimension mismatch");
  GateMatrix out(dimension_);
  for (std::size_t r = 0; r < dimension_; ++r) {
    for (std::size_t k = 0; k < dimension_; ++k) {
      const Amplitude a = (*this)(r, k);
      if (a == Amplitude{}) continue;
      for (std::size_t c = 0; c < dimension_; ++c) out(r, c) += a * rhs(k, c);
    }
  }
  return out;
}

std::vector<Amplitude> GateMatrix::apply(std::span<const Amplitude> vec) const {
  if (vec.size() != dimension_) throw ParameterError("vector dimension mismatch");
  std::vector<Amplitude> out(dimension_);
  for (std::size_t r = 0; r < dimension_; ++r) {
    for (std::size_t c = 0; c < dimension_; ++c) out[r] += (*this)(r, c) * vec[c];
  }
  return out;
}

double GateMatrix::unitarity_deviation() const {
  return ((*this) * adjoint()).max_abs_difference(identity(dimension_));
}

double GateMatrix::max_abs_difference(const GateMatrix& other) const {
  if (other.dimension_ != dimension_) throw ParameterError("matrix dimension mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    worst = std::max(worst, std::abs(entries_[i] - other.entries_[i]));
  }
  return worst;
}

GateMatrix kron(const GateMatrix& lhs, const GateMatrix& rhs) {
  const std::size_t d = rhs.dimension();
  GateMatrix out(lhs.dimension() * d);
  for (std::size_t r1 = 0; r1 < lhs.dimension(); ++r1) {
    for (std::size_t c1 = 0; c1 < lhs.dimension(); ++c1) {
      const Amplitude a = lhs(r1, c1);
      if (a == Amplitude{}) continue;
      for (std::size_t r2 = 0; r2 < d; ++r2) {
        for (std::size_t c2 = 0; c2 < d; ++c2) out(r1 * d + r2, c1 * d + c2) = a * rhs(r2, c2);
      }
    }
  }
  return out;
}

GateMatrix gate_matrix_from_table(std::span<const Encoding> table, MatrixConvention convention) {
  if (!is_bijection(table)) throw ParameterError("gate table is not a bijection");
  GateMatrix m(table.size());
  for (std::size_t x = 0; x < table.size(); ++x) {
    if (convention == MatrixConvention::kOperator) {
      m(table[x], x) = 1.0;
    } else {
      m(x, table[x]) = 1.0;
    }
  }
  return m;
}

GateMatrix gate_matrix_from_predicate(const std::vector<bool>& marked) {
  GateMatrix m(2 * marked.size());
  for (std::size_t x = 0; x < marked.size(); ++x) {
    if (marked[x]) {
      m(2 * x, 2 * x + 1) = 1.0;
      m(2 * x + 1, 2 * x) = 1.0;
    } else {
      m(2 * x, 2 * x) = 1.0;
      m(2 * x + 1, 2 * x + 1) = 1.0;
    }
  }
  return m;
}

}  // namespace bmattack
