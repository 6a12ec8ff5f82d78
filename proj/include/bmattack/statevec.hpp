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

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <variant>
#include <vector>

#include "bmattack/generators.hpp"

namespace bmattack {

using Amplitude = std::complex<double>;

inline constexpr unsigned kDefaultQubitCap = 24;
inline constexpr double kNormTolerance = 1e-10;

/// Domain register (n qubits), bit register (m qubits), one ancilla.
///
/// Basis index = (domain << (m + 1)) | (bits << 1) | ancilla. Qubit i of the
/// bit register (1-based, i = 1 printed leftmost) is bit m - i of `bits`.
struct RegisterLayout {
  unsigned domain_qubits = 0;
  unsigned bit_qubits = 0;

  static constexpr unsigned ancilla_qubits = 1;

  unsigned total() const { return domain_qubits + bit_qubits + ancilla_qubits; }
  std::size_t dimension() const { return std::size_t{1} << total(); }
  std::size_t domain_size() const { return std::size_t{1} << domain_qubits; }

  std::size_t index(std::uint64_t domain, std::uint64_t bits, unsigned ancilla) const {
    return (domain << (bit_qubits + 1)) | (bits << 1) | ancilla;
  }
  std::uint64_t domain_of(std::size_t index) const { return index >> (bit_qubits + 1); }
  std::uint64_t bits_of(std::size_t index) const {
    return (index >> 1) & ((std::uint64_t{1} << bit_qubits) - 1);
  }
  unsigned ancilla_of(std::size_t index) const { return static_cast<unsigned>(index & 1U); }
  /// Mask of bit-register qubit `step` (1-based) within a basis index.
  std::size_t step_mask(unsigned step) const { return std::size_t{1} << (bit_qubits - step + 1); }

  /// Throws ParameterError for empty registers, ResourceError above `cap`.
  void validate(unsigned cap = kDefaultQubitCap) const;
};

enum class Register : unsigned { kDomain = 1, kBits = 2, kAncilla = 4 };

/// Set of registers, e.g. `RegisterSet{Register::kDomain} | Register::kAncilla`.
class RegisterSet {
 public:
  constexpr RegisterSet() = default;
  constexpr RegisterSet(Register r) : mask_(static_cast<unsigned>(r)) {}  // NOLINT
  constexpr RegisterSet operator|(Register r) const {
    RegisterSet out = *this;
    out.mask_ |= static_cast<unsigned>(r);
    return out;
  }
  constexpr bool contains(Register r) const { return (mask_ & static_cast<unsigned>(r)) != 0; }
  constexpr bool empty() const { return mask_ == 0; }

 private:
  unsigned mask_ = 0;
};

class StateVector {
 public:
  StateVector(RegisterLayout layout, std::vector<Amplitude> amplitudes);

  const RegisterLayout& layout() const { return layout_; }
  std::span<const Amplitude> amplitudes() const { return amplitudes_; }
  std::span<Amplitude> amplitudes() { return amplitudes_; }
  Amplitude operator[](std::size_t i) const { return amplitudes_[i]; }

  double norm_squared() const;

 private:
  RegisterLayout layout_;
  std::vector<Amplitude> amplitudes_;
};

/// |0...0>|0...0>|1>.
StateVector init_state(const RegisterLayout& layout, unsigned cap = kDefaultQubitCap);

/// Hadamard on every qubit of the selected registers. The bit register is
/// never a valid target.
void apply_hadamard_layer(StateVector& state, RegisterSet target);

/// |x>|y>|a> -> |table[x]>|y>|a>. The table is checked to be a bijection on
/// the domain register before anything is touched.
void apply_permutation_gate(StateVector& state, std::span<const Encoding> table);

/// Flips bit-register qubit `step` on every branch whose domain value is marked.
void apply_predicate_flip(StateVector& state, const std::vector<bool>& marked, unsigned step);

/// Negates every amplitude whose bit register equals `pattern`.
void apply_phase_oracle(StateVector& state, std::span<const Bit> pattern);

/// X on the ancilla when the bit register equals `pattern`. With the ancilla
/// in |->, this is the kickback form of apply_phase_oracle.
void apply_ancilla_oracle(StateVector& state, std::span<const Bit> pattern);

/// 2|e><e| - I for basis state e.
void reflect_about_basis_state(StateVector& state, std::size_t basis_index);

struct HadamardGate {
  RegisterSet target;
};

struct PermutationGate {
  std::vector<Encoding> table;
  std::vector<Encoding> inverse;
};

struct PredicateFlipGate {
  std::vector<bool> marked;
  unsigned step = 0;
};

using Gate = std::variant<HadamardGate, PermutationGate, PredicateFlipGate>;

PermutationGate make_permutation_gate(std::span<const Encoding> table);

/// Ordered gate list acting on one layout; runs forwards or as its inverse.
class Circuit {
 public:
  explicit Circuit(RegisterLayout layout) : layout_(layout) {}

  void add(Gate gate) { gates_.push_back(std::move(gate)); }
  const std::vector<Gate>& gates() const { return gates_; }
  const RegisterLayout& layout() const { return layout_; }

  void apply(StateVector& state) const;
  void apply_inverse(StateVector& state) const;

 private:
  RegisterLayout layout_;
  std::vector<Gate> gates_;
};

void apply_gate(StateVector& state, const Gate& gate);
void apply_gate_inverse(StateVector& state, const Gate& gate);

/// Amplitude amplification with A = `prepare` started from init_state:
/// k rounds of A (2|0><0| - I) A^-1 S_good, where S_good is the phase
/// oracle on `good_bits`. `state` must equal prepare(init_state).
void grover_iterate(StateVector& state, const Circuit& prepare, std::span<const Bit> good_bits,
                    long k);

/// Total probability of basis states whose bit register equals `pattern`.
double subspace_probability(const StateVector& state, std::span<const Bit> pattern);

/// Marginal distribution of one register; only outcomes with nonzero
/// probability are listed.
std::map<std::uint64_t, double> measure_register_distribution(const StateVector& state,
                                                              Register reg);

/// One draw from the register marginal, reproducible for a given seed.
std::uint64_t sample_measurement(const StateVector& state, Register reg, std::uint64_t rng_seed);

/// Dense complex matrix used to cross-check the fast gate paths.
class GateMatrix {
 public:
  explicit GateMatrix(std::size_t dimension);

  static GateMatrix identity(std::size_t dimension);

  std::size_t dimension() const { return dimension_; }
  Amplitude& operator()(std::size_t row, std::size_t col) { return entries_[row * dimension_ + col]; }
  Amplitude operator()(std::size_t row, std::size_t col) const {
    return entries_[row * dimension_ + col];
  }

  GateMatrix adjoint() const;
  GateMatrix transpose() const;
  GateMatrix operator*(const GateMatrix& rhs) const;
  std::vector<Amplitude> apply(std::span<const Amplitude> vec) const;

  /// max |(G G^dagger - I)_{ij}|.
  double unitarity_deviation() const;
  double max_abs_difference(const GateMatrix& other) const;

 private:
  std::size_t dimension_;
  std::vector<Amplitude> entries_;
};

/// Kronecker product, `lhs` on the more significant index bits.
GateMatrix kron(const GateMatrix& lhs, const GateMatrix& rhs);

enum class MatrixConvention {
  /// Column x carries the 1 in row table[x], so G |x> = |table[x]>.
  kOperator,
  /// Row x carries the 1 in column table[x] (the transpose).
  kRowMapping,
};

/// Permutation matrix of a bijective table; ParameterError otherwise.
GateMatrix gate_matrix_from_table(std::span<const Encoding> table,
                                  MatrixConvention convention = MatrixConvention::kOperator);

/// Controlled flip over (domain x one target qubit), index 2x + target:
/// the 2x2 block of every marked x is X, the rest identity.
GateMatrix gate_matrix_from_predicate(const std::vector<bool>& marked);

}  // namespace bmattack
