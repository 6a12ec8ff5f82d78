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

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bmattack/generators.hpp"
#include "bmattack/statevec.hpp"

namespace bmattack {

struct PlanOptions {
  /// Number of consistent seeds the attacker assumes when sizing k.
  std::uint64_t assumed_solutions = 1;
  unsigned qubit_cap = kDefaultQubitCap;
};

/// Parameters of one attack run.
///
/// k = round((pi/4) * sqrt(2^n / s)) with ties to even, theta =
/// asin(sqrt(s / 2^n)) and predicted_success = sin^2((2k + 1) theta), where
/// s is the assumed solution count.
struct AttackPlan {
  GeneratorSpec spec;
  BitString observed_bits;
  unsigned n = 0;
  unsigned m = 0;
  long k = 0;
  double theta = 0.0;
  double predicted_success = 0.0;
  std::uint64_t assumed_solutions = 1;

  RegisterLayout layout() const { return {n, m}; }
  /// All-ones pattern of length m: every observed bit matched.
  BitString good_pattern() const { return BitString(m, 1); }
};

AttackPlan plan_attack(const GeneratorSpec& spec, const BitString& bits,
                       const PlanOptions& options = {});

/// Which basis the ancilla is written in for a snapshot. Before the
/// ancilla Hadamard it is |0>/|1>, afterwards |+>/|->.
enum class AncillaBasis { kComputational, kHadamard };

struct TraceEntry {
  std::uint64_t domain = 0;
  std::uint64_t bits = 0;
  char ancilla = '0';  // '0', '1', '+' or '-'
  Amplitude amplitude;
};

struct Snapshot {
  std::string label;  // "psi0", "psi1", ...
  AncillaBasis basis = AncillaBasis::kComputational;
  std::vector<TraceEntry> entries;  // nonzero, sorted by (domain, bits, ancilla)
};

/// Entries of `state` with |amplitude| above `threshold`, ancilla written
/// in `basis`.
Snapshot take_snapshot(const StateVector& state, std::string label, AncillaBasis basis,
                       double threshold = 1e-12);

/// Labeled states psi0 ... psi(2m+2) of one attack plus the per-step
/// candidate sets.
struct AttackTrace {
  unsigned m = 0;
  std::vector<Snapshot> snapshots;
  /// candidates[i-1]: first-state values x_1 still consistent with b_1..b_i,
  /// i.e. the domain values flagged 1...1 (qubits 1..i) at psi(2i) pulled
  /// back through i-1 inverse permutations.
  std::vector<std::vector<Encoding>> candidates;
  /// marked_register[i-1]: the domain values flagged 1...1 at psi(2i) as
  /// they sit in the register (x_i coordinates).
  std::vector<std::vector<Encoding>> marked_register;
};

/// X-hat_i for 1 <= i <= m.
const std::vector<Encoding>& candidate_set(const AttackTrace& trace, unsigned step);
const std::vector<Encoding>& marked_register_values(const AttackTrace& trace, unsigned step);

/// A = H(domain, ancilla), then for i = 1..m: the b_i marking flip on qubit
/// i followed by the permutation gate.
Circuit walk_circuit(const AttackPlan& plan);

/// Domain values the step-i flip marks: predicate(x) = b_i, x in the true
/// domain.
std::vector<bool> marked_for_bit(const GeneratorSpec& spec, Bit bit);

struct WalkResult {
  StateVector state;  // psi(2m+1)
  AttackTrace trace;
};

WalkResult run_walk(const AttackPlan& plan);

/// k Grover rounds with the walk as the preparation unitary; appends the
/// amplified snapshot to `trace` when given.
void amplify(StateVector& state, const AttackPlan& plan, AttackTrace* trace = nullptr);

/// Every x_1 in the true domain with predicate(f^(i-1)(x_1)) = b_i for all i.
std::vector<Encoding> consistent_seeds_bruteforce(const GeneratorSpec& spec,
                                                  const BitString& bits);

struct RecoveredStates {
  Encoding representative = 0;
  /// f^-1(rep), f^-2(rep), ... nearest first.
  std::vector<Encoding> backward;
  std::vector<Bit> backward_bits;
  /// f(rep), f^2(rep), ...
  std::vector<Encoding> forward;
  std::vector<Bit> forward_bits;
};

RecoveredStates recover_internal_states(const GeneratorSpec& spec, Encoding representative,
                                        std::size_t back, std::size_t forward);

struct AttackReport {
  AttackPlan plan;
  std::map<std::uint64_t, double> distribution;  // domain register marginal
  Encoding top_outcome = 0;
  double top_probability = 0.0;
  /// Probability mass on the all-ones bit register after amplification.
  double good_probability = 0.0;
  std::uint64_t sampled_outcome = 0;
  std::vector<Encoding> classical_seeds;
  RecoveredStates recovered;
  /// top_outcome walked back m steps lands in classical_seeds.
  bool agreement = false;
  AttackTrace trace;
};

AttackReport execute_attack(const GeneratorSpec& spec, const BitString& bits,
                            std::uint64_t rng_seed, const PlanOptions& options = {});

}  // namespace bmattack
