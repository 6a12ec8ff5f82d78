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

#include "bmattack/attack.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "bmattack/errors.hpp"

namespace bmattack {

AttackPlan plan_attack(const GeneratorSpec& spec, const BitString& bits,
                       const PlanOptions& options) {
  if (bits.empty()) throw ParameterError("at least one observed bit is required");
  for (const Bit b : bits) {
    if (b > 1) throw ParameterError("observed bits must be 0 or 1");
  }
  const unsigned n = spec.width();
  const auto m = static_cast<unsigned>(bits.size());
  const RegisterLayout layout{n, m};
  layout.validate(options.qubit_cap);

  const double space = std::ldexp(1.0, static_cast<int>(n));
  const auto solutions = options.assumed_solutions;
  if (solutions < 1 || static_cast<double>(solutions) > space) {
    throw ParameterError("assumed solution count must lie in [1, 2^n]");
  }

  AttackPlan plan{spec, bits};
  plan.n = n;
  plan.m = m;
  plan.assumed_solutions = solutions;
  // nearbyint under the default rounding mode resolves .5 to even.
  plan.k = static_cast<long>(
      std::nearbyint(std::numbers::pi / 4.0 * std::sqrt(space / static_cast<double>(solutions))));
  plan.theta = std::asin(std::sqrt(static_cast<double>(solutions) / space));
  const double amp = std::sin(static_cast<double>(2 * plan.k + 1) * plan.theta);
  plan.predicted_success = amp * amp;
  return plan;
}

Snapshot take_snapshot(const StateVector& state, std::string label, AncillaBasis basis,
                       double threshold) {
  static const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
  const auto& layout = state.layout();
  Snapshot snap{std::move(label), basis, {}};
  const auto amps = state.amplitudes();
  // Basis indices are ordered by (domain, bits, ancilla), so a linear scan
  // yields sorted entries.
  for (std::size_t i = 0; i < amps.size(); i += 2) {
    const auto domain = layout.domain_of(i);
    const auto bits = layout.bits_of(i);
    Amplitude first = amps[i];
    Amplitude second = amps[i + 1];
    char first_name = '0';
    char second_name = '1';
    if (basis == AncillaBasis::kHadamard) {
      first = (amps[i] + amps[i + 1]) * kInvSqrt2;
      second = (amps[i] - amps[i + 1]) * kInvSqrt2;
      first_name = '+';
      second_name = '-';
    }
    if (std::abs(first) > threshold) snap.entries.push_back({domain, bits, first_name, first});
    if (std::abs(second) > threshold) snap.entries.push_back({domain, bits, second_name, second});
  }
  return snap;
}

const std::vector<Encoding>& candidate_set(const AttackTrace& trace, unsigned step) {
  if (step < 1 || step > trace.candidates.size()) {
    throw ParameterError("candidate step " + std::to_string(step) + " outside [1, " +
                         std::to_string(trace.candidates.size()) + "]");
  }
  return trace.candidates[step - 1];
}

const std::vector<Encoding>& marked_register_values(const AttackTrace& trace, unsigned step) {
  if (step < 1 || step > trace.marked_register.size()) {
    throw ParameterError("marked step " + std::to_string(step) + " outside [1, " +
                         std::to_string(trace.marked_register.size()) + "]");
  }
  return trace.marked_register[step - 1];
}

std::vector<bool> marked_for_bit(const GeneratorSpec& spec, Bit bit) {
  std::vector<bool> marked(spec.table_size(), false);
  for (const auto x : spec.domain()) marked[x] = spec.predicate(x) == bit;
  return marked;
}

Circuit walk_circuit(const AttackPlan& plan) {
  Circuit circuit(plan.layout());
  circuit.add(HadamardGate{RegisterSet{Register::kDomain} | Register::kAncilla});
  const auto rho = make_permutation_gate(plan.spec.permutation());
  for (unsigned i = 1; i <= plan.m; ++i) {
    circuit.add(PredicateFlipGate{marked_for_bit(plan.spec, plan.observed_bits[i - 1]), i});
    circuit.add(rho);
  }
  return circuit;
}

namespace {

std::string psi_label(std::size_t i) { return "psi" + std::to_string(i); }

// Domain values whose bit-register qubits 1..step are all set.
std::vector<Encoding> flagged_domains(const StateVector& state, unsigned step) {
  const auto& layout = state.layout();
  std::size_t mask = 0;
  for (unsigned q = 1; q <= step; ++q) mask |= layout.step_mask(q);
  std::vector<Encoding> out;
  const auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if ((i & mask) != mask || std::norm(amps[i]) < 1e-24) continue;
    const auto x = static_cast<Encoding>(layout.domain_of(i));
    if (out.empty() || out.back() != x) out.push_back(x);
  }
  return out;
}

}  // namespace

WalkResult run_walk(const AttackPlan& plan) {
  const auto circuit = walk_circuit(plan);
  auto state = init_state(plan.layout());
  AttackTrace trace;
  trace.m = plan.m;
  trace.snapshots.push_back(take_snapshot(state, psi_label(0), AncillaBasis::kComputational));

  std::size_t index = 0;
  for (const auto& gate : circuit.gates()) {
    apply_gate(state, gate);
    ++index;
    trace.snapshots.push_back(take_snapshot(state, psi_label(index), AncillaBasis::kHadamard));
    if (const auto* flip = std::get_if<PredicateFlipGate>(&gate)) {
      auto raw = flagged_domains(state, flip->step);
      std::vector<Encoding> pulled;
      pulled.reserve(raw.size());
      for (auto x : raw) {
        for (unsigned back = 1; back < flip->step; ++back) x = plan.spec.apply_inverse(x);
        pulled.push_back(x);
      }
      std::sort(pulled.begin(), pulled.end());
      trace.marked_register.push_back(std::move(raw));
      trace.candidates.push_back(std::move(pulled));
    }
  }
  return {std::move(state), std::move(trace)};
}

void amplify(StateVector& state, const AttackPlan& plan, AttackTrace* trace) {
  const auto circuit = walk_circuit(plan);
  grover_iterate(state, circuit, plan.good_pattern(), plan.k);
  if (trace != nullptr) {
    trace->snapshots.push_back(
        take_snapshot(state, psi_label(trace->snapshots.size()), AncillaBasis::kHadamard));
  }
}

std::vector<Encoding> consistent_seeds_bruteforce(const GeneratorSpec& spec,
                                                  const BitString& bits) {
  if (bits.empty()) throw ParameterError("at least one observed bit is required");
  std::vector<Encoding> seeds;
  for (const auto first : spec.domain()) {
    Encoding x = first;
    bool ok = true;
    for (std::size_t i = 0; i < bits.size() && ok; ++i) {
      if (i > 0) x = spec.apply(x);
      ok = spec.predicate(x) == bits[i];
    }
    if (ok) seeds.push_back(first);
  }
  return seeds;
}

RecoveredStates recover_internal_states(const GeneratorSpec& spec, Encoding representative,
                                        std::size_t back, std::size_t forward) {
  if (!spec.in_domain(representative)) {
    throw ParameterError("representative " + std::to_string(representative) +
                         " is not in the " + spec.name() + " domain");
  }
  RecoveredStates out;
  out.representative = representative;
  Encoding x = representative;
  for (std::size_t i = 0; i < back; ++i) {
    x = spec.apply_inverse(x);
    out.backward.push_back(x);
    out.backward_bits.push_back(spec.predicate(x));
  }
  x = representative;
  for (std::size_t i = 0; i < forward; ++i) {
    x = spec.apply(x);
    out.forward.push_back(x);
    out.forward_bits.push_back(spec.predicate(x));
  }
  return out;
}

AttackReport execute_attack(const GeneratorSpec& spec, const BitString& bits,
                            std::uint64_t rng_seed, const PlanOptions& options) {
  auto plan = plan_attack(spec, bits, options);
  auto [state, trace] = run_walk(plan);
  amplify(state, plan, &trace);

  AttackReport report{std::move(plan), {}, 0, 0.0, 0.0, 0, {}, {}, false, {}};
  report.distribution = measure_register_distribution(state, Register::kDomain);
  for (const auto& [outcome, p] : report.distribution) {
    // Outcomes within 1e-12 of the best count as ties; the smallest wins.
    if (p > report.top_probability + 1e-12) {
      report.top_probability = p;
      report.top_outcome = static_cast<Encoding>(outcome);
    }
  }
  report.good_probability = subspace_probability(state, report.plan.good_pattern());
  report.sampled_outcome = sample_measurement(state, Register::kDomain, rng_seed);
  report.classical_seeds = consistent_seeds_bruteforce(spec, bits);

  const auto m = report.plan.m;
  if (spec.in_domain(report.top_outcome)) {
    report.recovered = recover_internal_states(spec, report.top_outcome, m, m);
    const Encoding first = report.recovered.backward.back();
    report.agreement = std::binary_search(report.classical_seeds.begin(),
                                          report.classical_seeds.end(), first);
  } else {
    report.recovered.representative = report.top_outcome;
  }
  report.trace = std::move(trace);
  return report;
}

}  // namespace bmattack
