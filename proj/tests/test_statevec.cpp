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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <algorithm>
#include <random>
#include <set>

#include "bmattack/attack.hpp"
#include "bmattack/errors.hpp"
#include "bmattack/statevec.hpp"

using namespace bmattack;

namespace {

constexpr double kTol = 1e-10;

StateVector random_state(const RegisterLayout& layout, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<Amplitude> amps(layout.dimension());
  double norm = 0.0;
  for (auto& a : amps) {
    a = {gauss(rng), gauss(rng)};
    norm += std::norm(a);
  }
  for (auto& a : amps) a /= std::sqrt(norm);
  return StateVector(layout, std::move(amps));
}

double max_diff(const StateVector& a, const StateVector& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.amplitudes().size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

std::vector<Encoding> random_permutation(std::size_t size, std::uint64_t seed) {
  std::vector<Encoding> table(size);
  for (std::size_t i = 0; i < size; ++i) table[i] = static_cast<Encoding>(i);
  std::mt19937_64 rng(seed);
  std::shuffle(table.begin(), table.end(), rng);
  return table;
}

const CurveParams kCurve{5, 1};

}  // namespace

TEST_CASE("init_state") {
  const RegisterLayout small{3, 2};
  const auto s = init_state(small);
  CHECK(s.amplitudes().size() == 64);
  CHECK(s[small.index(0, 0, 1)] == Amplitude(1.0, 0.0));
  CHECK(s.norm_squared() == doctest::Approx(1.0));
  CHECK(s.layout().index(0, 0, 1) == 1);

  const RegisterLayout bbs{5, 2};
  CHECK(init_state(bbs)[1] == Amplitude(1.0, 0.0));

  CHECK_THROWS_AS(init_state({20, 4}), ResourceError);
  CHECK_THROWS_AS(init_state({0, 2}), ParameterError);
  CHECK_THROWS_AS(init_state({3, 0}), ParameterError);
  CHECK_NOTHROW(init_state({20, 3}));
}

TEST_CASE("hadamard layer on domain and ancilla") {
  for (const unsigned n : {3U, 5U}) {
    const RegisterLayout layout{n, 2};
    auto s = init_state(layout);
    apply_hadamard_layer(s, RegisterSet{Register::kDomain} | Register::kAncilla);
    const double a = 1.0 / std::sqrt(std::ldexp(1.0, static_cast<int>(n)) * 2.0);
    for (std::size_t i = 0; i < s.amplitudes().size(); ++i) {
      const auto bits = layout.bits_of(i);
      const auto anc = layout.ancilla_of(i);
      // |->: +a on ancilla 0, -a on ancilla 1.
      const double expected = bits != 0 ? 0.0 : (anc == 0 ? a : -a);
      CHECK(std::abs(s[i] - expected) < kTol);
    }
    apply_hadamard_layer(s, RegisterSet{Register::kDomain} | Register::kAncilla);
    CHECK(max_diff(s, init_state(layout)) < kTol);
  }
  auto s = init_state({3, 2});
  CHECK_THROWS_AS(apply_hadamard_layer(s, Register::kBits), ParameterError);
}

TEST_CASE("permutation gate moves whole branches") {
  const RegisterLayout layout{3, 2};
  auto s = random_state(layout, 7);
  const auto before = s;
  const std::vector<Encoding> table{0, 6, 4, 2, 3, 1, 5, 7};
  apply_permutation_gate(s, table);
  for (std::size_t i = 0; i < s.amplitudes().size(); ++i) {
    const auto x = layout.domain_of(i);
    const auto j = layout.index(table[x], layout.bits_of(i), layout.ancilla_of(i));
    CHECK(s[j] == before[i]);
  }
  CHECK(std::abs(s.norm_squared() - 1.0) < kTol);

  const auto gate = make_permutation_gate(table);
  apply_permutation_gate(s, gate.inverse);
  CHECK(max_diff(s, before) == 0.0);  // exact: amplitudes only move

  const std::vector<Encoding> identity{0, 1, 2, 3, 4, 5, 6, 7};
  apply_permutation_gate(s, identity);
  CHECK(max_diff(s, before) == 0.0);

  const auto snapshot = s;
  CHECK_THROWS_AS(apply_permutation_gate(s, std::vector<Encoding>{0, 0, 2, 3, 4, 5, 6, 7}),
                  ParameterError);
  CHECK(max_diff(s, snapshot) == 0.0);
  CHECK_THROWS_AS(apply_permutation_gate(s, std::vector<Encoding>{0, 1, 2}), ParameterError);
}

TEST_CASE("predicate flip") {
  const RegisterLayout layout{3, 2};
  auto s = init_state(layout);
  apply_hadamard_layer(s, RegisterSet{Register::kDomain} | Register::kAncilla);
  std::vector<bool> marked(8, false);
  marked[1] = marked[2] = marked[4] = true;
  apply_predicate_flip(s, marked, 1);
  const auto snap = take_snapshot(s, "psi2", AncillaBasis::kHadamard);
  REQUIRE(snap.entries.size() == 8);
  for (const auto& e : snap.entries) {
    CHECK(e.bits == (marked[e.domain] ? 0b10U : 0U));
    CHECK(e.ancilla == '-');
  }

  const auto before = s;
  apply_predicate_flip(s, std::vector<bool>(8, false), 2);
  CHECK(max_diff(s, before) == 0.0);

  CHECK_THROWS_AS(apply_predicate_flip(s, marked, 0), ParameterError);
  CHECK_THROWS_AS(apply_predicate_flip(s, marked, 3), ParameterError);
}

TEST_CASE("phase oracle") {
  const RegisterLayout layout{3, 2};
  auto s = random_state(layout, 11);
  const auto before = s;
  const BitString pattern{1, 1};
  apply_phase_oracle(s, pattern);
  for (std::size_t i = 0; i < s.amplitudes().size(); ++i) {
    const bool good = layout.bits_of(i) == 0b11;
    CHECK(s[i] == (good ? -before[i] : before[i]));
  }
  apply_phase_oracle(s, pattern);
  CHECK(max_diff(s, before) == 0.0);

  auto basis = init_state(layout);
  apply_phase_oracle(basis, BitString{0, 0});
  CHECK(basis[1] == Amplitude(-1.0, 0.0));

  CHECK_THROWS_AS(apply_phase_oracle(s, BitString{1}), ParameterError);
}

TEST_CASE("phase oracle equals ancilla kickback on walk states") {
  const auto spec = kaliski_spec(kCurve, EcPoint::affine(2, 2));
  for (const auto& bits : {BitString{0, 0}, BitString{1, 0}, BitString{0, 1, 1}}) {
    const auto plan = plan_attack(spec, bits);
    auto direct = run_walk(plan).state;
    auto kicked = direct;
    apply_phase_oracle(direct, plan.good_pattern());
    apply_ancilla_oracle(kicked, plan.good_pattern());
    CHECK(max_diff(direct, kicked) < kTol);
  }
}

TEST_CASE("grover_iterate follows sin((2k+1) theta)") {
  const auto spec = kaliski_spec(kCurve, EcPoint::affine(2, 2));
  const auto plan = plan_attack(spec, BitString{0, 0});
  const auto circuit = walk_circuit(plan);
  auto prepared = init_state(plan.layout());
  circuit.apply(prepared);
  const double a0 = std::sqrt(subspace_probability(prepared, plan.good_pattern()));
  CHECK(a0 == doctest::Approx(1.0 / std::sqrt(8.0)).epsilon(1e-12));
  for (long k = 0; k <= 6; ++k) {
    auto s = prepared;
    grover_iterate(s, circuit, plan.good_pattern(), k);
    const double expected = std::pow(std::sin((2.0 * k + 1.0) * std::asin(a0)), 2);
    CHECK(std::abs(subspace_probability(s, plan.good_pattern()) - expected) < 1e-9);
    CHECK(std::abs(s.norm_squared() - 1.0) < kTol);
    if (k == 0) CHECK(max_diff(s, prepared) == 0.0);
  }
  auto s = prepared;
  CHECK_THROWS_AS(grover_iterate(s, circuit, plan.good_pattern(), -1), ParameterError);
}

TEST_CASE("measurement") {
  const RegisterLayout layout{3, 2};
  auto s = init_state(layout);
  auto dist = measure_register_distribution(s, Register::kDomain);
  CHECK(dist.size() == 1);
  CHECK(dist[0] == 1.0);
  CHECK(sample_measurement(s, Register::kAncilla, 99) == 1);

  apply_hadamard_layer(s, RegisterSet{Register::kDomain} | Register::kAncilla);
  dist = measure_register_distribution(s, Register::kDomain);
  CHECK(dist.size() == 8);
  double total = 0.0;
  for (const auto& [outcome, p] : dist) {
    CHECK(p == doctest::Approx(0.125));
    total += p;
  }
  CHECK(std::abs(total - 1.0) < 1e-9);

  // Same seed, same draw; the draws cover the support.
  std::set<std::uint64_t> seen;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto a = sample_measurement(s, Register::kDomain, seed);
    CHECK(a == sample_measurement(s, Register::kDomain, seed));
    seen.insert(a);
  }
  CHECK(seen.size() == 8);
}

TEST_CASE("gate matrices agree with the fast paths") {
  for (const unsigned n : {1U, 2U, 3U, 4U}) {
    const RegisterLayout layout{n, 1};
    const std::size_t rest = std::size_t{1} << (layout.bit_qubits + 1);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const auto table = random_permutation(layout.domain_size(), seed + 100 * n);
      const auto op = gate_matrix_from_table(table);
      CHECK(op.unitarity_deviation() < kTol);
      CHECK(gate_matrix_from_table(table, MatrixConvention::kRowMapping).max_abs_difference(
                op.transpose()) == 0.0);

      auto s = random_state(layout, seed);
      const auto expected = kron(op, GateMatrix::identity(rest)).apply(s.amplitudes());
      apply_permutation_gate(s, table);
      for (std::size_t i = 0; i < expected.size(); ++i) CHECK(std::abs(s[i] - expected[i]) < kTol);

      // Predicate flip over domain (x) bit qubit, identity on the ancilla.
      std::vector<bool> marked(layout.domain_size());
      std::mt19937_64 rng(seed);
      for (std::size_t x = 0; x < marked.size(); ++x) marked[x] = (rng() & 1U) != 0;
      const auto flip = gate_matrix_from_predicate(marked);
      CHECK(flip.unitarity_deviation() < kTol);
      auto t = random_state(layout, seed + 50);
      const auto flipped = kron(flip, GateMatrix::identity(2)).apply(t.amplitudes());
      apply_predicate_flip(t, marked, 1);
      for (std::size_t i = 0; i < flipped.size(); ++i) CHECK(std::abs(t[i] - flipped[i]) < kTol);
    }
  }
  CHECK(gate_matrix_from_table(std::vector<Encoding>{0, 1, 2, 3})
            .max_abs_difference(GateMatrix::identity(4)) == 0.0);
  CHECK_THROWS_AS(gate_matrix_from_table(std::vector<Encoding>{1, 1}), ParameterError);
}

TEST_CASE("every generator gate is unitary") {
  std::vector<GeneratorSpec> specs;
  specs.push_back(bbs_spec({21, 5, std::nullopt}));
  specs.push_back(bbs_spec({33, 3, std::nullopt}));
  specs.push_back(kaliski_spec(kCurve, EcPoint::affine(2, 2)));
  specs.push_back(kaliski_spec(kCurve, EcPoint::affine(2, 2), PointEncoding::kMultiples));
  specs.push_back(kaliski_spec({11, 2}, default_generator({11, 2})));
  for (const auto& spec : specs) {
    CHECK(gate_matrix_from_table(spec.permutation()).unitarity_deviation() < kTol);
    for (const Bit b : {Bit{0}, Bit{1}}) {
      CHECK(gate_matrix_from_predicate(marked_for_bit(spec, b)).unitarity_deviation() < kTol);
    }
  }
}

TEST_CASE("norm is preserved across a full attack circuit") {
  const auto spec = bbs_spec({21, 5, std::nullopt});
  const auto plan = plan_attack(spec, BitString{1, 0});
  auto s = init_state(plan.layout());
  const auto circuit = walk_circuit(plan);
  for (const auto& gate : circuit.gates()) {
    apply_gate(s, gate);
    CHECK(std::abs(s.norm_squared() - 1.0) < kTol);
  }
  amplify(s, plan);
  CHECK(std::abs(s.norm_squared() - 1.0) < kTol);
}
