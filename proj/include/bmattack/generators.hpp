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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bmattack/elliptic_curve.hpp"

namespace bmattack {

/// Canonical integer label of an internal state, in [0, 2^width).
using Encoding = std::uint32_t;
using Bit = std::uint8_t;
using BitString = std::vector<Bit>;

/// Largest domain register the generator tables are built for.
inline constexpr unsigned kMaxDomainWidth = 24;

/// Parses "[01]+" into bits. Throws ParameterError on anything else,
/// including the empty string.
BitString parse_bits(std::string_view text);
std::string format_bits(std::span<const Bit> bits);

/// Blum-Blum-Shub instance. `j` counts from the most significant of the
/// `width()` bits, so j == width() selects the least significant bit.
struct BbsParams {
  std::uint64_t modulus = 0;
  unsigned j = 0;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> factors;

  /// ceil(log2 M).
  unsigned width() const;
  void validate() const;
};

/// How Kaliski group elements are numbered in the domain register.
enum class PointEncoding {
  /// The point of order two first, remaining affine points in lexicographic
  /// (x, y) order, O last. Reproduces the reference p = 5 table.
  kListed,
  /// Q, 2Q, ..., (p+1)Q = O.
  kMultiples,
};

struct SpecParameter {
  std::string name;
  std::int64_t value;
};

/// A Blum-Micali instance flattened onto [0, 2^width): the one-way
/// permutation as an explicit table and the hard-core predicate as a bit
/// table. Encodings outside the true domain are padding: fixed by the
/// permutation and mapped to 0 by the predicate. Immutable once built.
class GeneratorSpec {
 public:
  /// Throws ConstructionError if the permutation is not a bijection, moves
  /// a padding index, or the predicate is nonzero on padding.
  GeneratorSpec(std::string name, std::vector<SpecParameter> parameters, unsigned width,
                std::vector<bool> in_domain, std::vector<Encoding> permutation,
                std::vector<Bit> predicate, std::vector<std::string> labels);

  const std::string& name() const { return name_; }
  const std::vector<SpecParameter>& parameters() const { return parameters_; }
  unsigned width() const { return width_; }
  std::size_t table_size() const { return permutation_.size(); }

  bool in_domain(Encoding x) const { return x < in_domain_.size() && in_domain_[x]; }
  /// True-domain encodings in increasing order.
  const std::vector<Encoding>& domain() const { return domain_; }

  Encoding apply(Encoding x) const { return permutation_.at(x); }
  Encoding apply_inverse(Encoding x) const { return inverse_.at(x); }
  Bit predicate(Encoding x) const { return predicate_.at(x); }

  std::span<const Encoding> permutation() const { return permutation_; }
  std::span<const Encoding> inverse_permutation() const { return inverse_; }
  std::span<const Bit> predicate_table() const { return predicate_; }

  /// Human-readable name of an encoding, e.g. "18", "(4,0)", "O" or "pad".
  const std::string& label(Encoding x) const { return labels_.at(x); }

 private:
  std::string name_;
  std::vector<SpecParameter> parameters_;
  unsigned width_;
  std::vector<bool> in_domain_;
  std::vector<Encoding> domain_;
  std::vector<Encoding> permutation_;
  std::vector<Encoding> inverse_;
  std::vector<Bit> predicate_;
  std::vector<std::string> labels_;
};

/// Bit j (1 = most significant) of the n-bit representation of x.
Bit hardcore_bit(std::uint64_t x, unsigned j, unsigned n);

/// x^2 mod M, for 0 <= x < M.
std::uint64_t rabin_step(std::uint64_t x, std::uint64_t modulus);

/// Nonzero squares modulo M, sorted.
std::vector<std::uint64_t> quadratic_residues(std::uint64_t modulus);

/// Squaring on the quadratic residues, hardcore bit j as predicate.
GeneratorSpec bbs_spec(const BbsParams& params);

/// Ordered group elements; element i gets encoding i + 1.
std::vector<EcPoint> kaliski_points(const CurveParams& curve, const EcPoint& generator,
                                    PointEncoding encoding);

/// f(P) = phi(P) * Q with lambda as predicate.
GeneratorSpec kaliski_spec(const CurveParams& curve, const EcPoint& generator,
                           PointEncoding encoding = PointEncoding::kListed);

/// Current state plus everything emitted so far.
struct GeneratorState {
  Encoding current = 0;
  std::vector<std::pair<Encoding, Bit>> history;

  /// x <- f(x); emits predicate(x).
  Bit advance(const GeneratorSpec& spec);
};

struct GeneratedSequence {
  std::vector<Encoding> states;  // x_1 ... x_m
  BitString bits;                // b_i = predicate(x_i)
};

/// Iterates the permutation m times from `seed` (x_0). Throws
/// ParameterError when the seed is a padding index.
GeneratedSequence generate_bits(const GeneratorSpec& spec, Encoding seed, std::size_t count);

}  // namespace bmattack
