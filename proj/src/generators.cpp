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

#include "bmattack/generators.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "bmattack/errors.hpp"

namespace bmattack {

BitString parse_bits(std::string_view text) {
  if (text.empty()) throw ParameterError("bit string must be nonempty");
  BitString bits;
  bits.reserve(text.size());
  for (const char ch : text) {
    if (ch != '0' && ch != '1') {
      throw ParameterError("bit string must match [01]+, got \"" + std::string(text) + "\"");
    }
    bits.push_back(static_cast<Bit>(ch - '0'));
  }
  return bits;
}

std::string format_bits(std::span<const Bit> bits) {
  std::string out;
  out.reserve(bits.size());
  for (const Bit b : bits) out.push_back(b ? '1' : '0');
  return out;
}

unsigned BbsParams::width() const {
  return modulus < 2 ? 0U : static_cast<unsigned>(std::bit_width(modulus - 1));
}

void BbsParams::validate() const {
  if (factors) {
    const auto [p, q] = *factors;
    if (!is_prime(p) || !is_prime(q) || p * q != modulus) {
      throw ParameterError("factors " + std::to_string(p) + " * " + std::to_string(q) +
                           " are not a prime factorization of " + std::to_string(modulus));
    }
    if (p % 4 != 3 || q % 4 != 3) {
      throw ParameterError("Blum modulus requires p = q = 3 (mod 4)");
    }
  } else if (modulus < 6 || modulus % 2 == 0) {
    throw ParameterError("BBS modulus must be odd and >= 6, got " + std::to_string(modulus));
  }
  if (width() > kMaxDomainWidth) {
    throw ResourceError("BBS modulus needs " + std::to_string(width()) +
                        " domain qubits, cap is " + std::to_string(kMaxDomainWidth));
  }
  if (j < 1 || j > width()) {
    throw ParameterError("bit position j must lie in [1, " + std::to_string(width()) + "], got " +
                         std::to_string(j));
  }
}

GeneratorSpec::GeneratorSpec(std::string name, std::vector<SpecParameter> parameters,
                             unsigned width, std::vector<bool> in_domain,
                             std::vector<Encoding> permutation, std::vector<Bit> predicate,
                             std::vector<std::string> labels)
    : name_(std::move(name)),
      parameters_(std::move(parameters)),
      width_(width),
      in_domain_(std::move(in_domain)),
      permutation_(std::move(permutation)),
      predicate_(std::move(predicate)),
      labels_(std::move(labels)) {
  if (width_ < 1 || width_ > kMaxDomainWidth) {
    throw ResourceError("domain width " + std::to_string(width_) + " outside [1, " +
                        std::to_string(kMaxDomainWidth) + "]");
  }
  const std::size_t size = std::size_t{1} << width_;
  if (in_domain_.size() != size || permutation_.size() != size || predicate_.size() != size ||
      labels_.size() != size) {
    throw ConstructionError("generator tables must all have 2^width entries");
  }
  inverse_.assign(size, 0);
  std::vector<bool> seen(size, false);
  for (std::size_t x = 0; x < size; ++x) {
    const Encoding y = permutation_[x];
    if (y >= size || seen[y]) {
      throw ConstructionError("permutation is not a bijection: " + std::to_string(x) + " -> " +
                              std::to_string(y) + " collides");
    }
    seen[y] = true;
    inverse_[y] = static_cast<Encoding>(x);
    if (!in_domain_[x]) {
      if (y != x) {
        throw ConstructionError("padding index " + std::to_string(x) + " is not a fixed point");
      }
      if (predicate_[x] != 0) {
        throw ConstructionError("predicate must be 0 on padding index " + std::to_string(x));
      }
    } else {
      domain_.push_back(static_cast<Encoding>(x));
    }
    if (predicate_[x] > 1) throw ConstructionError("predicate values must be bits");
  }
}

Bit hardcore_bit(std::uint64_t x, unsigned j, unsigned n) {
  if (n < 1 || n > 63 || j < 1 || j > n) {
    throw ParameterError("bit position j=" + std::to_string(j) + " outside [1, " +
                         std::to_string(n) + "]");
  }
  if (x >> n) {
    throw ParameterError(std::to_string(x) + " does not fit in " + std::to_string(n) + " bits");
  }
  return static_cast<Bit>((x >> (n - j)) & 1U);
}

std::uint64_t rabin_step(std::uint64_t x, std::uint64_t modulus) {
  if (x >= modulus) {
    throw ParameterError("rabin_step: " + std::to_string(x) + " >= modulus " +
                         std::to_string(modulus));
  }
  return mul_mod(x, x, modulus);
}

std::vector<std::uint64_t> quadratic_residues(std::uint64_t modulus) {
  if (modulus < 2) throw ParameterError("modulus must be >= 2");
  std::vector<bool> is_square(modulus, false);
  for (std::uint64_t x = 1; x < modulus; ++x) is_square[mul_mod(x, x, modulus)] = true;
  std::vector<std::uint64_t> residues;
  for (std::uint64_t y = 1; y < modulus; ++y) {
    if (is_square[y]) residues.push_back(y);
  }
  return residues;
}

GeneratorSpec bbs_spec(const BbsParams& params) {
  params.validate();
  const unsigned n = params.width();
  const std::size_t size = std::size_t{1} << n;
  const auto modulus = params.modulus;

  std::vector<bool> in_domain(size, false);
  std::vector<Encoding> permutation(size);
  std::vector<Bit> predicate(size, 0);
  std::vector<std::string> labels(size);
  for (std::size_t x = 0; x < size; ++x) {
    permutation[x] = static_cast<Encoding>(x);
    labels[x] = std::to_string(x);
  }

  std::vector<std::uint64_t> preimage(modulus, modulus);
  for (const auto x : quadratic_residues(modulus)) {
    const auto y = rabin_step(x, modulus);
    if (preimage[y] != modulus) {
      throw ConstructionError("squaring is not injective on QR_" + std::to_string(modulus) +
                              ": " + std::to_string(preimage[y]) + " and " + std::to_string(x) +
                              " both map to " + std::to_string(y));
    }
    preimage[y] = x;
    in_domain[x] = true;
    permutation[x] = static_cast<Encoding>(y);
    predicate[x] = hardcore_bit(x, params.j, n);
  }

  std::vector<SpecParameter> parameters{{"modulus", static_cast<std::int64_t>(modulus)},
                                        {"j", static_cast<std::int64_t>(params.j)}};
  if (params.factors) {
    parameters.push_back({"p", static_cast<std::int64_t>(params.factors->first)});
    parameters.push_back({"q", static_cast<std::int64_t>(params.factors->second)});
  }
  return GeneratorSpec("bbs", std::move(parameters), n, std::move(in_domain),
                       std::move(permutation), std::move(predicate), std::move(labels));
}

std::vector<EcPoint> kaliski_points(const CurveParams& curve, const EcPoint& generator,
                                    PointEncoding encoding) {
  curve.validate();
  if (generator.is_infinity() || !on_curve(generator, curve)) {
    throw ParameterError("generator " + generator.to_string() + " is not an affine curve point");
  }
  const std::uint64_t order = curve.p + 1;
  std::vector<EcPoint> multiples;
  multiples.reserve(order);
  EcPoint acc = generator;
  for (std::uint64_t i = 1; i <= order; ++i) {
    if (acc.is_infinity() && i < order) {
      throw ConstructionError("Q = " + generator.to_string() + " has order " +
                              std::to_string(i) + ", not p + 1 = " + std::to_string(order));
    }
    multiples.push_back(acc);
    acc = ec_add(acc, generator, curve);
  }
  if (!multiples.back().is_infinity()) {
    throw ConstructionError("(p + 1) * Q is not O; group is not cyclic of order p + 1");
  }
  if (encoding == PointEncoding::kMultiples) return multiples;

  std::vector<EcPoint> listed = affine_points(curve);
  std::stable_partition(listed.begin(), listed.end(), [](const EcPoint& pt) { return pt.y() == 0; });
  listed.push_back(EcPoint::infinity());
  return listed;
}

GeneratorSpec kaliski_spec(const CurveParams& curve, const EcPoint& generator,
                           PointEncoding encoding) {
  const auto points = kaliski_points(curve, generator, encoding);
  const std::uint64_t order = points.size();
  const auto n = static_cast<unsigned>(std::bit_width(order));
  if (n > kMaxDomainWidth) {
    throw ResourceError("group of order " + std::to_string(order) + " needs " +
                        std::to_string(n) + " domain qubits");
  }
  const std::size_t size = std::size_t{1} << n;

  auto encode = [&](const EcPoint& pt) -> Encoding {
    const auto it = std::find(points.begin(), points.end(), pt);
    return static_cast<Encoding>(it - points.begin()) + 1;
  };

  std::vector<bool> in_domain(size, false);
  std::vector<Encoding> permutation(size);
  std::vector<Bit> predicate(size, 0);
  std::vector<std::string> labels(size, "pad");
  for (std::size_t x = 0; x < size; ++x) permutation[x] = static_cast<Encoding>(x);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto x = static_cast<Encoding>(i + 1);
    const auto& point = points[i];
    in_domain[x] = true;
    permutation[x] = encode(ec_scalar_mul(kaliski_phi(point, curve), generator, curve));
    predicate[x] = kaliski_lambda(point, curve);
    labels[x] = point.to_string();
  }

  std::vector<SpecParameter> parameters{{"p", static_cast<std::int64_t>(curve.p)},
                                        {"c", static_cast<std::int64_t>(curve.c)},
                                        {"qx", static_cast<std::int64_t>(generator.x())},
                                        {"qy", static_cast<std::int64_t>(generator.y())}};
  return GeneratorSpec("kaliski", std::move(parameters), n, std::move(in_domain),
                       std::move(permutation), std::move(predicate), std::move(labels));
}

Bit GeneratorState::advance(const GeneratorSpec& spec) {
  current = spec.apply(current);
  const Bit bit = spec.predicate(current);
  history.emplace_back(current, bit);
  return bit;
}

GeneratedSequence generate_bits(const GeneratorSpec& spec, Encoding seed, std::size_t count) {
  if (!spec.in_domain(seed)) {
    throw ParameterError("seed " + std::to_string(seed) + " is not in the " + spec.name() +
                         " domain");
  }
  GeneratorState state{seed, {}};
  GeneratedSequence out;
  for (std::size_t i = 0; i < count; ++i) {
    out.bits.push_back(state.advance(spec));
    out.states.push_back(state.current);
  }
  return out;
}

}  // namespace bmattack
