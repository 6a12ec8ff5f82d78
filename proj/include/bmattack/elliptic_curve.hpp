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

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace bmattack {

/// y^2 = x^3 + c over F_p with p = 2 (mod 3). For such p the cube map is a
/// bijection on F_p, so the curve has exactly p + 1 points (including O)
/// and one point of order two.
struct CurveParams {
  std::uint64_t p = 0;
  std::uint64_t c = 0;

  /// Throws ParameterError unless p is a prime > 3 with p mod 3 = 2 and
  /// c is a nonzero residue in [0, p).
  void validate() const;
};

class EcPoint {
 public:
  EcPoint() = default;  // infinity

  static EcPoint infinity() { return EcPoint(); }
  static EcPoint affine(std::uint64_t x, std::uint64_t y) { return EcPoint(x, y); }

  bool is_infinity() const { return infinity_; }
  std::uint64_t x() const { return x_; }
  std::uint64_t y() const { return y_; }

  /// "(x,y)" or "O".
  std::string to_string() const;

  friend bool operator==(const EcPoint&, const EcPoint&) = default;
  // Infinity sorts after every affine point.
  friend std::strong_ordering operator<=>(const EcPoint& a, const EcPoint& b) {
    if (a.infinity_ != b.infinity_) return a.infinity_ <=> b.infinity_;
    if (a.x_ != b.x_) return a.x_ <=> b.x_;
    return a.y_ <=> b.y_;
  }

 private:
  EcPoint(std::uint64_t x, std::uint64_t y) : infinity_(false), x_(x), y_(y) {}

  bool infinity_ = true;
  std::uint64_t x_ = 0;
  std::uint64_t y_ = 0;
};

bool on_curve(const EcPoint& point, const CurveParams& curve);

EcPoint ec_negate(const EcPoint& point, const CurveParams& curve);

/// Group law (chord/tangent). Throws ParameterError for off-curve input.
EcPoint ec_add(const EcPoint& lhs, const EcPoint& rhs, const CurveParams& curve);

/// Double-and-add; 0 * P = O.
EcPoint ec_scalar_mul(std::uint64_t k, const EcPoint& point, const CurveParams& curve);

/// Smallest k >= 1 with k * P = O.
std::uint64_t ec_order(const EcPoint& point, const CurveParams& curve);

/// All affine points in lexicographic (x, y) order. O is not included.
std::vector<EcPoint> affine_points(const CurveParams& curve);

/// First affine point (lexicographic) whose order is p + 1.
EcPoint default_generator(const CurveParams& curve);

/// phi(P) = y for affine P, p for O.
std::uint64_t kaliski_phi(const EcPoint& point, const CurveParams& curve);

/// 1 iff phi(P) >= (p + 1) / 2.
std::uint8_t kaliski_lambda(const EcPoint& point, const CurveParams& curve);

// Small modular helpers shared with the BBS side.
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
/// Inverse of a modulo m via extended Euclid. Throws ParameterError when
/// gcd(a, m) != 1.
std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m);
bool is_prime(std::uint64_t n);

}  // namespace bmattack
