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

#include "bmattack/elliptic_curve.hpp"

#include <string>

#include "bmattack/errors.hpp"

namespace bmattack {

__extension__ using uint128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<uint128>(a) * b % m);
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
  std::int64_t old_r = static_cast<std::int64_t>(a % m);
  std::int64_t r = static_cast<std::int64_t>(m);
  std::int64_t old_s = 1;
  std::int64_t s = 0;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::int64_t tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) {
    throw ParameterError("inverse_mod: " + std::to_string(a) + " is not invertible modulo " +
                         std::to_string(m));
  }
  const auto mod = static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(((old_s % mod) + mod) % mod);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

void CurveParams::validate() const {
  if (!is_prime(p) || p <= 3 || p % 3 != 2) {
    throw ParameterError("curve prime must be a prime > 3 with p mod 3 = 2, got " +
                         std::to_string(p));
  }
  if (c >= p) {
    throw ParameterError("curve coefficient c must lie in [0, p), got " + std::to_string(c));
  }
  if (c == 0) {
    throw ParameterError("curve y^2 = x^3 is singular (c = 0)");
  }
}

std::string EcPoint::to_string() const {
  if (infinity_) return "O";
  return "(" + std::to_string(x_) + "," + std::to_string(y_) + ")";
}

bool on_curve(const EcPoint& point, const CurveParams& curve) {
  if (point.is_infinity()) return true;
  const auto p = curve.p;
  if (point.x() >= p || point.y() >= p) return false;
  const auto lhs = mul_mod(point.y(), point.y(), p);
  const auto rhs = (mul_mod(mul_mod(point.x(), point.x(), p), point.x(), p) + curve.c) % p;
  return lhs == rhs;
}

namespace {

void require_on_curve(const EcPoint& point, const CurveParams& curve) {
  if (!on_curve(point, curve)) {
    throw ParameterError("point " + point.to_string() + " is not on y^2 = x^3 + " +
                         std::to_string(curve.c) + " mod " + std::to_string(curve.p));
  }
}

std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return (a + m - b % m) % m;
}

}  // namespace

EcPoint ec_negate(const EcPoint& point, const CurveParams& curve) {
  if (point.is_infinity()) return point;
  return EcPoint::affine(point.x(), (curve.p - point.y()) % curve.p);
}

EcPoint ec_add(const EcPoint& lhs, const EcPoint& rhs, const CurveParams& curve) {
  require_on_curve(lhs, curve);
  require_on_curve(rhs, curve);
  if (lhs.is_infinity()) return rhs;
  if (rhs.is_infinity()) return lhs;

  const auto p = curve.p;
  std::uint64_t slope = 0;
  if (lhs.x() == rhs.x()) {
    // P + (-P), including the doubling of a point with y = 0.
    if ((lhs.y() + rhs.y()) % p == 0) return EcPoint::infinity();
    // Tangent: 3x^2 / 2y.
    const auto num = mul_mod(3, mul_mod(lhs.x(), lhs.x(), p), p);
    slope = mul_mod(num, inverse_mod(mul_mod(2, lhs.y(), p), p), p);
  } else {
    slope = mul_mod(sub_mod(rhs.y(), lhs.y(), p), inverse_mod(sub_mod(rhs.x(), lhs.x(), p), p), p);
  }
  const auto x3 = sub_mod(sub_mod(mul_mod(slope, slope, p), lhs.x(), p), rhs.x(), p);
  const auto y3 = sub_mod(mul_mod(slope, sub_mod(lhs.x(), x3, p), p), lhs.y(), p);
  return EcPoint::affine(x3, y3);
}

EcPoint ec_scalar_mul(std::uint64_t k, const EcPoint& point, const CurveParams& curve) {
  require_on_curve(point, curve);
  EcPoint result = EcPoint::infinity();
  EcPoint addend = point;
  while (k != 0) {
    if (k & 1U) result = ec_add(result, addend, curve);
    addend = ec_add(addend, addend, curve);
    k >>= 1U;
  }
  return result;
}

std::uint64_t ec_order(const EcPoint& point, const CurveParams& curve) {
  require_on_curve(point, curve);
  std::uint64_t order = 1;
  EcPoint acc = point;
  while (!acc.is_infinity()) {
    acc = ec_add(acc, point, curve);
    ++order;
  }
  return order;
}

std::vector<EcPoint> affine_points(const CurveParams& curve) {
  curve.validate();
  std::vector<EcPoint> points;
  for (std::uint64_t x = 0; x < curve.p; ++x) {
    for (std::uint64_t y = 0; y < curve.p; ++y) {
      const auto candidate = EcPoint::affine(x, y);
      if (on_curve(candidate, curve)) points.push_back(candidate);
    }
  }
  return points;
}

EcPoint default_generator(const CurveParams& curve) {
  for (const auto& point : affine_points(curve)) {
    if (ec_order(point, curve) == curve.p + 1) return point;
  }
  throw ConstructionError("curve has no point of order p + 1");
}

std::uint64_t kaliski_phi(const EcPoint& point, const CurveParams& curve) {
  return point.is_infinity() ? curve.p : point.y();
}

std::uint8_t kaliski_lambda(const EcPoint& point, const CurveParams& curve) {
  // phi >= (p + 1) / 2, kept in integers: 2 * phi >= p + 1.
  return 2 * kaliski_phi(point, curve) >= curve.p + 1 ? 1 : 0;
}

}  // namespace bmattack
