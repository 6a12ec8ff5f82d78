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

#include <set>
#include <vector>

#include "bmattack/elliptic_curve.hpp"
#include "bmattack/errors.hpp"

using namespace bmattack;

namespace {

const CurveParams kCurve{5, 1};
const EcPoint kQ = EcPoint::affine(2, 2);

// Oracle: every (x, y) in F_p^2 checked against the curve equation with
// plain integer arithmetic.
std::vector<EcPoint> brute_force_points(std::uint64_t p, std::uint64_t c) {
  std::vector<EcPoint> out;
  for (std::uint64_t x = 0; x < p; ++x) {
    for (std::uint64_t y = 0; y < p; ++y) {
      if ((y * y) % p == (x * x * x + c) % p) out.push_back(EcPoint::affine(x, y));
    }
  }
  out.push_back(EcPoint::infinity());
  return out;
}

}  // namespace

TEST_CASE("curve points of y^2 = x^3 + 1 mod 5") {
  const auto points = affine_points(kCurve);
  const std::set<EcPoint> got(points.begin(), points.end());
  const std::set<EcPoint> expected{EcPoint::affine(4, 0), EcPoint::affine(0, 1),
                                   EcPoint::affine(0, 4), EcPoint::affine(2, 2),
                                   EcPoint::affine(2, 3)};
  CHECK(got == expected);
}

TEST_CASE("multiples of Q = (2,2) walk the whole group") {
  CHECK(ec_add(kQ, kQ, kCurve) == EcPoint::affine(0, 4));
  CHECK(ec_add(EcPoint::affine(0, 4), kQ, kCurve) == EcPoint::affine(4, 0));
  CHECK(ec_scalar_mul(4, kQ, kCurve) == EcPoint::affine(0, 1));
  CHECK(ec_scalar_mul(5, kQ, kCurve) == EcPoint::affine(2, 3));
  CHECK(ec_scalar_mul(6, kQ, kCurve).is_infinity());
  CHECK(ec_scalar_mul(0, kQ, kCurve).is_infinity());
  CHECK(ec_add(EcPoint::infinity(), EcPoint::affine(4, 0), kCurve) == EcPoint::affine(4, 0));
  CHECK(ec_order(kQ, kCurve) == 6);
  CHECK(default_generator(kCurve) == kQ);
}

TEST_CASE("group law is an abelian group on every small curve") {
  for (const std::uint64_t p : {5ULL, 11ULL, 17ULL}) {
    for (std::uint64_t c = 1; c < p; ++c) {
      const CurveParams curve{p, c};
      const auto pts = brute_force_points(p, c);
      REQUIRE(pts.size() == p + 1);
      for (const auto& a : pts) {
        CHECK(ec_add(a, EcPoint::infinity(), curve) == a);
        CHECK(ec_add(a, ec_negate(a, curve), curve).is_infinity());
        for (const auto& b : pts) {
          const auto ab = ec_add(a, b, curve);
          CHECK(on_curve(ab, curve));
          CHECK(ab == ec_add(b, a, curve));
          if (p == 5) {
            for (const auto& d : pts) {
              CHECK(ec_add(ab, d, curve) == ec_add(a, ec_add(b, d, curve), curve));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("scalar multiplication matches repeated addition") {
  const CurveParams curve{11, 3};
  for (const auto& pt : brute_force_points(11, 3)) {
    EcPoint acc = EcPoint::infinity();
    for (std::uint64_t k = 0; k < 30; ++k) {
      CHECK(ec_scalar_mul(k, pt, curve) == acc);
      acc = ec_add(acc, pt, curve);
    }
  }
}

TEST_CASE("phi and lambda") {
  CHECK(kaliski_phi(EcPoint::affine(2, 3), kCurve) == 3);
  CHECK(kaliski_phi(EcPoint::infinity(), kCurve) == 5);
  CHECK(kaliski_phi(EcPoint::affine(4, 0), kCurve) == 0);

  CHECK(kaliski_lambda(EcPoint::affine(0, 4), kCurve) == 1);
  CHECK(kaliski_lambda(EcPoint::affine(2, 2), kCurve) == 0);
  CHECK(kaliski_lambda(EcPoint::infinity(), kCurve) == 1);
  // Threshold (p + 1) / 2 = 3 over all six elements.
  for (const auto& pt : brute_force_points(5, 1)) {
    const auto phi = pt.is_infinity() ? 5U : pt.y();
    CHECK(kaliski_lambda(pt, kCurve) == (phi >= 3 ? 1 : 0));
  }
}

TEST_CASE("invalid curves and points are rejected") {
  CHECK_THROWS_AS(CurveParams({7, 1}).validate(), ParameterError);   // 7 mod 3 = 1
  CHECK_THROWS_AS(CurveParams({9, 1}).validate(), ParameterError);   // not prime
  CHECK_THROWS_AS(CurveParams({5, 0}).validate(), ParameterError);   // singular
  CHECK_THROWS_AS(CurveParams({5, 5}).validate(), ParameterError);   // c out of range
  CHECK_THROWS_AS(ec_add(EcPoint::affine(1, 1), kQ, kCurve), ParameterError);
  CHECK_THROWS_AS(ec_scalar_mul(2, EcPoint::affine(3, 3), kCurve), ParameterError);
}

TEST_CASE("modular inverse") {
  for (std::uint64_t a = 1; a < 17; ++a) CHECK(mul_mod(a, inverse_mod(a, 17), 17) == 1);
  CHECK_THROWS_AS(inverse_mod(6, 21), ParameterError);
}
