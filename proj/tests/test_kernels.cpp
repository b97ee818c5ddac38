// Copyright 2026 The holo-toolkit Authors.
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

#include <bit>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "holo/kernels/kernels.hpp"

namespace k = holo::kernels;

namespace {

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> d(-10.0, 10.0);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

bool bits_equal(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::bit_cast<std::uint64_t>(a[i]) != std::bit_cast<std::uint64_t>(b[i])) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("scalar kernels compute the textbook results") {
  std::vector<double> y = {1, 2, 3, 4, 5};
  const std::vector<double> x = {1, 1, 1, 1, 1};
  k::scalar::axpy(2.0, x, y);
  CHECK(y == std::vector<double>{3, 4, 5, 6, 7});
  k::scalar::scale(0.5, y);
  CHECK(y == std::vector<double>{1.5, 2, 2.5, 3, 3.5});
  std::vector<double> out(5);
  k::scalar::multiply(x, y, out);
  CHECK(out == y);
  CHECK(k::scalar::sum(y) == doctest::Approx(12.5));
  CHECK(k::scalar::sum(std::vector<double>{}) == 0.0);
}

TEST_CASE("kernels reject mismatched lengths") {
  std::vector<double> a(3), b(4);
  CHECK_THROWS_AS(k::axpy(1.0, a, b), std::invalid_argument);
  CHECK_THROWS_AS(k::multiply(a, a, b), std::invalid_argument);
}

#if defined(HOLO_HAVE_AVX2)
TEST_CASE("AVX2 kernels are bit-identical to the scalar reference") {
  if (k::detected_isa() != k::Isa::kAvx2) {
    MESSAGE("CPU lacks AVX2; equivalence not exercised");
    return;
  }
  std::mt19937_64 rng(7);
  // Lengths around the 4-lane width and its remainders.
  for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 15u, 16u, 17u, 31u, 64u, 127u, 1000u}) {
    CAPTURE(n);
    const auto x = random_vector(rng, n);
    const auto y0 = random_vector(rng, n);
    const double a = std::uniform_real_distribution<double>(-3, 3)(rng);

    auto ys = y0, yv = y0;
    k::scalar::axpy(a, x, ys);
    k::avx2::axpy(a, x, yv);
    CHECK(bits_equal(ys, yv));

    ys = y0, yv = y0;
    k::scalar::scale(a, ys);
    k::avx2::scale(a, yv);
    CHECK(bits_equal(ys, yv));

    std::vector<double> ms(n), mv(n);
    k::scalar::multiply(x, y0, ms);
    k::avx2::multiply(x, y0, mv);
    CHECK(bits_equal(ms, mv));

    CHECK(std::bit_cast<std::uint64_t>(k::scalar::sum(x)) == std::bit_cast<std::uint64_t>(k::avx2::sum(x)));
  }
}
#endif

TEST_CASE("dispatch can be forced to scalar and back") {
  const k::Isa best = k::detected_isa();
  CHECK(k::set_isa(k::Isa::kScalar) == k::Isa::kScalar);
  CHECK(k::active_isa() == k::Isa::kScalar);
  CHECK(k::isa_name(k::Isa::kScalar) == "scalar");
  const std::vector<double> x = {1, 2, 3, 4, 5, 6};
  const double scalar_sum = k::sum(x);
  CHECK(k::set_isa(best) == best);
  CHECK(k::sum(x) == scalar_sum);
}
