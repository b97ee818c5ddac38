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

#include <immintrin.h>

#include <cassert>

#include "holo/kernels/kernels.hpp"

namespace holo::kernels::avx2 {

void axpy(double a, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  const std::size_t n = x.size();
  const std::size_t body = n / 4 * 4;
  const __m256d va = _mm256_set1_pd(a);
  for (std::size_t i = 0; i < body; i += 4) {
    const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x.data() + i));
    _mm256_storeu_pd(y.data() + i, _mm256_add_pd(_mm256_loadu_pd(y.data() + i), prod));
  }
  for (std::size_t i = body; i < n; ++i) {
    const double prod = a * x[i];
    y[i] = y[i] + prod;
  }
}

void scale(double a, std::span<double> y) {
  const std::size_t n = y.size();
  const std::size_t body = n / 4 * 4;
  const __m256d va = _mm256_set1_pd(a);
  for (std::size_t i = 0; i < body; i += 4) {
    _mm256_storeu_pd(y.data() + i, _mm256_mul_pd(_mm256_loadu_pd(y.data() + i), va));
  }
  for (std::size_t i = body; i < n; ++i) y[i] = y[i] * a;
}

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  assert(a.size() == b.size() && a.size() == out.size());
  const std::size_t n = a.size();
  const std::size_t body = n / 4 * 4;
  for (std::size_t i = 0; i < body; i += 4) {
    _mm256_storeu_pd(out.data() + i,
                     _mm256_mul_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i)));
  }
  for (std::size_t i = body; i < n; ++i) out[i] = a[i] * b[i];
}

double sum(std::span<const double> x) {
  const std::size_t n = x.size();
  const std::size_t body = n / 4 * 4;
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < body; i += 4) {
    acc = _mm256_add_pd(acc, _mm256_loadu_pd(x.data() + i));
  }
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  double total = (lane[0] + lane[1]) + (lane[2] + lane[3]);
  for (std::size_t i = body; i < n; ++i) total = total + x[i];
  return total;
}

}  // namespace holo::kernels::avx2
