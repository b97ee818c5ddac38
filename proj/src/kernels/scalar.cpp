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

#include "holo/kernels/kernels.hpp"

#include <cassert>

namespace holo::kernels::scalar {

void axpy(double a, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double prod = a * x[i];
    y[i] = y[i] + prod;
  }
}

void scale(double a, std::span<double> y) {
  for (double& v : y) v = v * a;
}

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  assert(a.size() == b.size() && a.size() == out.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
}

double sum(std::span<const double> x) {
  // Same association as the 4-wide vector reduction.
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  const std::size_t body = x.size() / 4 * 4;
  for (std::size_t i = 0; i < body; i += 4) {
    lane[0] = lane[0] + x[i];
    lane[1] = lane[1] + x[i + 1];
    lane[2] = lane[2] + x[i + 2];
    lane[3] = lane[3] + x[i + 3];
  }
  double total = (lane[0] + lane[1]) + (lane[2] + lane[3]);
  for (std::size_t i = body; i < x.size(); ++i) total = total + x[i];
  return total;
}

}  // namespace holo::kernels::scalar
