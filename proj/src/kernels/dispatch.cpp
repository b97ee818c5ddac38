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

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "holo/kernels/kernels.hpp"

namespace holo::kernels {
namespace {

struct Table {
  void (*axpy)(double, std::span<const double>, std::span<double>);
  void (*scale)(double, std::span<double>);
  void (*multiply)(std::span<const double>, std::span<const double>, std::span<double>);
  double (*sum)(std::span<const double>);
};

constexpr Table kScalarTable{scalar::axpy, scalar::scale, scalar::multiply, scalar::sum};
#if defined(HOLO_HAVE_AVX2)
constexpr Table kAvx2Table{avx2::axpy, avx2::scale, avx2::multiply, avx2::sum};
#endif

bool cpu_has_avx2() {
#if defined(HOLO_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa initial_isa() {
  // HOLO_KERNELS=scalar pins the reference path.
  if (const char* env = std::getenv("HOLO_KERNELS"); env != nullptr && std::string(env) == "scalar") {
    return Isa::kScalar;
  }
  return detected_isa();
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

const Table& table() {
#if defined(HOLO_HAVE_AVX2)
  if (current().load(std::memory_order_relaxed) == Isa::kAvx2) return kAvx2Table;
#endif
  return kScalarTable;
}

}  // namespace

Isa detected_isa() { return cpu_has_avx2() ? Isa::kAvx2 : Isa::kScalar; }

Isa active_isa() { return current().load(); }

Isa set_isa(Isa isa) {
  if (isa == Isa::kAvx2 && !cpu_has_avx2()) isa = Isa::kScalar;
  current().store(isa);
  return isa;
}

std::string_view isa_name(Isa isa) { return isa == Isa::kAvx2 ? "avx2" : "scalar"; }

void axpy(double a, std::span<const double> x, std::span<double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("axpy: length mismatch");
  table().axpy(a, x, y);
}
void scale(double a, std::span<double> y) { table().scale(a, y); }
void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  if (a.size() != b.size() || a.size() != out.size()) throw std::invalid_argument("multiply: length mismatch");
  table().multiply(a, b, out);
}
double sum(std::span<const double> x) { return table().sum(x); }

}  // namespace holo::kernels
