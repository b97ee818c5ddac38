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

#pragma once

// Dense double-precision kernels used by the Markov propagation and the
// insertion-model gap scorer. Every entry point has a scalar reference in
// holo::kernels::scalar and, on x86-64, an AVX2 variant in
// holo::kernels::avx2. The public functions dispatch at runtime.
//
// The variants are bit-identical: no fused multiply-add, and the scalar
// reduction follows the same 4-lane order as the vector one.

#include <cstddef>
#include <span>
#include <string_view>

namespace holo::kernels {

enum class Isa { kScalar, kAvx2 };

/// ISA the dispatcher currently routes to.
Isa active_isa();

/// Best ISA supported by this CPU and this build.
Isa detected_isa();

/// Forces a variant (tests, benchmarking). Requesting an unsupported ISA
/// falls back to scalar. Returns the ISA actually selected.
Isa set_isa(Isa isa);

std::string_view isa_name(Isa isa);

// The dispatched entry points throw std::invalid_argument on length
// mismatches; the direct variants only assert.

// y += a * x
void axpy(double a, std::span<const double> x, std::span<double> y);
// y *= a
void scale(double a, std::span<double> y);
// out = a .* b
void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out);
double sum(std::span<const double> x);

namespace scalar {
void axpy(double a, std::span<const double> x, std::span<double> y);
void scale(double a, std::span<double> y);
void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out);
double sum(std::span<const double> x);
}  // namespace scalar

#if defined(HOLO_HAVE_AVX2)
namespace avx2 {
void axpy(double a, std::span<const double> x, std::span<double> y);
void scale(double a, std::span<double> y);
void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out);
double sum(std::span<const double> x);
}  // namespace avx2
#endif

}  // namespace holo::kernels
