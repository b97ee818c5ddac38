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

#include "holo/pipeline/alloc_tracker.hpp"

#include <malloc.h>

#include <atomic>
#include <cstdlib>
#include <new>

namespace holo::alloc {
namespace {

std::atomic<std::size_t> g_current{0};
std::atomic<std::size_t> g_peak{0};

void note_alloc(void* p) {
  const std::size_t n = malloc_usable_size(p);
  const std::size_t now = g_current.fetch_add(n, std::memory_order_relaxed) + n;
  std::size_t peak = g_peak.load(std::memory_order_relaxed);
  while (now > peak && !g_peak.compare_exchange_weak(peak, now, std::memory_order_relaxed)) {
  }
}

void note_free(void* p) {
  if (p != nullptr) g_current.fetch_sub(malloc_usable_size(p), std::memory_order_relaxed);
}

void* allocate(std::size_t n, std::size_t align) {
  if (n == 0) n = 1;
  void* p = nullptr;
  if (align <= alignof(std::max_align_t)) {
    p = std::malloc(n);
  } else if (posix_memalign(&p, align, n) != 0) {
    p = nullptr;
  }
  if (p == nullptr) throw std::bad_alloc();
  note_alloc(p);
  return p;
}

void release(void* p) {
  note_free(p);
  std::free(p);
}

}  // namespace

std::size_t current_bytes() { return g_current.load(std::memory_order_relaxed); }
std::size_t peak_bytes() { return g_peak.load(std::memory_order_relaxed); }
void reset_peak() { g_peak.store(g_current.load(std::memory_order_relaxed), std::memory_order_relaxed); }

}  // namespace holo::alloc

void* operator new(std::size_t n) { return holo::alloc::allocate(n, alignof(std::max_align_t)); }
void* operator new[](std::size_t n) { return holo::alloc::allocate(n, alignof(std::max_align_t)); }
void* operator new(std::size_t n, std::align_val_t a) { return holo::alloc::allocate(n, static_cast<std::size_t>(a)); }
void* operator new[](std::size_t n, std::align_val_t a) {
  return holo::alloc::allocate(n, static_cast<std::size_t>(a));
}
void* operator new(std::size_t n, const std::nothrow_t&) noexcept {
  try {
    return holo::alloc::allocate(n, alignof(std::max_align_t));
  } catch (...) {
    return nullptr;
  }
}
void* operator new[](std::size_t n, const std::nothrow_t&) noexcept {
  try {
    return holo::alloc::allocate(n, alignof(std::max_align_t));
  } catch (...) {
    return nullptr;
  }
}
void operator delete(void* p) noexcept { holo::alloc::release(p); }
void operator delete[](void* p) noexcept { holo::alloc::release(p); }
void operator delete(void* p, std::size_t) noexcept { holo::alloc::release(p); }
void operator delete[](void* p, std::size_t) noexcept { holo::alloc::release(p); }
void operator delete(void* p, std::align_val_t) noexcept { holo::alloc::release(p); }
void operator delete[](void* p, std::align_val_t) noexcept { holo::alloc::release(p); }
void operator delete(void* p, std::size_t, std::align_val_t) noexcept { holo::alloc::release(p); }
void operator delete[](void* p, std::size_t, std::align_val_t) noexcept { holo::alloc::release(p); }
