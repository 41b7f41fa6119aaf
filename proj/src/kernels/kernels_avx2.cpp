// Copyright 2026 The gridcube Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <immintrin.h>

#include <cstring>

#include "gridcube/kernels.hpp"

namespace gridcube::kernels {
namespace {

#if defined(GRIDCUBE_FLOAT_VALUES)
using Vec = __m256d;
inline Vec zero() { return _mm256_setzero_pd(); }
inline Vec load(const Value* p) { return _mm256_loadu_pd(p); }
inline void store(Value* p, Vec v) { _mm256_storeu_pd(p, v); }
inline Vec add(Vec a, Vec b) { return _mm256_add_pd(a, b); }
inline Vec select(Vec v, const std::uint8_t* mask) {
  std::int32_t m4;
  std::memcpy(&m4, mask, 4);
  __m256i wide = _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(m4));
  __m256i keep = _mm256_cmpgt_epi64(wide, _mm256_setzero_si256());
  return _mm256_and_pd(v, _mm256_castsi256_pd(keep));
}
inline Value hsum(Vec v) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, v);
  return lanes[0] + lanes[1] + lanes[2] + lanes[3];
}
#else
using Vec = __m256i;
inline Vec zero() { return _mm256_setzero_si256(); }
inline Vec load(const Value* p) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}
inline void store(Value* p, Vec v) {
  _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v);
}
inline Vec add(Vec a, Vec b) { return _mm256_add_epi64(a, b); }
inline Vec select(Vec v, const std::uint8_t* mask) {
  std::int32_t m4;
  std::memcpy(&m4, mask, 4);
  __m256i wide = _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(m4));
  __m256i keep = _mm256_cmpgt_epi64(wide, _mm256_setzero_si256());
  return _mm256_and_si256(v, keep);
}
inline Value hsum(Vec v) {
  alignas(32) std::int64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
  return lanes[0] + lanes[1] + lanes[2] + lanes[3];
}
#endif

Value masked_sum_avx2(const Value* values, const std::uint8_t* mask,
                      std::size_t n) {
  Vec acc = zero();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = add(acc, select(load(values + i), mask + i));
  Value total = hsum(acc);
  for (; i < n; ++i) {
    if (mask[i]) total += values[i];
  }
  return total;
}

Value block_sum_avx2(const Value* in, std::size_t stride, std::size_t w,
                     std::size_t h) {
  Vec acc = zero();
  Value tail = 0;
  for (std::size_t y = 0; y < h; ++y) {
    const Value* row = in + y * stride;
    std::size_t x = 0;
    for (; x + 4 <= w; x += 4) acc = add(acc, load(row + x));
    for (; x < w; ++x) tail += row[x];
  }
  return hsum(acc) + tail;
}

// Row scan is inherently serial; the vertical accumulation is not.
void prefix_2d_avx2(const Value* in, std::size_t in_stride, std::size_t w,
                    std::size_t h, Value* out, std::size_t out_stride) {
  for (std::size_t y = 0; y < h; ++y) {
    const Value* src = in + y * in_stride;
    Value* dst = out + y * out_stride;
    Value run = 0;
    for (std::size_t x = 0; x < w; ++x) {
      run += src[x];
      dst[x] = run;
    }
    if (y == 0) continue;
    const Value* above = out + (y - 1) * out_stride;
    std::size_t x = 0;
    for (; x + 4 <= w; x += 4) store(dst + x, add(load(dst + x), load(above + x)));
    for (; x < w; ++x) dst[x] += above[x];
  }
}

constexpr KernelTable kAvx2{"avx2", masked_sum_avx2, block_sum_avx2,
                            prefix_2d_avx2};

}  // namespace

namespace detail {
const KernelTable* avx2_table() { return &kAvx2; }
}  // namespace detail

}  // namespace gridcube::kernels
