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

#include "gridcube/kernels.hpp"

namespace gridcube::kernels {
namespace {

Value masked_sum_scalar(const Value* values, const std::uint8_t* mask,
                        std::size_t n) {
  Value total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (mask[i]) total += values[i];
  }
  return total;
}

Value block_sum_scalar(const Value* in, std::size_t stride, std::size_t w,
                       std::size_t h) {
  Value total = 0;
  for (std::size_t y = 0; y < h; ++y) {
    const Value* row = in + y * stride;
    for (std::size_t x = 0; x < w; ++x) total += row[x];
  }
  return total;
}

void prefix_2d_scalar(const Value* in, std::size_t in_stride, std::size_t w,
                      std::size_t h, Value* out, std::size_t out_stride) {
  for (std::size_t y = 0; y < h; ++y) {
    const Value* src = in + y * in_stride;
    Value* dst = out + y * out_stride;
    const Value* above = y > 0 ? out + (y - 1) * out_stride : nullptr;
    Value run = 0;
    for (std::size_t x = 0; x < w; ++x) {
      run += src[x];
      dst[x] = above ? run + above[x] : run;
    }
  }
}

constexpr KernelTable kScalar{"scalar", masked_sum_scalar, block_sum_scalar,
                              prefix_2d_scalar};

}  // namespace

const KernelTable& scalar() { return kScalar; }

}  // namespace gridcube::kernels
