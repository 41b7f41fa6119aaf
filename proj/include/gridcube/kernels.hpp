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

#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "gridcube/grid.hpp"

namespace gridcube::kernels {

// Inner loops shared by the cube builders. Every table has a scalar
// reference implementation; wider variants must agree with it exactly on
// integer-valued data.
struct KernelTable {
  std::string_view name;

  // Sum of values[i] where mask[i] != 0.
  Value (*masked_sum)(const Value* values, const std::uint8_t* mask,
                      std::size_t n);

  // Sum of a w x h block with the given row stride.
  Value (*block_sum)(const Value* in, std::size_t stride, std::size_t w,
                     std::size_t h);

  // Inclusive 2-D prefix sum of a w x h block anchored at its top-left:
  // out[y][x] = sum of in[j][i] for i <= x, j <= y.
  void (*prefix_2d)(const Value* in, std::size_t in_stride, std::size_t w,
                    std::size_t h, Value* out, std::size_t out_stride);
};

const KernelTable& scalar();
// nullptr when the build or the running CPU lacks AVX2.
const KernelTable* avx2();

// Widest table usable on this CPU. GRIDCUBE_KERNELS=scalar forces scalar.
const KernelTable& active();

namespace detail {
const KernelTable* avx2_table();
}  // namespace detail

}  // namespace gridcube::kernels
