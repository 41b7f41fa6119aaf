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

#include <cstdlib>
#include <string_view>

#include "gridcube/kernels.hpp"

namespace gridcube::kernels {

const KernelTable* avx2() {
#if defined(GRIDCUBE_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? detail::avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable& table = [] () -> const KernelTable& {
    const char* force = std::getenv("GRIDCUBE_KERNELS");
    if (force != nullptr && std::string_view(force) == "scalar") return scalar();
    if (const KernelTable* wide = avx2()) return *wide;
    return scalar();
  }();
  return table;
}

}  // namespace gridcube::kernels
