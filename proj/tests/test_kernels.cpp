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

#include <random>
#include <vector>

#include "doctest.h"
#include "gridcube/kernels.hpp"

using namespace gridcube;

namespace {

std::vector<Value> random_block(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> dist(-1000, 1000);
  std::vector<Value> v(n);
  for (Value& x : v) x = dist(rng);
  return v;
}

// Every wide table must reproduce the scalar one bit for bit.
void check_against_scalar(const kernels::KernelTable& wide) {
  const kernels::KernelTable& ref = kernels::scalar();
  std::mt19937_64 rng(99);
  for (int t = 0; t < 200; ++t) {
    const std::size_t w = 1 + rng() % 37, h = 1 + rng() % 19, stride = w + rng() % 5;
    const auto in = random_block(rng, stride * h);
    std::vector<std::uint8_t> mask(in.size());
    for (auto& m : mask) m = static_cast<std::uint8_t>(rng() % 3 == 0 ? 0 : 1 + rng() % 200);

    CHECK(wide.masked_sum(in.data(), mask.data(), in.size()) ==
          ref.masked_sum(in.data(), mask.data(), in.size()));
    CHECK(wide.block_sum(in.data(), stride, w, h) == ref.block_sum(in.data(), stride, w, h));

    std::vector<Value> a(stride * h, -7), b(stride * h, -7);
    wide.prefix_2d(in.data(), stride, w, h, a.data(), stride);
    ref.prefix_2d(in.data(), stride, w, h, b.data(), stride);
    CHECK(a == b);
  }
}

}  // namespace

TEST_CASE("scalar kernels against direct loops") {
  const kernels::KernelTable& k = kernels::scalar();
  const std::vector<Value> in{1, 2, 3, 4, 5, 6};  // 3 x 2
  const std::vector<std::uint8_t> mask{1, 0, 1, 0, 1, 0};
  CHECK(k.masked_sum(in.data(), mask.data(), 6) == 9);
  CHECK(k.block_sum(in.data(), 3, 2, 2) == 1 + 2 + 4 + 5);
  std::vector<Value> out(6);
  k.prefix_2d(in.data(), 3, 3, 2, out.data(), 3);
  CHECK(out == std::vector<Value>{1, 3, 6, 5, 12, 21});
}

TEST_CASE("AVX2 kernels equal the scalar reference") {
  const kernels::KernelTable* wide = kernels::avx2();
  if (wide == nullptr) {
    MESSAGE("AVX2 unavailable; only the scalar table is exercised");
    return;
  }
  check_against_scalar(*wide);
}

TEST_CASE("active table is one of the known tables") {
  const auto name = kernels::active().name;
  CHECK((name == kernels::scalar().name || (kernels::avx2() && name == kernels::avx2()->name)));
}

TEST_CASE("empty inputs") {
  const kernels::KernelTable& k = kernels::scalar();
  CHECK(k.masked_sum(nullptr, nullptr, 0) == 0);
  if (const auto* wide = kernels::avx2()) CHECK(wide->masked_sum(nullptr, nullptr, 0) == 0);
}
