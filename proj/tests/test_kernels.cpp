// Copyright 2026 The Hetanon Authors.
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
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "hetanon/kernels.hpp"

namespace k = hetanon::kernels;

namespace {

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n, double lo = -3, double hi = 3) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

bool close(double a, double b) {
  return std::fabs(a - b) <= 1e-12 * std::max({1.0, std::fabs(a), std::fabs(b)});
}

void check_against_loops(const k::KernelTable& t) {
  std::mt19937_64 rng(42);
  for (std::size_t n = 0; n < 70; ++n) {
    auto a = random_vector(rng, n);
    auto b = random_vector(rng, n);
    double sum = 0, dot = 0, sq = 0, l1 = 0;
    for (std::size_t i = 0; i < n; ++i) {
      sum += a[i];
      dot += a[i] * b[i];
      sq += a[i] * a[i];
      l1 += std::fabs(a[i] - b[i]);
    }
    CHECK(close(t.sum(a.data(), n), sum));
    CHECK(close(t.dot(a.data(), b.data(), n), dot));
    CHECK(close(t.squared_norm(a.data(), n), sq));
    CHECK(close(t.l1_distance(a.data(), b.data(), n), l1));

    std::vector<std::uint32_t> idx;
    std::vector<double> vals;
    for (std::uint32_t i = 0; i < n; i += 1 + static_cast<std::uint32_t>(rng() % 3)) {
      idx.push_back(i);
      vals.push_back(b[i] * 0.5 + 1);
    }
    double gd = 0;
    for (std::size_t i = 0; i < idx.size(); ++i) gd += a[idx[i]] * vals[i];
    CHECK(close(t.gather_dot(a.data(), idx.data(), vals.data(), idx.size()), gd));

    auto y = a;
    t.add_in_place(y.data(), b.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(y[i] == a[i] + b[i]);

    for (double thr : {-1.0, 0.0, 0.7}) {
      std::vector<std::uint32_t> got{999};
      t.select_greater(a.data(), n, thr, got);
      std::vector<std::uint32_t> want{999};
      for (std::uint32_t i = 0; i < n; ++i) {
        if (a[i] > thr) want.push_back(i);
      }
      CHECK(got == want);
    }
  }
}

}  // namespace

TEST_CASE("scalar kernels match plain loops") { check_against_loops(k::scalar_kernels()); }

TEST_CASE("avx2 kernels match plain loops when the cpu supports them") {
  const k::KernelTable* t = k::avx2_kernels();
  if (!t) {
    MESSAGE("avx2 not available; skipped");
    return;
  }
  check_against_loops(*t);
}

TEST_CASE("simd and scalar kernels agree on long vectors") {
  const k::KernelTable* simd = k::avx2_kernels();
  if (!simd) return;
  const auto& ref = k::scalar_kernels();
  std::mt19937_64 rng(7);
  for (std::size_t n : {1000u, 1003u, 4096u, 20001u}) {
    auto a = random_vector(rng, n, 0, 5);
    auto b = random_vector(rng, n, -5, 5);
    CHECK(close(simd->sum(a.data(), n), ref.sum(a.data(), n)));
    CHECK(close(simd->dot(a.data(), b.data(), n), ref.dot(a.data(), b.data(), n)));
    CHECK(close(simd->squared_norm(b.data(), n), ref.squared_norm(b.data(), n)));
    CHECK(close(simd->l1_distance(a.data(), b.data(), n), ref.l1_distance(a.data(), b.data(), n)));
    std::vector<std::uint32_t> s1, s2;
    simd->select_greater(b.data(), n, 0.25, s1);
    ref.select_greater(b.data(), n, 0.25, s2);
    CHECK(s1 == s2);
  }
}

TEST_CASE("select_greater is strict and handles nan and infinities") {
  std::vector<double> x{1.0, 1.0, 2.0, NAN, INFINITY, -INFINITY, 1.0000000000000002, 0.5, 3.0};
  for (const k::KernelTable* t : {&k::scalar_kernels(), k::avx2_kernels()}) {
    if (!t) continue;
    std::vector<std::uint32_t> out;
    t->select_greater(x.data(), x.size(), 1.0, out);
    CHECK(out == std::vector<std::uint32_t>{2, 4, 6, 8});
  }
}

TEST_CASE("active table can be switched and restored") {
  const k::KernelTable& before = k::active_kernels();
  k::set_active_kernels(k::scalar_kernels());
  CHECK(std::string(k::active_kernels().name) == "scalar");
  std::vector<double> v{1, 2, 3};
  CHECK(k::sum(v) == 6.0);
  k::set_active_kernels(before);
  CHECK(&k::active_kernels() == &before);
}
