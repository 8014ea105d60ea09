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

// Dense double-precision kernels used by the text release and the attack.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant compiled in its own translation unit. The variant is picked once at
// startup from CPUID; callers go through the free functions below. The two
// variants differ only in summation order, so results agree to rounding.

#ifndef HETANON_KERNELS_HPP_
#define HETANON_KERNELS_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hetanon::kernels {

struct KernelTable {
  const char* name;
  double (*sum)(const double* x, std::size_t n);
  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*squared_norm)(const double* x, std::size_t n);
  double (*l1_distance)(const double* a, const double* b, std::size_t n);
  // sum_i dense[index[i]] * values[i]
  double (*gather_dot)(const double* dense, const std::uint32_t* index,
                       const double* values, std::size_t nnz);
  void (*add_in_place)(double* y, const double* x, std::size_t n);
  // Appends every i with x[i] > threshold to out, ascending.
  void (*select_greater)(const double* x, std::size_t n, double threshold,
                         std::vector<std::uint32_t>& out);
};

const KernelTable& scalar_kernels();

// nullptr when the AVX2 variant was not built or the CPU lacks AVX2.
const KernelTable* avx2_kernels();

// The table used by the free functions. Defaults to the best supported one.
const KernelTable& active_kernels();

// Overrides the active table (benchmarks and equivalence tests).
void set_active_kernels(const KernelTable& table);

inline double sum(std::span<const double> x) {
  return active_kernels().sum(x.data(), x.size());
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active_kernels().dot(a.data(), b.data(), a.size());
}

inline double squared_norm(std::span<const double> x) {
  return active_kernels().squared_norm(x.data(), x.size());
}

inline double l1_distance(std::span<const double> a, std::span<const double> b) {
  return active_kernels().l1_distance(a.data(), b.data(), a.size());
}

inline double gather_dot(std::span<const double> dense,
                         std::span<const std::uint32_t> index,
                         std::span<const double> values) {
  return active_kernels().gather_dot(dense.data(), index.data(), values.data(),
                                     index.size());
}

inline void add_in_place(std::span<double> y, std::span<const double> x) {
  active_kernels().add_in_place(y.data(), x.data(), y.size());
}

inline void select_greater(std::span<const double> x, double threshold,
                           std::vector<std::uint32_t>& out) {
  active_kernels().select_greater(x.data(), x.size(), threshold, out);
}

}  // namespace hetanon::kernels

#endif  // HETANON_KERNELS_HPP_
