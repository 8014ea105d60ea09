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

#include <cmath>

#include "hetanon/kernels.hpp"

namespace hetanon::kernels {
namespace {

double sum_scalar(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i];
  return s;
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double squared_norm_scalar(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
  return s;
}

double l1_distance_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::fabs(a[i] - b[i]);
  return s;
}

double gather_dot_scalar(const double* dense, const std::uint32_t* index,
                         const double* values, std::size_t nnz) {
  double s = 0.0;
  for (std::size_t i = 0; i < nnz; ++i) s += dense[index[i]] * values[i];
  return s;
}

void add_in_place_scalar(double* y, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += x[i];
}

void select_greater_scalar(const double* x, std::size_t n, double threshold,
                           std::vector<std::uint32_t>& out) {
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] > threshold) out.push_back(static_cast<std::uint32_t>(i));
  }
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{
      "scalar",          sum_scalar,        dot_scalar,
      squared_norm_scalar, l1_distance_scalar, gather_dot_scalar,
      add_in_place_scalar, select_greater_scalar,
  };
  return table;
}

}  // namespace hetanon::kernels
