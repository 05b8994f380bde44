// Copyright 2026 The DDB Tomography Authors
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
#include <cstring>

#include "ddb/kernels.hpp"

namespace ddb::kernels {

#if defined(DDB_HAVE_AVX2)
const KernelTable &avx2_kernel_table();
#endif

const KernelTable *avx2_kernels() {
#if defined(DDB_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &avx2_kernel_table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable &active() {
  static const KernelTable *table = [] {
    const char *force = std::getenv("DDB_FORCE_SCALAR");
    const bool scalar_only = force != nullptr && std::strcmp(force, "0") != 0 && *force != '\0';
    if (!scalar_only) {
      if (const KernelTable *fast = avx2_kernels()) return fast;
    }
    return &scalar_kernels();
  }();
  return *table;
}

}  // namespace ddb::kernels
