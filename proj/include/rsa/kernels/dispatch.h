// Copyright 2026 The RSA-Sim Authors
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

#ifndef RSA_KERNELS_DISPATCH_H_
#define RSA_KERNELS_DISPATCH_H_

#include <string_view>

namespace rsa::kernels {

// Instruction set a kernel table targets. Every kernel has a portable scalar
// reference; wider variants are selected at runtime when the CPU has them.
enum class Isa { kScalar, kAvx2 };

std::string_view isa_name(Isa isa);

// True when this binary carries a variant for `isa` and the CPU can run it.
bool isa_available(Isa isa);

// The ISA used by the default kernel tables. Detected once; the environment
// variable RSA_SIMD=scalar forces the reference path.
Isa active_isa();

}  // namespace rsa::kernels

#endif  // RSA_KERNELS_DISPATCH_H_
