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

#ifndef RSA_RANDOMIZE_RNG_H_
#define RSA_RANDOMIZE_RNG_H_

#include <cstdint>
#include <string_view>

namespace rsa::randomize {

// PCG32 (XSH RR 64/32, O'Neill 2014): 64-bit LCG state, 32-bit output, and a
// selectable stream (the odd LCG increment). Output depends only on
// (seed, stream), so sequences are identical on every platform.
class Pcg32 {
 public:
  static constexpr std::string_view kAlgorithm = "pcg32-xsh-rr-64-32";

  Pcg32(std::uint64_t seed, std::uint64_t stream);

  std::uint32_t next_u32();
  // Unbiased integer in [0, bound); bound must be > 0.
  std::uint32_t bounded(std::uint32_t bound);
  // 53-bit uniform double in [0, 1).
  double uniform01();
  // lo + (hi - lo) * U[0, 1); returns lo exactly when lo == hi.
  double uniform(double lo, double hi);

  std::uint64_t state() const { return state_; }
  std::uint64_t increment() const { return inc_; }

  friend bool operator==(const Pcg32&, const Pcg32&) = default;

 private:
  std::uint64_t state_;
  std::uint64_t inc_;
};

// The per-video random stream. A value type: copy it to fork, but never let
// two consumers draw from the same instance concurrently.
struct RngStream {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;
  Pcg32 engine{0, 0};

  std::string_view algorithm() const { return Pcg32::kAlgorithm; }
};

// Deterministic in (master_seed, video_index); distinct indices select
// distinct PCG streams with decorrelated starting states.
RngStream derive_stream(std::uint64_t master_seed, std::uint64_t video_index);

// SplitMix64 finalizer, used to decorrelate seeds.
std::uint64_t mix64(std::uint64_t x);

}  // namespace rsa::randomize

#endif  // RSA_RANDOMIZE_RNG_H_
