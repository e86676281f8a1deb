// Copyright 2026 The hw-tomo Authors
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

#pragma once

#include <cstdint>
#include <random>

namespace hwtomo {

// All randomness in the library goes through this generator.
//
//   engine   std::mt19937_64, seeded with a single 64-bit value. Its output
//            sequence is fixed by the C++ standard, so streams are identical
//            across standard libraries.
//   uniform  (x >> 11) · 2⁻⁵³, i.e. the top 53 bits of one engine word,
//            giving a double in [0, 1). The std distributions are avoided
//            because their algorithms are implementation-defined.
//   normal   Box–Muller on two uniforms; the second variate is discarded.
//
// Per-setting streams use derive_seed (below), so sampling order does not
// influence the result.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  double uniform();
  double normal();

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer (Steele, Lea, Flood 2014).
std::uint64_t splitmix64(std::uint64_t x);

/// seed' = splitmix64(splitmix64(master) ^ splitmix64((l << 32) | m)).
std::uint64_t derive_seed(std::uint64_t master, std::uint32_t l,
                          std::uint32_t m);

}  // namespace hwtomo
