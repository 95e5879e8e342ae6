// Copyright 2026 The leoho Authors.
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

#include "leoho/random.h"

namespace leoho {
namespace {

std::mt19937_64 MakeEngine(std::uint64_t seed, std::string_view purpose) {
  const std::uint64_t label = Fnv1a64(purpose);
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(label),
                    static_cast<std::uint32_t>(label >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t Fnv1a64(std::string_view text) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::uint64_t DeriveSeed(std::uint64_t master_seed, std::uint64_t replicate) {
  return SplitMix64(master_seed + (replicate + 1) * 0x9E3779B97F4A7C15ULL);
}

RandomStream::RandomStream(std::uint64_t seed, std::string_view purpose)
    : engine_(MakeEngine(seed, purpose)) {}

}  // namespace leoho
