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

// Reproducible random streams.
//
// Seeds are derived, never drawn: a replicate's seed is
// SplitMix64(master + (replicate + 1) * 0x9E3779B97F4A7C15), and a stream for
// a given purpose label is a mt19937_64 seeded from
// {seed, FNV-1a-64(label)} through std::seed_seq. Identical inputs always
// produce identical streams and distinct labels give unrelated streams.

#ifndef LEOHO_RANDOM_H_
#define LEOHO_RANDOM_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace leoho {

std::uint64_t SplitMix64(std::uint64_t x);
std::uint64_t Fnv1a64(std::string_view text);

class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::string_view purpose);

  // Uniform on [0, 1).
  double Uniform() { return uniform_(engine_); }
  double StandardNormal() { return normal_(engine_); }
  std::uint64_t NextRaw() { return engine_(); }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

// Seed of replicate `replicate` under `master_seed`.
std::uint64_t DeriveSeed(std::uint64_t master_seed, std::uint64_t replicate);

inline RandomStream DeriveStream(std::uint64_t master_seed,
                                 std::uint64_t replicate,
                                 std::string_view purpose) {
  return RandomStream(DeriveSeed(master_seed, replicate), purpose);
}

}  // namespace leoho

#endif  // LEOHO_RANDOM_H_
