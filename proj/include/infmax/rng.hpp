// Copyright 2026 The Authors.
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
#include <vector>

namespace infmax {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Every randomized component draws from its own (master, domain, index)
// stream, so results do not depend on the order streams are consumed in.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t domain,
                                 std::uint64_t index = 0) {
  return splitmix64(splitmix64(master ^ splitmix64(domain)) ^ index);
}

namespace seed_domain {
constexpr std::uint64_t train_instance = 0x11;
constexpr std::uint64_t eval_instance = 0x22;
constexpr std::uint64_t rank_pools = 0x33;
constexpr std::uint64_t rank_chunk = 0x44;
constexpr std::uint64_t rank_assignment = 0x55;
constexpr std::uint64_t graph_gen = 0x66;
}  // namespace seed_domain

// Uniform integer in [0, n), n >= 1.  Lemire's multiply-with-rejection;
// avoids std::uniform_int_distribution, whose output is not pinned by the
// standard.
inline std::uint64_t bounded(Rng& rng, std::uint64_t n) {
  using u128 = unsigned __int128;
  std::uint64_t x = rng();
  u128 m = u128(x) * u128(n);
  auto lo = static_cast<std::uint64_t>(m);
  if (lo < n) {
    const std::uint64_t t = (0 - n) % n;
    while (lo < t) {
      x = rng();
      m = u128(x) * u128(n);
      lo = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

// Uniform double in [0, 1); comparing '< p' is exact for p = 0 and p = 1.
inline double unit_double(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <typename T>
void fisher_yates(Rng& rng, std::vector<T>& v) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = bounded(rng, i);
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace infmax
