// Copyright 2026 The epiphase Authors
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

#ifndef EPIPHASE_RNG_HPP_
#define EPIPHASE_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <random>

namespace epiphase {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derives an independent stream seed from a master seed and two indices.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(splitmix64(seed) ^ a) ^ b);
}

// Deterministic random source. The mt19937_64 sequence is pinned by the
// standard; the uniform and Gaussian transforms are implemented here because
// the standard distributions are implementation-defined and would break
// bit-reproducibility of seeded experiments.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Standard normal via Marsaglia's polar method; one value per call.
  double gaussian() {
    for (;;) {
      const double u = 2.0 * uniform01() - 1.0;
      const double v = 2.0 * uniform01() - 1.0;
      const double q = u * u + v * v;
      if (q > 0.0 && q < 1.0) {
        return u * std::sqrt(-2.0 * std::log(q) / q);
      }
    }
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace epiphase

#endif  // EPIPHASE_RNG_HPP_
