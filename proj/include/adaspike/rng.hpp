// Copyright 2026 The Adaspike Authors. All Rights Reserved.
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

#ifndef ADASPIKE_RNG_HPP
#define ADASPIKE_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace adaspike {

// Stateless 64-bit mix (splitmix64). Used to derive independent
// sub-streams from one top-level seed.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Keyed variant: independent value per (seed, key) pair.
inline std::uint64_t mix64(std::uint64_t seed, std::uint64_t key) {
  return mix64(seed ^ mix64(key + 0x6a09e667f3bcc909ULL));
}

// Maps 64 random bits onto [0, 1) using the top 53 bits.
inline double uniform01(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Deterministic normal deviates. std::normal_distribution is
// implementation-defined, so Box-Muller is done by hand on top of the
// fully specified mt19937_64.
class GaussianRng {
 public:
  explicit GaussianRng(std::uint64_t seed) : engine_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform01(engine_());
    } while (u1 <= 0.0);
    const double u2 = uniform01(engine_());
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  double uniform() { return uniform01(engine_()); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace adaspike

#endif  // ADASPIKE_RNG_HPP
