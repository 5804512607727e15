// Copyright 2026 The nilelab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nilelab/rng.hpp"

#include <cmath>
#include <sstream>

#include "nilelab/error.hpp"

namespace nilelab {

std::string StreamId::to_string() const {
  std::ostringstream os;
  os << "seed=" << master_seed << "/key=" << std::hex << key;
  return os.str();
}

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_key(std::initializer_list<std::uint64_t> path) noexcept {
  std::uint64_t key = 0x6a09e667f3bcc908ULL;
  for (std::uint64_t step : path) key = mix64(key ^ mix64(step));
  return key;
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t key)
    : id_{master_seed, key},
      engine_(mix64(master_seed) ^ mix64(key + 0x2545f4914f6cdd1dULL)) {}

double RngStream::uniform01() {
  // 53 random bits mapped to the midpoints of a 2^-53 grid.
  constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
  return (static_cast<double>(engine_() >> 11) + 0.5) * kScale;
}

double RngStream::exponential(double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) throw DomainError("exponential rate must be positive");
  return -std::log1p(-uniform01()) / rate;
}

}  // namespace nilelab
