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

#ifndef NILELAB_RNG_HPP_
#define NILELAB_RNG_HPP_

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string>

namespace nilelab {

// Identifies one substream: the master seed plus a derivation path.
struct StreamId {
  std::uint64_t master_seed = 0;
  std::uint64_t key = 0;

  std::string to_string() const;
  friend bool operator==(const StreamId&, const StreamId&) = default;
};

// SplitMix64 finalizer. Used for counter-based substream derivation.
std::uint64_t mix64(std::uint64_t x) noexcept;

// Derives a substream key from a path of counters, e.g. {grid_index, block}.
// Distinct paths give statistically independent streams.
std::uint64_t derive_key(std::initializer_list<std::uint64_t> path) noexcept;

// A seeded random stream owned by exactly one caller at a time.
//
// Draws are a pure function of the StreamId and the sequence of calls, so a
// simulation partitioned into fixed substreams reproduces bit-for-bit
// regardless of how the substreams are scheduled onto threads.
class RngStream {
 public:
  using result_type = std::mt19937_64::result_type;

  explicit RngStream(std::uint64_t master_seed, std::uint64_t key = 0);
  explicit RngStream(StreamId id) : RngStream(id.master_seed, id.key) {}

  const StreamId& id() const noexcept { return id_; }

  // Uniform on the open interval (0, 1); never returns 0 or 1.
  double uniform01();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  double standard_normal() { return normal_(engine_); }
  // Inverse-CDF exponential draw with the given rate.
  double exponential(double rate);

  // UniformRandomBitGenerator interface.
  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

 private:
  StreamId id_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

}  // namespace nilelab

#endif  // NILELAB_RNG_HPP_
