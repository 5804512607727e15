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

#ifndef NILELAB_MONTECARLO_HPP_
#define NILELAB_MONTECARLO_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "nilelab/rng.hpp"

namespace nilelab {

struct MCConfig {
  std::uint64_t master_seed = 42;
  std::size_t replicates = 100000;
  std::vector<double> theta_grid;
  std::size_t n = 1;
  std::size_t workers = 1;

  // Throws InputError naming the offending field.
  void validate() const;
};

// Replicates are generated in blocks of this many; block b of a run draws
// from the substream derive_key({tag, b}). The partition depends only on
// the replicate count, never on the worker count.
inline constexpr std::size_t kReplicateBlock = 4096;

// Fills `row` with the values of one replicate. Returning false (or
// throwing DegenerateSampleError / NearSingularError) excludes the
// replicate and counts it.
using ReplicateFn = std::function<bool(RngStream&, std::span<double> row)>;

// Accepted replicates in replicate order, row-major.
class SimulationTable {
 public:
  SimulationTable(std::size_t width, std::vector<double> values,
                  std::size_t excluded);

  std::size_t width() const noexcept { return width_; }
  std::size_t rows() const noexcept { return width_ == 0 ? 0 : values_.size() / width_; }
  std::size_t excluded() const noexcept { return excluded_; }
  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * width_, width_};
  }
  std::vector<double> column(std::size_t j) const;

 private:
  std::size_t width_;
  std::vector<double> values_;
  std::size_t excluded_;
};

// Runs config.replicates replicates of `fn` on config.workers threads.
// Output is bit-identical for a fixed (master_seed, tag) whatever the
// worker count. Exceptions other than the exclusion kinds propagate; when
// several blocks fail, the earliest block's exception wins.
SimulationTable simulate(const MCConfig& config, std::uint64_t tag,
                         std::size_t width, const ReplicateFn& fn);

}  // namespace nilelab

#endif  // NILELAB_MONTECARLO_HPP_
