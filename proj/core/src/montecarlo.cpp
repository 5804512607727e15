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

#include "nilelab/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "nilelab/error.hpp"

namespace nilelab {

void MCConfig::validate() const {
  if (replicates < 2) throw InputError("replicates: must be at least 2");
  if (n == 0) throw InputError("n: must be at least 1");
  if (workers == 0) throw InputError("workers: must be at least 1");
  for (double t : theta_grid) {
    if (!std::isfinite(t)) throw InputError("grid: values must be finite");
  }
}

SimulationTable::SimulationTable(std::size_t width, std::vector<double> values,
                                 std::size_t excluded)
    : width_(width), values_(std::move(values)), excluded_(excluded) {}

std::vector<double> SimulationTable::column(std::size_t j) const {
  std::vector<double> out(rows());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = values_[i * width_ + j];
  return out;
}

namespace {

struct BlockResult {
  std::vector<double> values;
  std::size_t excluded = 0;
  std::exception_ptr error;
};

void run_block(const MCConfig& config, std::uint64_t tag, std::size_t width,
               const ReplicateFn& fn, std::size_t block, BlockResult& out) {
  const std::size_t first = block * kReplicateBlock;
  const std::size_t last = std::min(config.replicates, first + kReplicateBlock);
  RngStream stream(config.master_seed, derive_key({tag, block}));
  out.values.reserve((last - first) * width);
  std::vector<double> row(width);
  try {
    for (std::size_t r = first; r < last; ++r) {
      bool accepted = false;
      try {
        accepted = fn(stream, row);
      } catch (const DegenerateSampleError&) {
        accepted = false;
      } catch (const NearSingularError&) {
        accepted = false;
      }
      if (accepted) {
        out.values.insert(out.values.end(), row.begin(), row.end());
      } else {
        ++out.excluded;
      }
    }
  } catch (...) {
    out.error = std::current_exception();
  }
}

}  // namespace

SimulationTable simulate(const MCConfig& config, std::uint64_t tag,
                         std::size_t width, const ReplicateFn& fn) {
  config.validate();
  if (width == 0) throw InputError("replicate width must be positive");
  const std::size_t blocks =
      (config.replicates + kReplicateBlock - 1) / kReplicateBlock;
  std::vector<BlockResult> results(blocks);

  const std::size_t threads = std::min(config.workers, blocks);
  if (threads <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) run_block(config, tag, width, fn, b, results[b]);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t b = next++; b < blocks; b = next++) {
          run_block(config, tag, width, fn, b, results[b]);
        }
      });
    }
    for (std::thread& th : pool) th.join();
  }

  std::size_t excluded = 0, total = 0;
  for (const BlockResult& r : results) {
    if (r.error) std::rethrow_exception(r.error);
    excluded += r.excluded;
    total += r.values.size();
  }
  std::vector<double> values;
  values.reserve(total);
  for (BlockResult& r : results) {
    values.insert(values.end(), r.values.begin(), r.values.end());
  }
  return SimulationTable(width, std::move(values), excluded);
}

}  // namespace nilelab
