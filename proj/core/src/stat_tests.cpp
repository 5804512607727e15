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

#include "nilelab/stat_tests.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>

#include "nilelab/error.hpp"

namespace nilelab {

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double chi_square_sf(double x, double dof) {
  if (!(dof > 0.0)) throw InputError("chi-square needs positive degrees of freedom");
  if (x <= 0.0) return 1.0;
  return boost::math::gamma_q(0.5 * dof, 0.5 * x);
}

Moments describe(std::span<const double> values) {
  if (values.size() < 2) throw InputError("describe needs at least two values");
  const double n = static_cast<double>(values.size());
  double sum = 0.0, sum_sq = 0.0;
  for (double v : values) {
    sum += v;
    sum_sq += v * v;
  }
  Moments m;
  m.count = values.size();
  m.mean = sum / n;
  m.mean_square = sum_sq / n;
  double m2 = 0.0, m4 = 0.0, sq_dev = 0.0;
  for (double v : values) {
    const double d = v - m.mean;
    const double d2 = d * d;
    m2 += d2;
    m4 += d2 * d2;
    const double s = v * v - m.mean_square;
    sq_dev += s * s;
  }
  m.variance = m2 / (n - 1.0);
  m.mean_se = std::sqrt(m.variance / n);
  const double pop_var = m2 / n;
  m.variance_se = std::sqrt(std::max(0.0, m4 / n - pop_var * pop_var) / n);
  m.mean_square_se = std::sqrt(sq_dev / (n - 1.0) / n);
  return m;
}

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw InputError("KS test needs two nonempty samples");
  std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  return d;
}

double ks_critical_value(std::size_t n, std::size_t m, double alpha) {
  const double c = std::sqrt(-0.5 * std::log(0.5 * alpha));
  const double dn = static_cast<double>(n), dm = static_cast<double>(m);
  return c * std::sqrt((dn + dm) / (dn * dm));
}

QuantileBinning quantile_bins(std::span<const double> values, std::size_t bins) {
  if (values.empty() || bins == 0) throw InputError("binning needs values and bins");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> cuts;
  for (std::size_t k = 1; k < bins; ++k) {
    cuts.push_back(sorted[(sorted.size() * k) / bins]);
  }
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  QuantileBinning out;
  out.index.resize(values.size());
  std::vector<std::size_t> counts(cuts.size() + 1, 0);
  for (std::size_t i = 0; i < values.size(); ++i) {
    out.index[i] = static_cast<std::size_t>(
        std::upper_bound(cuts.begin(), cuts.end(), values[i]) - cuts.begin());
    ++counts[out.index[i]];
  }
  std::vector<std::size_t> remap(counts.size(), 0);
  for (std::size_t b = 0; b < counts.size(); ++b) {
    remap[b] = out.bin_count;
    if (counts[b] > 0) ++out.bin_count;
  }
  for (std::size_t& idx : out.index) idx = remap[idx];
  return out;
}

namespace {

using Table = std::vector<std::vector<double>>;

Table transpose(const Table& t) {
  Table out(t.empty() ? 0 : t[0].size(), std::vector<double>(t.size()));
  for (std::size_t r = 0; r < t.size(); ++r) {
    for (std::size_t c = 0; c < t[r].size(); ++c) out[c][r] = t[r][c];
  }
  return out;
}

double min_expected_count(const Table& t) {
  double total = 0.0;
  std::vector<double> rows(t.size(), 0.0), cols(t[0].size(), 0.0);
  for (std::size_t r = 0; r < t.size(); ++r) {
    for (std::size_t c = 0; c < t[r].size(); ++c) {
      rows[r] += t[r][c];
      cols[c] += t[r][c];
      total += t[r][c];
    }
  }
  const double rmin = *std::min_element(rows.begin(), rows.end());
  const double cmin = *std::min_element(cols.begin(), cols.end());
  return rmin * cmin / total;
}

// Merges the row with the smallest total into its smaller neighbour.
void merge_smallest_row(Table& t) {
  std::vector<double> totals(t.size(), 0.0);
  for (std::size_t r = 0; r < t.size(); ++r) {
    for (double v : t[r]) totals[r] += v;
  }
  const std::size_t r = static_cast<std::size_t>(
      std::min_element(totals.begin(), totals.end()) - totals.begin());
  std::size_t into;
  if (r == 0) {
    into = 1;
  } else if (r + 1 == t.size()) {
    into = r - 1;
  } else {
    into = totals[r - 1] <= totals[r + 1] ? r - 1 : r + 1;
  }
  for (std::size_t c = 0; c < t[r].size(); ++c) t[into][c] += t[r][c];
  t.erase(t.begin() + static_cast<std::ptrdiff_t>(r));
}

}  // namespace

ContingencyTest chi_square_independence(std::span<const double> a,
                                        std::span<const double> b,
                                        std::size_t bins, double min_expected) {
  if (a.size() != b.size()) throw InputError("paired samples differ in length");
  if (a.empty()) throw InputError("independence test of empty samples");
  const QuantileBinning ba = quantile_bins(a, bins);
  const QuantileBinning bb = quantile_bins(b, bins);
  Table table(ba.bin_count, std::vector<double>(bb.bin_count, 0.0));
  for (std::size_t i = 0; i < a.size(); ++i) table[ba.index[i]][bb.index[i]] += 1.0;

  while (table.size() > 1 && table[0].size() > 1 &&
         min_expected_count(table) < min_expected) {
    // Merge along whichever axis holds the smaller margin.
    Table tt = transpose(table);
    double row_min = HUGE_VAL, col_min = HUGE_VAL;
    for (const auto& row : table) {
      double s = 0.0;
      for (double v : row) s += v;
      row_min = std::min(row_min, s);
    }
    for (const auto& col : tt) {
      double s = 0.0;
      for (double v : col) s += v;
      col_min = std::min(col_min, s);
    }
    if (row_min <= col_min) {
      merge_smallest_row(table);
    } else {
      merge_smallest_row(tt);
      table = transpose(tt);
    }
  }

  ContingencyTest result;
  result.rows = table.size();
  result.cols = table.empty() ? 0 : table[0].size();
  if (result.rows < 2 || result.cols < 2) return result;

  double total = 0.0;
  std::vector<double> rows(result.rows, 0.0), cols(result.cols, 0.0);
  for (std::size_t r = 0; r < result.rows; ++r) {
    for (std::size_t c = 0; c < result.cols; ++c) {
      rows[r] += table[r][c];
      cols[c] += table[r][c];
      total += table[r][c];
    }
  }
  double stat = 0.0;
  for (std::size_t r = 0; r < result.rows; ++r) {
    for (std::size_t c = 0; c < result.cols; ++c) {
      const double expected = rows[r] * cols[c] / total;
      const double d = table[r][c] - expected;
      stat += d * d / expected;
    }
  }
  result.statistic = stat;
  result.dof = static_cast<double>((result.rows - 1) * (result.cols - 1));
  result.p_value = chi_square_sf(stat, result.dof);
  return result;
}

}  // namespace nilelab
