// Copyright 2026 The coopnet Authors
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

#ifndef COOPNET_SIMILARITY_HPP_
#define COOPNET_SIMILARITY_HPP_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "coopnet/affiliation.hpp"
#include "coopnet/bitvector.hpp"

namespace coopnet {

enum class DistanceMode { kPlain, kWeighted };

// What reciprocal_similarity does with identical profiles (distance 0).
enum class ZeroPolicy { kCapToOne, kExcludePair };

// Number of positions where a and b differ. Throws DimensionError on a length
// mismatch.
std::size_t hamming(const BitVector& a, const BitVector& b);

// Sum of w[j] over differing positions j. Throws DimensionError on a length
// mismatch and WeightError on a negative (or NaN) weight.
double weighted_hamming(const BitVector& a, const BitVector& b,
                        std::span<const double> w);

// Upper triangle of a symmetric distance matrix with zero diagonal, stored
// row-major in condensed form.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  DistanceMatrix(std::size_t n, DistanceMode mode)
      : n_(n), mode_(mode), values_(n < 2 ? 0 : n * (n - 1) / 2, 0.0) {}

  std::size_t n() const noexcept { return n_; }
  DistanceMode mode() const noexcept { return mode_; }

  double operator()(std::size_t i, std::size_t j) const noexcept {
    if (i == j) return 0.0;
    if (i > j) std::swap(i, j);
    return values_[index(i, j)];
  }
  void set(std::size_t i, std::size_t j, double d) noexcept {
    if (i > j) std::swap(i, j);
    values_[index(i, j)] = d;
  }

  std::span<const double> condensed() const noexcept { return values_; }

 private:
  std::size_t index(std::size_t i, std::size_t j) const noexcept {
    return i * n_ - i * (i + 1) / 2 + (j - i - 1);
  }

  std::size_t n_ = 0;
  DistanceMode mode_ = DistanceMode::kPlain;
  std::vector<double> values_;
};

// Per-feature attendance counts as weights.
std::vector<double> attendance_weights(const AffiliationMatrix& m);

// All i<j distances. Weighted mode with empty `weights` uses
// attendance_weights(m). `threads` = 0 picks hardware concurrency; the result
// does not depend on it.
DistanceMatrix pairwise_distances(const AffiliationMatrix& m, DistanceMode mode,
                                  std::span<const double> weights = {},
                                  unsigned threads = 1);

struct SimilarityEntry {
  std::uint32_t a = 0;  // a < b
  std::uint32_t b = 0;
  double value = 0.0;

  friend bool operator==(const SimilarityEntry&, const SimilarityEntry&) = default;
};

// Sparse upper triangle of pairwise similarities, entries sorted by (a, b).
// A dense matrix holds every pair the zero policy kept; a thresholded one
// only the pairs strictly above its cutoff.
class SimilarityMatrix {
 public:
  SimilarityMatrix() = default;
  SimilarityMatrix(std::size_t n, std::vector<SimilarityEntry> entries);

  std::size_t n() const noexcept { return n_; }
  std::span<const SimilarityEntry> entries() const noexcept { return entries_; }
  bool thresholded() const noexcept { return cutoff_.has_value(); }
  std::optional<double> cutoff() const noexcept { return cutoff_; }
  // Retained entries over entries before thresholding (1 when dense).
  double retained_fraction() const noexcept { return retained_fraction_; }

 private:
  friend SimilarityMatrix sparsify(const SimilarityMatrix&, double);

  std::size_t n_ = 0;
  std::vector<SimilarityEntry> entries_;
  std::optional<double> cutoff_;
  double retained_fraction_ = 1.0;
};

SimilarityMatrix reciprocal_similarity(const DistanceMatrix& d,
                                       ZeroPolicy policy = ZeroPolicy::kCapToOne);

// Step-function distribution F(x) = #{sample <= x} / N.
class EmpiricalCDF {
 public:
  // Throws EmptySampleError when no finite value remains.
  explicit EmpiricalCDF(std::vector<double> sample);

  double operator()(double x) const noexcept;
  std::size_t size() const noexcept { return sorted_.size(); }
  std::span<const double> sorted() const noexcept { return sorted_; }
  double min() const noexcept { return sorted_.front(); }
  double max() const noexcept { return sorted_.back(); }

 private:
  std::vector<double> sorted_;
};

EmpiricalCDF empirical_cdf(const SimilarityMatrix& s);

// Number of largest values a q-quantile cutoff keeps: ceil((1 - q) * N),
// evaluated so that exact products such as 0.05 * 10000 are not pushed over an
// integer by rounding in 1 - q.
std::size_t retained_target(std::size_t n, double q);

// Order-statistic cutoff. With k = retained_target(N, q), returns the
// (k+1)-th largest sample value, so keeping values strictly above it keeps at
// most k of them (exactly k without ties). When k = N the result lies just
// below the minimum. Throws ConfigError unless 0 <= q < 1.
double quantile_cutoff(const EmpiricalCDF& cdf, double q);

// Keeps exactly the pairs with value > cutoff. An empty result is legal;
// callers surface it as a warning.
SimilarityMatrix sparsify(const SimilarityMatrix& s, double cutoff);

// `entity_a,entity_b,similarity`; digits = 0 writes exact round-trip values,
// otherwise that many significant digits.
void write_similarity(std::ostream& out, const SimilarityMatrix& s,
                      const std::vector<std::string>& entity_ids, int digits);

// Reads the CSV above. Ids not yet in `entity_ids` are appended in first
// appearance order unless `fixed_ids` is set, in which case they are errors.
SimilarityMatrix read_similarity(std::istream& in,
                                 std::vector<std::string>& entity_ids,
                                 bool fixed_ids);

// `similarity,cdf` at each distinct sample value.
void write_cdf(std::ostream& out, const EmpiricalCDF& cdf);

}  // namespace coopnet

#endif  // COOPNET_SIMILARITY_HPP_
