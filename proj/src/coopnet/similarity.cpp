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

#include "coopnet/similarity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <thread>
#include <unordered_map>

#include "coopnet/errors.hpp"
#include "coopnet/text.hpp"

namespace coopnet {

std::size_t hamming(const BitVector& a, const BitVector& b) {
  if (a.size() != b.size()) {
    throw DimensionError("hamming: lengths " + std::to_string(a.size()) +
                         " and " + std::to_string(b.size()));
  }
  const auto wa = a.words();
  const auto wb = b.words();
  std::size_t d = 0;
  for (std::size_t k = 0; k < wa.size(); ++k) {
    d += static_cast<std::size_t>(std::popcount(wa[k] ^ wb[k]));
  }
  return d;
}

namespace {

void check_weights(std::span<const double> w) {
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (!(w[j] >= 0.0) || !std::isfinite(w[j])) {
      throw WeightError("weight " + std::to_string(j) + " is " +
                        text::format_exact(w[j]) + "; must be finite and >= 0");
    }
  }
}

// Assumes lengths and weights were validated.
double weighted_hamming_unchecked(const BitVector& a, const BitVector& b,
                                  std::span<const double> w) {
  const auto wa = a.words();
  const auto wb = b.words();
  double d = 0.0;
  for (std::size_t k = 0; k < wa.size(); ++k) {
    auto diff = wa[k] ^ wb[k];
    while (diff != 0) {
      const auto bit = static_cast<std::size_t>(std::countr_zero(diff));
      d += w[k * 64 + bit];
      diff &= diff - 1;
    }
  }
  return d;
}

}  // namespace

double weighted_hamming(const BitVector& a, const BitVector& b,
                        std::span<const double> w) {
  if (a.size() != b.size() || w.size() != a.size()) {
    throw DimensionError("weighted_hamming: lengths " + std::to_string(a.size()) +
                         ", " + std::to_string(b.size()) + " and " +
                         std::to_string(w.size()) + " weights");
  }
  check_weights(w);
  return weighted_hamming_unchecked(a, b, w);
}

std::vector<double> attendance_weights(const AffiliationMatrix& m) {
  const auto counts = m.feature_counts();
  return {counts.begin(), counts.end()};
}

DistanceMatrix pairwise_distances(const AffiliationMatrix& m, DistanceMode mode,
                                  std::span<const double> weights,
                                  unsigned threads) {
  const std::size_t n = m.n_entities();
  DistanceMatrix d(n, mode);
  std::vector<double> default_weights;
  if (mode == DistanceMode::kWeighted) {
    if (weights.empty()) {
      default_weights = attendance_weights(m);
      weights = default_weights;
    }
    if (weights.size() != m.n_features()) {
      throw DimensionError("expected " + std::to_string(m.n_features()) +
                           " feature weights, got " +
                           std::to_string(weights.size()));
    }
    check_weights(weights);
  }

  // Rows are dealt round-robin; every cell is a pure function of two rows.
  auto work = [&](unsigned worker, unsigned n_workers) {
    for (std::size_t i = worker; i < n; i += n_workers) {
      const auto& ri = m.row_bits(i);
      for (std::size_t j = i + 1; j < n; ++j) {
        const auto& rj = m.row_bits(j);
        d.set(i, j, mode == DistanceMode::kPlain
                        ? static_cast<double>(hamming(ri, rj))
                        : weighted_hamming_unchecked(ri, rj, weights));
      }
    }
  };

  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  if (threads <= 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
  }
  return d;
}

SimilarityMatrix::SimilarityMatrix(std::size_t n,
                                   std::vector<SimilarityEntry> entries)
    : n_(n), entries_(std::move(entries)) {
  for (auto& e : entries_) {
    if (e.a > e.b) std::swap(e.a, e.b);
    if (e.a == e.b || e.b >= n_) {
      throw DataError("similarity entry (" + std::to_string(e.a) + "," +
                      std::to_string(e.b) + ") invalid for n=" +
                      std::to_string(n_));
    }
  }
  std::sort(entries_.begin(), entries_.end(), [](const auto& x, const auto& y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  });
  auto dup = std::adjacent_find(entries_.begin(), entries_.end(),
                                [](const auto& x, const auto& y) {
                                  return x.a == y.a && x.b == y.b;
                                });
  if (dup != entries_.end()) {
    throw DataError("duplicate similarity pair (" + std::to_string(dup->a) +
                    "," + std::to_string(dup->b) + ")");
  }
}

SimilarityMatrix reciprocal_similarity(const DistanceMatrix& d,
                                       ZeroPolicy policy) {
  std::vector<SimilarityEntry> entries;
  entries.reserve(d.condensed().size());
  for (std::size_t i = 0; i < d.n(); ++i) {
    for (std::size_t j = i + 1; j < d.n(); ++j) {
      const double dist = d(i, j);
      double s = 0.0;
      if (dist > 0.0) {
        // Weighted distances may fall in (0, 1); cap so s stays in (0, 1].
        s = dist >= 1.0 ? 1.0 / dist : 1.0;
      } else if (policy == ZeroPolicy::kCapToOne) {
        s = 1.0;
      } else {
        continue;
      }
      entries.push_back({static_cast<std::uint32_t>(i),
                         static_cast<std::uint32_t>(j), s});
    }
  }
  return SimilarityMatrix(d.n(), std::move(entries));
}

EmpiricalCDF::EmpiricalCDF(std::vector<double> sample) : sorted_(std::move(sample)) {
  std::erase_if(sorted_, [](double v) { return !std::isfinite(v); });
  if (sorted_.empty()) throw EmptySampleError("empirical CDF of an empty sample");
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCDF::operator()(double x) const noexcept {
  const auto rank = std::upper_bound(sorted_.begin(), sorted_.end(), x) -
                    sorted_.begin();
  return static_cast<double>(rank) / static_cast<double>(sorted_.size());
}

EmpiricalCDF empirical_cdf(const SimilarityMatrix& s) {
  std::vector<double> sample;
  sample.reserve(s.entries().size());
  for (const auto& e : s.entries()) sample.push_back(e.value);
  return EmpiricalCDF(std::move(sample));
}

std::size_t retained_target(std::size_t n, double q) {
  if (!(q >= 0.0 && q < 1.0)) {
    throw ConfigError("quantile must lie in [0, 1), got " + text::format_exact(q));
  }
  const double x = (1.0 - q) * static_cast<double>(n);
  if (x <= 0.0) return 0;
  const double k = std::ceil(x - 1e-9 * std::max(1.0, x));
  return std::min(n, std::max<std::size_t>(1, static_cast<std::size_t>(k)));
}

double quantile_cutoff(const EmpiricalCDF& cdf, double q) {
  const std::size_t n = cdf.size();
  const std::size_t k = retained_target(n, q);
  if (k >= n) {
    return std::nextafter(cdf.min(), -std::numeric_limits<double>::infinity());
  }
  return cdf.sorted()[n - k - 1];
}

SimilarityMatrix sparsify(const SimilarityMatrix& s, double cutoff) {
  SimilarityMatrix out;
  out.n_ = s.n_;
  for (const auto& e : s.entries_) {
    if (e.value > cutoff) out.entries_.push_back(e);
  }
  out.cutoff_ = cutoff;
  out.retained_fraction_ =
      s.entries_.empty() ? 0.0
                         : static_cast<double>(out.entries_.size()) /
                               static_cast<double>(s.entries_.size());
  return out;
}

void write_similarity(std::ostream& out, const SimilarityMatrix& s,
                      const std::vector<std::string>& entity_ids, int digits) {
  out << "entity_a,entity_b,similarity\n";
  for (const auto& e : s.entries()) {
    out << entity_ids.at(e.a) << ',' << entity_ids.at(e.b) << ','
        << (digits > 0 ? text::format_sig(e.value, digits)
                       : text::format_exact(e.value))
        << '\n';
  }
}

SimilarityMatrix read_similarity(std::istream& in,
                                 std::vector<std::string>& entity_ids,
                                 bool fixed_ids) {
  text::CsvReader reader(in);
  text::expect_header(reader, {"entity_a", "entity_b", "similarity"});
  std::unordered_map<std::string, std::uint32_t> index;
  for (std::size_t i = 0; i < entity_ids.size(); ++i) {
    index.emplace(entity_ids[i], static_cast<std::uint32_t>(i));
  }
  auto lookup = [&](const std::string& id) {
    auto it = index.find(id);
    if (it != index.end()) return it->second;
    if (fixed_ids) {
      throw ParseError(reader.line(), "unknown entity '" + id + "'");
    }
    const auto idx = static_cast<std::uint32_t>(entity_ids.size());
    entity_ids.push_back(id);
    index.emplace(id, idx);
    return idx;
  };
  std::vector<SimilarityEntry> entries;
  std::vector<std::string> fields;
  while (reader.next(fields)) {
    if (fields.size() != 3) {
      throw ParseError(reader.line(), "expected 3 fields, got " +
                                          std::to_string(fields.size()));
    }
    const auto a = lookup(fields[0]);
    const auto b = lookup(fields[1]);
    const auto v = text::parse_double(fields[2]);
    if (!v || !std::isfinite(*v)) {
      throw ParseError(reader.line(), "bad similarity '" + fields[2] + "'");
    }
    if (a == b) throw ParseError(reader.line(), "self pair '" + fields[0] + "'");
    entries.push_back({a, b, *v});
  }
  return SimilarityMatrix(entity_ids.size(), std::move(entries));
}

void write_cdf(std::ostream& out, const EmpiricalCDF& cdf) {
  out << "similarity,cdf\n";
  const auto s = cdf.sorted();
  const double n = static_cast<double>(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i + 1 < s.size() && s[i + 1] == s[i]) continue;
    out << text::format_exact(s[i]) << ','
        << text::format_exact(static_cast<double>(i + 1) / n) << '\n';
  }
}

}  // namespace coopnet
