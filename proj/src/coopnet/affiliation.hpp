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

#ifndef COOPNET_AFFILIATION_HPP_
#define COOPNET_AFFILIATION_HPP_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "coopnet/bitvector.hpp"

namespace coopnet {

struct Cell {
  std::uint32_t entity = 0;
  std::uint32_t feature = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
};

// Binary entities x features incidence matrix (students x courses).
//
// Cells are kept in ingest order so the matrix can be written back out and
// reloaded with identical index assignment. Per-entity rows are sorted
// feature indices; packed bit rows back the distance kernels.
class AffiliationMatrix {
 public:
  AffiliationMatrix() = default;

  // Throws DataError if a cell is out of range or duplicated, or if ids are
  // not unique.
  AffiliationMatrix(std::vector<std::string> entity_ids,
                    std::vector<std::string> feature_ids,
                    std::vector<Cell> cells);

  std::size_t n_entities() const noexcept { return entity_ids_.size(); }
  std::size_t n_features() const noexcept { return feature_ids_.size(); }
  std::size_t n_cells() const noexcept { return cells_.size(); }

  const std::vector<std::string>& entity_ids() const noexcept {
    return entity_ids_;
  }
  const std::vector<std::string>& feature_ids() const noexcept {
    return feature_ids_;
  }
  std::span<const Cell> cells() const noexcept { return cells_; }

  std::span<const std::uint32_t> row(std::size_t entity) const noexcept {
    return rows_[entity];
  }
  const BitVector& row_bits(std::size_t entity) const noexcept {
    return bits_[entity];
  }

  // Number of entities holding each feature.
  std::vector<std::size_t> feature_counts() const;

 private:
  std::vector<std::string> entity_ids_;
  std::vector<std::string> feature_ids_;
  std::vector<Cell> cells_;
  std::vector<std::vector<std::uint32_t>> rows_;
  std::vector<BitVector> bits_;
};

// Accumulates declarations, assigning indices in first-appearance order and
// collapsing repeated (entity, feature) pairs to a single cell.
class AffiliationBuilder {
 public:
  // Returns false when the pair was already present.
  bool add(std::string_view entity, std::string_view feature);

  std::size_t declarations() const noexcept { return declarations_; }
  std::size_t duplicates() const noexcept { return duplicates_; }

  AffiliationMatrix build() &&;

 private:
  static std::uint32_t intern(std::string_view id,
                              std::unordered_map<std::string, std::uint32_t>& index,
                              std::vector<std::string>& ids);

  std::unordered_map<std::string, std::uint32_t> entity_index_;
  std::unordered_map<std::string, std::uint32_t> feature_index_;
  std::vector<std::string> entity_ids_;
  std::vector<std::string> feature_ids_;
  std::vector<Cell> cells_;
  std::unordered_set<std::uint64_t> seen_;
  std::size_t declarations_ = 0;
  std::size_t duplicates_ = 0;
};

struct IngestDiagnostics {
  std::size_t declarations = 0;
  std::size_t duplicates = 0;
};

struct LoadedAffiliation {
  AffiliationMatrix matrix;
  IngestDiagnostics diagnostics;
};

// Reads `entity_id,feature_id` rows. Throws ParseError (with line number) on
// malformed rows and EmptyDatasetError when there is no record.
LoadedAffiliation load_affiliation(std::istream& in);

// Writes cells in ingest order, so load_affiliation reproduces the matrix.
void write_affiliation(std::ostream& out, const AffiliationMatrix& m);

struct GradeScale {
  double min = 0.0;
  double max = 5.0;
};

struct EntityMetadata {
  std::string entity_id;
  std::optional<double> grade;
  std::optional<std::string> label;

  friend bool operator==(const EntityMetadata&, const EntityMetadata&) = default;
};

struct MetadataOptions {
  GradeScale scale;
  // Declared label set; empty accepts any label.
  std::vector<std::string> label_set;
};

// Reads `entity_id,grade,label` rows; an empty field is absent.
// Throws RangeError for grades off the scale and LabelSetError for labels
// outside the declared set.
std::vector<EntityMetadata> load_metadata(std::istream& in,
                                          const MetadataOptions& options);

void write_metadata(std::ostream& out, std::span<const EntityMetadata> meta);

// Reorders metadata to matrix entity order. Entities without a record get an
// empty one; a record naming an unknown entity is a DataError.
std::vector<EntityMetadata> align_metadata(
    const std::vector<std::string>& entity_ids,
    std::span<const EntityMetadata> meta);

struct MatrixStats {
  std::size_t n_entities = 0;
  std::size_t n_features = 0;
  std::size_t n_cells = 0;
  double density = 0.0;
  std::size_t max_feature_count = 0;
  std::size_t features_attended_once = 0;
  // histogram[c] = number of features held by exactly c entities.
  std::vector<std::size_t> histogram;

  std::size_t features_above(std::size_t threshold) const;
};

MatrixStats matrix_stats(const AffiliationMatrix& m);

}  // namespace coopnet

#endif  // COOPNET_AFFILIATION_HPP_
