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

#include "coopnet/affiliation.hpp"

#include <algorithm>
#include <unordered_set>

#include "coopnet/errors.hpp"
#include "coopnet/text.hpp"

namespace coopnet {
namespace {

void check_unique(const std::vector<std::string>& ids, const char* what) {
  std::unordered_set<std::string_view> seen;
  for (const auto& id : ids) {
    if (id.empty()) throw DataError(std::string("empty ") + what + " id");
    if (!seen.insert(id).second) {
      throw DataError(std::string("duplicate ") + what + " id '" + id + "'");
    }
  }
}

std::uint64_t cell_key(std::uint32_t entity, std::uint32_t feature) {
  return (std::uint64_t{entity} << 32) | feature;
}

}  // namespace

AffiliationMatrix::AffiliationMatrix(std::vector<std::string> entity_ids,
                                     std::vector<std::string> feature_ids,
                                     std::vector<Cell> cells)
    : entity_ids_(std::move(entity_ids)),
      feature_ids_(std::move(feature_ids)),
      cells_(std::move(cells)) {
  check_unique(entity_ids_, "entity");
  check_unique(feature_ids_, "feature");
  rows_.resize(entity_ids_.size());
  bits_.assign(entity_ids_.size(), BitVector(feature_ids_.size()));
  for (const auto& c : cells_) {
    if (c.entity >= entity_ids_.size() || c.feature >= feature_ids_.size()) {
      throw DataError("cell (" + std::to_string(c.entity) + "," +
                      std::to_string(c.feature) + ") out of range");
    }
    if (bits_[c.entity].test(c.feature)) {
      throw DataError("duplicate cell (" + std::to_string(c.entity) + "," +
                      std::to_string(c.feature) + ")");
    }
    bits_[c.entity].set(c.feature);
    rows_[c.entity].push_back(c.feature);
  }
  for (auto& r : rows_) std::sort(r.begin(), r.end());
}

std::vector<std::size_t> AffiliationMatrix::feature_counts() const {
  std::vector<std::size_t> counts(n_features(), 0);
  for (const auto& c : cells_) ++counts[c.feature];
  return counts;
}

std::uint32_t AffiliationBuilder::intern(
    std::string_view id, std::unordered_map<std::string, std::uint32_t>& index,
    std::vector<std::string>& ids) {
  auto [it, inserted] =
      index.try_emplace(std::string(id), static_cast<std::uint32_t>(ids.size()));
  if (inserted) ids.emplace_back(id);
  return it->second;
}

bool AffiliationBuilder::add(std::string_view entity, std::string_view feature) {
  ++declarations_;
  const auto e = intern(entity, entity_index_, entity_ids_);
  const auto f = intern(feature, feature_index_, feature_ids_);
  if (!seen_.insert(cell_key(e, f)).second) {
    ++duplicates_;
    return false;
  }
  cells_.push_back({e, f});
  return true;
}

AffiliationMatrix AffiliationBuilder::build() && {
  return AffiliationMatrix(std::move(entity_ids_), std::move(feature_ids_),
                           std::move(cells_));
}

LoadedAffiliation load_affiliation(std::istream& in) {
  text::CsvReader reader(in);
  text::expect_header(reader, {"entity_id", "feature_id"});
  AffiliationBuilder builder;
  std::vector<std::string> fields;
  while (reader.next(fields)) {
    if (fields.size() != 2) {
      throw ParseError(reader.line(), "expected 2 fields, got " +
                                          std::to_string(fields.size()));
    }
    if (fields[0].empty() || fields[1].empty()) {
      throw ParseError(reader.line(), "empty identifier");
    }
    builder.add(fields[0], fields[1]);
  }
  if (builder.declarations() == 0) throw EmptyDatasetError("no declarations");
  LoadedAffiliation out;
  out.diagnostics = {builder.declarations(), builder.duplicates()};
  out.matrix = std::move(builder).build();
  return out;
}

void write_affiliation(std::ostream& out, const AffiliationMatrix& m) {
  out << "entity_id,feature_id\n";
  for (const auto& c : m.cells()) {
    out << m.entity_ids()[c.entity] << ',' << m.feature_ids()[c.feature] << '\n';
  }
}

std::vector<EntityMetadata> load_metadata(std::istream& in,
                                          const MetadataOptions& options) {
  text::CsvReader reader(in);
  text::expect_header(reader, {"entity_id", "grade", "label"});
  std::vector<EntityMetadata> out;
  std::unordered_set<std::string> seen;
  std::vector<std::string> fields;
  while (reader.next(fields)) {
    if (fields.size() != 3) {
      throw ParseError(reader.line(), "expected 3 fields, got " +
                                          std::to_string(fields.size()));
    }
    EntityMetadata rec;
    rec.entity_id = fields[0];
    if (rec.entity_id.empty()) throw ParseError(reader.line(), "empty entity id");
    if (!seen.insert(rec.entity_id).second) {
      throw ParseError(reader.line(),
                       "duplicate metadata for '" + rec.entity_id + "'");
    }
    if (!fields[1].empty()) {
      auto g = text::parse_double(fields[1]);
      if (!g) throw ParseError(reader.line(), "bad grade '" + fields[1] + "'");
      if (!(*g >= options.scale.min && *g <= options.scale.max)) {
        throw RangeError("line " + std::to_string(reader.line()) + ": grade " +
                         fields[1] + " outside [" +
                         text::format_exact(options.scale.min) + ", " +
                         text::format_exact(options.scale.max) + "]");
      }
      rec.grade = *g;
    }
    if (!fields[2].empty()) {
      const auto& ls = options.label_set;
      if (!ls.empty() && std::find(ls.begin(), ls.end(), fields[2]) == ls.end()) {
        throw LabelSetError("line " + std::to_string(reader.line()) +
                            ": unknown label '" + fields[2] + "'");
      }
      rec.label = fields[2];
    }
    out.push_back(std::move(rec));
  }
  return out;
}

void write_metadata(std::ostream& out, std::span<const EntityMetadata> meta) {
  out << "entity_id,grade,label\n";
  for (const auto& m : meta) {
    out << m.entity_id << ',';
    if (m.grade) out << text::format_exact(*m.grade);
    out << ',';
    if (m.label) out << *m.label;
    out << '\n';
  }
}

std::vector<EntityMetadata> align_metadata(
    const std::vector<std::string>& entity_ids,
    std::span<const EntityMetadata> meta) {
  std::unordered_map<std::string_view, std::size_t> index;
  std::vector<EntityMetadata> out(entity_ids.size());
  for (std::size_t i = 0; i < entity_ids.size(); ++i) {
    index.emplace(entity_ids[i], i);
    out[i].entity_id = entity_ids[i];
  }
  for (const auto& m : meta) {
    auto it = index.find(m.entity_id);
    if (it == index.end()) {
      throw DataError("metadata names unknown entity '" + m.entity_id + "'");
    }
    out[it->second] = m;
  }
  return out;
}

std::size_t MatrixStats::features_above(std::size_t threshold) const {
  std::size_t n = 0;
  for (std::size_t c = threshold + 1; c < histogram.size(); ++c) n += histogram[c];
  return n;
}

MatrixStats matrix_stats(const AffiliationMatrix& m) {
  MatrixStats s;
  s.n_entities = m.n_entities();
  s.n_features = m.n_features();
  s.n_cells = m.n_cells();
  const double total =
      static_cast<double>(m.n_entities()) * static_cast<double>(m.n_features());
  s.density = total > 0 ? static_cast<double>(m.n_cells()) / total : 0.0;
  const auto counts = m.feature_counts();
  for (auto c : counts) s.max_feature_count = std::max(s.max_feature_count, c);
  s.histogram.assign(s.max_feature_count + 1, 0);
  for (auto c : counts) ++s.histogram[c];
  s.features_attended_once = s.histogram.size() > 1 ? s.histogram[1] : 0;
  return s;
}

}  // namespace coopnet
