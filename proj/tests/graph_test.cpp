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

#include <gtest/gtest.h>

#include <map>
#include <regex>
#include <sstream>

#include "coopnet/errors.hpp"
#include "coopnet/graph.hpp"
#include "coopnet/similarity.hpp"
#include "coopnet/text.hpp"
#include "test_util.hpp"

namespace coopnet {
namespace {

using testing::make_graph;
using testing::numbered_ids;

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + 1)) {
    ++n;
  }
  return n;
}

std::string export_to_string(const Graph& g, ExportFormat f,
                             std::span<const Point> pos = {},
                             std::span<const int> com = {}) {
  std::ostringstream out;
  export_graph(out, g, f, pos, com);
  return out.str();
}

TEST(GraphTest, NormalizesAndIndexes) {
  const Graph g(numbered_ids(4), {{2, 0, 1.5}, {1, 3, 2.0}, {0, 1, 1.0}});
  ASSERT_EQ(g.m(), 3u);
  EXPECT_EQ(g.edges()[0], (Edge{0, 1, 1.0}));
  EXPECT_EQ(g.edges()[1], (Edge{0, 2, 1.5}));
  EXPECT_EQ(g.degree(0), 2u);
  EXPECT_DOUBLE_EQ(g.weighted_degree(0), 2.5);
  EXPECT_DOUBLE_EQ(g.total_weight(), 4.5);
  ASSERT_EQ(g.neighbors(1).size(), 2u);
  EXPECT_EQ(g.neighbors(1)[0].node, 0u);
  EXPECT_EQ(g.neighbors(1)[1].node, 3u);
}

TEST(GraphTest, RejectsInvalidEdges) {
  EXPECT_THROW(Graph(numbered_ids(2), {{0, 0, 1.0}}), DataError);
  EXPECT_THROW(Graph(numbered_ids(2), {{0, 1, 1.0}, {1, 0, 1.0}}), DataError);
  EXPECT_THROW(Graph(numbered_ids(2), {{0, 2, 1.0}}), DataError);
  EXPECT_THROW(Graph(numbered_ids(2), {{0, 1, 0.0}}), DataError);
  EXPECT_THROW(Graph(numbered_ids(2), {{0, 1, -1.0}}), DataError);
  EXPECT_THROW(Graph(numbered_ids(2), {{0, 1, HUGE_VAL}}), DataError);
}

TEST(GraphTest, BuildFromSimilarityKeepsIsolatedNodes) {
  const SimilarityMatrix s(4, {{0, 2, 0.5}, {1, 2, 0.25}});
  const auto ids = numbered_ids(4, "s");
  const auto g = build_graph(s, ids, Weighting::kSimilarity);
  EXPECT_EQ(g.n(), 4u);
  EXPECT_EQ(g.m(), 2u);
  EXPECT_EQ(g.degree(3), 0u);
  EXPECT_EQ(g.edges()[1].weight, 0.25);
  const auto b = build_graph(s, ids, Weighting::kBinary);
  EXPECT_EQ(b.edges()[1].weight, 1.0);
}

TEST(ExportTest, ParseFormat) {
  EXPECT_EQ(parse_format("gexf"), ExportFormat::kGexf);
  EXPECT_EQ(parse_format("graphml"), ExportFormat::kGraphml);
  EXPECT_EQ(parse_format("dot"), ExportFormat::kDot);
  EXPECT_EQ(parse_format("jsonl"), ExportFormat::kJsonl);
  EXPECT_THROW(parse_format("pajek"), FormatError);
  EXPECT_EQ(format_name(ExportFormat::kGraphml), "graphml");
}

TEST(ExportTest, ElementCountsMatchTheGraph) {
  const auto g = make_graph(5, {{0, 1}, {1, 2}, {2, 0}, {3, 4}});
  const std::vector<Point> pos = {{0, 0}, {1, 0}, {0, 1}, {5, 5}, {6, 5}};
  const std::vector<int> com = {0, 0, 0, 1, -1};
  const auto gexf = export_to_string(g, ExportFormat::kGexf, pos, com);
  EXPECT_EQ(count_of(gexf, "<node "), 5u);
  EXPECT_EQ(count_of(gexf, "<edge "), 4u);
  EXPECT_EQ(count_of(gexf, "<viz:position "), 5u);
  EXPECT_NE(gexf.find("version=\"1.2\""), std::string::npos);

  const auto graphml = export_to_string(g, ExportFormat::kGraphml, pos, com);
  EXPECT_EQ(count_of(graphml, "<node "), 5u);
  EXPECT_EQ(count_of(graphml, "<edge "), 4u);

  const auto dot = export_to_string(g, ExportFormat::kDot, pos, com);
  EXPECT_EQ(count_of(dot, " -- "), 4u);
  EXPECT_EQ(dot.rfind("graph", 0), 0u);
}

// Independent reparse: pull nodes and weighted edges out of the GraphML
// text with regular expressions and compare with the graph.
TEST(ExportTest, GraphmlReparsesToTheSameGraph) {
  std::mt19937_64 rng(17);
  const auto g = testing::random_graph(rng, 15, 0.3, true);
  const auto text = export_to_string(g, ExportFormat::kGraphml);
  const std::regex node_re(R"re(<node id="([^"]+)")re");
  const std::regex edge_re(
      R"re(<edge[^>]*source="([^"]+)" target="([^"]+)"[^>]*>\s*<data key="weight">([^<]+)</data>)re");
  std::vector<std::string> ids;
  for (std::sregex_iterator it(text.begin(), text.end(), node_re), end; it != end; ++it) {
    ids.push_back((*it)[1]);
  }
  EXPECT_EQ(ids, g.ids());
  std::map<std::pair<std::string, std::string>, double> edges;
  for (std::sregex_iterator it(text.begin(), text.end(), edge_re), end; it != end; ++it) {
    edges[{(*it)[1], (*it)[2]}] = std::stod((*it)[3]);
  }
  ASSERT_EQ(edges.size(), g.m());
  for (const auto& e : g.edges()) {
    const auto found = edges.find({g.ids()[e.u], g.ids()[e.v]});
    ASSERT_NE(found, edges.end());
    EXPECT_EQ(found->second, e.weight);
  }
}

TEST(ExportTest, XmlEscapesIds) {
  const Graph g({"a&b", "<c>", "\"d\""}, {{0, 1, 1.0}});
  const auto gexf = export_to_string(g, ExportFormat::kGexf);
  EXPECT_NE(gexf.find("a&amp;b"), std::string::npos);
  EXPECT_NE(gexf.find("&lt;c&gt;"), std::string::npos);
  EXPECT_EQ(gexf.find("<c>"), std::string::npos);
  const auto dot = export_to_string(g, ExportFormat::kDot);
  EXPECT_NE(dot.find(R"("\"d\"")"), std::string::npos);
}

TEST(ExportTest, JsonlRoundTripsExactly) {
  std::mt19937_64 rng(4);
  const auto g = testing::random_graph(rng, 12, 0.4, true);
  std::istringstream in(export_to_string(g, ExportFormat::kJsonl));
  const auto back = read_graph_jsonl(in);
  EXPECT_EQ(back.ids(), g.ids());
  EXPECT_TRUE(std::ranges::equal(back.edges(), g.edges()));
}

TEST(ExportTest, JsonlReaderReportsBadLines) {
  std::istringstream no_header(R"({"type":"node","id":"a"})" "\n");
  EXPECT_THROW(read_graph_jsonl(no_header), DataError);
  std::istringstream garbage(R"({"type":"graph","directed":false})" "\n{oops\n");
  try {
    read_graph_jsonl(garbage);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(ExportTest, MismatchedDecorationsAreRejected) {
  const auto g = make_graph(3, {{0, 1}});
  const std::vector<Point> two = {{0, 0}, {1, 1}};
  EXPECT_THROW(export_to_string(g, ExportFormat::kGexf, two), DataError);
}

}  // namespace
}  // namespace coopnet
