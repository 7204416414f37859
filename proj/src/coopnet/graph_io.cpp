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

#include <string>
#include <unordered_map>

#include "coopnet/errors.hpp"
#include "coopnet/graph.hpp"
#include "coopnet/text.hpp"
#include "json.hpp"

namespace coopnet {
namespace {

using nlohmann::json;
using text::format_exact;

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

struct Extras {
  std::span<const Point> positions;
  std::span<const int> community;

  bool has_positions() const { return !positions.empty(); }
  bool has_community() const { return !community.empty(); }
};

void write_gexf(std::ostream& out, const Graph& g, const Extras& x) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<gexf xmlns=\"http://gexf.net/1.2\" "
         "xmlns:viz=\"http://gexf.net/1.2/viz\" version=\"1.2\">\n"
         "  <graph mode=\"static\" defaultedgetype=\"undirected\">\n";
  if (x.has_community() || x.has_positions()) {
    out << "    <attributes class=\"node\">\n";
    if (x.has_community()) {
      out << "      <attribute id=\"community\" title=\"community\" "
             "type=\"string\"/>\n";
    }
    if (x.has_positions()) {
      out << "      <attribute id=\"x\" title=\"x\" type=\"double\"/>\n"
             "      <attribute id=\"y\" title=\"y\" type=\"double\"/>\n";
    }
    out << "    </attributes>\n";
  }
  out << "    <nodes count=\"" << g.n() << "\">\n";
  for (std::size_t i = 0; i < g.n(); ++i) {
    const auto id = xml_escape(g.ids()[i]);
    out << "      <node id=\"" << id << "\" label=\"" << id << "\"";
    if (!x.has_community() && !x.has_positions()) {
      out << "/>\n";
      continue;
    }
    out << ">\n        <attvalues>\n";
    if (x.has_community()) {
      out << "          <attvalue for=\"community\" value=\"" << x.community[i]
          << "\"/>\n";
    }
    if (x.has_positions()) {
      out << "          <attvalue for=\"x\" value=\""
          << format_exact(x.positions[i].x) << "\"/>\n"
          << "          <attvalue for=\"y\" value=\""
          << format_exact(x.positions[i].y) << "\"/>\n";
    }
    out << "        </attvalues>\n";
    if (x.has_positions()) {
      out << "        <viz:position x=\"" << format_exact(x.positions[i].x)
          << "\" y=\"" << format_exact(x.positions[i].y) << "\" z=\"0\"/>\n";
    }
    out << "      </node>\n";
  }
  out << "    </nodes>\n    <edges count=\"" << g.m() << "\">\n";
  std::size_t k = 0;
  for (const auto& e : g.edges()) {
    out << "      <edge id=\"" << k++ << "\" source=\""
        << xml_escape(g.ids()[e.u]) << "\" target=\"" << xml_escape(g.ids()[e.v])
        << "\" weight=\"" << format_exact(e.weight) << "\"/>\n";
  }
  out << "    </edges>\n  </graph>\n</gexf>\n";
}

void write_graphml(std::ostream& out, const Graph& g, const Extras& x) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
         "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" "
         "attr.type=\"double\"/>\n";
  if (x.has_community()) {
    out << "  <key id=\"community\" for=\"node\" attr.name=\"community\" "
           "attr.type=\"string\"/>\n";
  }
  if (x.has_positions()) {
    out << "  <key id=\"x\" for=\"node\" attr.name=\"x\" attr.type=\"double\"/>\n"
           "  <key id=\"y\" for=\"node\" attr.name=\"y\" attr.type=\"double\"/>\n";
  }
  out << "  <graph id=\"G\" edgedefault=\"undirected\">\n";
  for (std::size_t i = 0; i < g.n(); ++i) {
    out << "    <node id=\"" << xml_escape(g.ids()[i]) << "\"";
    if (!x.has_community() && !x.has_positions()) {
      out << "/>\n";
      continue;
    }
    out << ">\n";
    if (x.has_community()) {
      out << "      <data key=\"community\">" << x.community[i] << "</data>\n";
    }
    if (x.has_positions()) {
      out << "      <data key=\"x\">" << format_exact(x.positions[i].x)
          << "</data>\n      <data key=\"y\">" << format_exact(x.positions[i].y)
          << "</data>\n";
    }
    out << "    </node>\n";
  }
  for (const auto& e : g.edges()) {
    out << "    <edge source=\"" << xml_escape(g.ids()[e.u]) << "\" target=\""
        << xml_escape(g.ids()[e.v]) << "\">\n      <data key=\"weight\">"
        << format_exact(e.weight) << "</data>\n    </edge>\n";
  }
  out << "  </graph>\n</graphml>\n";
}

void write_dot(std::ostream& out, const Graph& g, const Extras& x) {
  out << "graph G {\n";
  for (std::size_t i = 0; i < g.n(); ++i) {
    out << "  " << dot_quote(g.ids()[i]);
    if (x.has_community() || x.has_positions()) {
      out << " [";
      const char* sep = "";
      if (x.has_community()) {
        out << "community=\"" << x.community[i] << '"';
        sep = ", ";
      }
      if (x.has_positions()) {
        out << sep << "x=" << format_exact(x.positions[i].x)
            << ", y=" << format_exact(x.positions[i].y) << ", pos=\""
            << format_exact(x.positions[i].x) << ','
            << format_exact(x.positions[i].y) << "\"";
      }
      out << ']';
    }
    out << ";\n";
  }
  for (const auto& e : g.edges()) {
    out << "  " << dot_quote(g.ids()[e.u]) << " -- " << dot_quote(g.ids()[e.v])
        << " [weight=" << format_exact(e.weight) << "];\n";
  }
  out << "}\n";
}

// One JSON object per line: a graph header, then nodes, then edges.
void write_jsonl(std::ostream& out, const Graph& g, const Extras& x) {
  out << json{{"type", "graph"}, {"directed", false}, {"nodes", g.n()},
              {"edges", g.m()}}
             .dump()
      << '\n';
  for (std::size_t i = 0; i < g.n(); ++i) {
    json node{{"type", "node"}, {"id", g.ids()[i]}, {"index", i}};
    if (x.has_community()) node["community"] = std::to_string(x.community[i]);
    if (x.has_positions()) {
      node["x"] = x.positions[i].x;
      node["y"] = x.positions[i].y;
    }
    out << node.dump() << '\n';
  }
  for (const auto& e : g.edges()) {
    out << json{{"type", "edge"}, {"source", g.ids()[e.u]},
                {"target", g.ids()[e.v]}, {"weight", e.weight}}
               .dump()
        << '\n';
  }
}

}  // namespace

ExportFormat parse_format(std::string_view name) {
  if (name == "gexf") return ExportFormat::kGexf;
  if (name == "graphml") return ExportFormat::kGraphml;
  if (name == "dot") return ExportFormat::kDot;
  if (name == "jsonl") return ExportFormat::kJsonl;
  throw FormatError("unknown graph format '" + std::string(name) +
                    "' (expected gexf, graphml, dot or jsonl)");
}

std::string_view format_name(ExportFormat f) {
  switch (f) {
    case ExportFormat::kGexf: return "gexf";
    case ExportFormat::kGraphml: return "graphml";
    case ExportFormat::kDot: return "dot";
    case ExportFormat::kJsonl: return "jsonl";
  }
  return "";
}

void export_graph(std::ostream& out, const Graph& g, ExportFormat format,
                  std::span<const Point> positions,
                  std::span<const int> community) {
  if (!positions.empty() && positions.size() != g.n()) {
    throw DataError("positions cover " + std::to_string(positions.size()) +
                    " of " + std::to_string(g.n()) + " nodes");
  }
  if (!community.empty() && community.size() != g.n()) {
    throw DataError("partition covers " + std::to_string(community.size()) +
                    " of " + std::to_string(g.n()) + " nodes");
  }
  const Extras x{positions, community};
  switch (format) {
    case ExportFormat::kGexf: write_gexf(out, g, x); break;
    case ExportFormat::kGraphml: write_graphml(out, g, x); break;
    case ExportFormat::kDot: write_dot(out, g, x); break;
    case ExportFormat::kJsonl: write_jsonl(out, g, x); break;
  }
}

Graph read_graph_jsonl(std::istream& in) {
  std::vector<std::string> ids;
  std::unordered_map<std::string, std::uint32_t> index;
  std::vector<Edge> edges;
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
      const auto type = rec.at("type").get<std::string>();
      if (type == "graph") {
        if (rec.value("directed", false)) {
          throw ParseError(line_no, "directed graphs are not supported");
        }
        header = true;
      } else if (type == "node") {
        auto id = rec.at("id").get<std::string>();
        if (!index.emplace(id, static_cast<std::uint32_t>(ids.size())).second) {
          throw ParseError(line_no, "duplicate node '" + id + "'");
        }
        ids.push_back(std::move(id));
      } else if (type == "edge") {
        auto src = index.find(rec.at("source").get<std::string>());
        auto dst = index.find(rec.at("target").get<std::string>());
        if (src == index.end() || dst == index.end()) {
          throw ParseError(line_no, "edge references an undeclared node");
        }
        edges.push_back({src->second, dst->second, rec.value("weight", 1.0)});
      } else {
        throw ParseError(line_no, "unknown record type '" + type + "'");
      }
    } catch (const json::exception& e) {
      throw ParseError(line_no, e.what());
    }
  }
  if (!header) throw EmptyDatasetError("missing graph header record");
  return Graph(std::move(ids), std::move(edges));
}

}  // namespace coopnet
