#include "mediagraph/graph_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include <fmt/format.h>

#include "mediagraph/error.hpp"

namespace mediagraph {
namespace {

constexpr std::string_view kMagic = "#mediagraph-graph v1";

std::string escape(std::string_view id) {
  std::string out;
  out.reserve(id.size());
  for (char c : id) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out;
}

std::optional<std::string> unescape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '\\') {
      out += text[i];
      continue;
    }
    if (++i == text.size()) return std::nullopt;
    switch (text[i]) {
      case '\\': out += '\\'; break;
      case 't': out += '\t'; break;
      case 'n': out += '\n'; break;
      case 'r': out += '\r'; break;
      default: return std::nullopt;
    }
  }
  return out;
}

template <typename T>
std::optional<T> parse_number(std::string_view text) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

class LineReader {
 public:
  LineReader(std::istream& in, std::string source)
      : in_(in), source_(std::move(source)) {}

  std::string next() {
    std::string line;
    if (!std::getline(in_, line)) fail("unexpected end of graph file");
    ++line_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  }

  [[noreturn]] void fail(const std::string& detail) const {
    throw ParseError(source_, line_, detail);
  }

 private:
  std::istream& in_;
  std::string source_;
  std::size_t line_ = 0;
};

}  // namespace

std::string_view to_string(GraphKind kind) noexcept {
  switch (kind) {
    case GraphKind::VCG: return "vcg";
    case GraphKind::CPWG: return "cpwg";
    case GraphKind::AVCG: return "avcg";
    case GraphKind::ChPWG: return "chpwg";
  }
  return "vcg";
}

std::optional<GraphKind> parse_graph_kind(std::string_view text) {
  for (auto kind : {GraphKind::VCG, GraphKind::CPWG, GraphKind::AVCG,
                    GraphKind::ChPWG}) {
    if (text == to_string(kind)) return kind;
  }
  return std::nullopt;
}

GraphRecord record_of(const BipartiteGraph& vcg) {
  GraphRecord r;
  r.header.kind = GraphKind::VCG;
  r.header.channel_id = vcg.channel_id;
  r.header.u_count = vcg.videos.size();
  r.header.v_count = vcg.commenters.size();
  r.nodes = vcg.videos;
  r.nodes.insert(r.nodes.end(), vcg.commenters.begin(), vcg.commenters.end());
  const auto base = static_cast<std::uint32_t>(vcg.videos.size());
  r.edges.reserve(vcg.edge_count());
  for (const auto& [v, k] : vcg.edges()) r.edges.push_back({v, k + base, 1.0});
  r.header.edge_count = r.edges.size();
  return r;
}

GraphRecord record_of(const WeightedGraph& graph, GraphKind kind,
                      std::string channel_id) {
  GraphRecord r;
  r.header.kind = kind;
  r.header.channel_id = std::move(channel_id);
  r.header.u_count = graph.node_count();
  r.header.edge_count = graph.edge_count();
  r.nodes = graph.nodes;
  r.edges = graph.edges;
  return r;
}

GraphRecord record_of(const AugmentedGraph& avcg, std::string channel_id) {
  GraphRecord r;
  r.header.kind = GraphKind::AVCG;
  r.header.channel_id = std::move(channel_id);
  r.header.u_count = avcg.video_count;
  r.header.v_count = avcg.commenter_count;
  r.header.threshold = avcg.threshold;
  r.nodes = avcg.graph.ids();
  for (const auto& [a, b] : avcg.graph.edges()) r.edges.push_back({a, b, 1.0});
  r.header.edge_count = r.edges.size();
  return r;
}

BipartiteGraph GraphRecord::to_bipartite() const {
  if (header.kind != GraphKind::VCG) {
    throw Error(ErrorCode::Mismatch,
                fmt::format("expected a vcg graph, found {}", to_string(header.kind)));
  }
  BipartiteGraph g;
  g.channel_id = header.channel_id;
  const auto base = header.u_count;
  g.videos.assign(nodes.begin(), nodes.begin() + static_cast<std::ptrdiff_t>(base));
  g.commenters.assign(nodes.begin() + static_cast<std::ptrdiff_t>(base), nodes.end());
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  pairs.reserve(edges.size());
  for (const auto& e : edges) {
    auto video = e.a, commenter = e.b;
    if (video >= base) std::swap(video, commenter);
    if (video >= base || commenter < base) {
      throw Error(ErrorCode::InvalidValue,
                  fmt::format("vcg edge ({}, {}) does not cross the partition",
                              e.a, e.b));
    }
    pairs.emplace_back(video, static_cast<std::uint32_t>(commenter - base));
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  g.offsets.assign(g.videos.size() + 1, 0);
  for (const auto& p : pairs) ++g.offsets[p.first + 1];
  for (std::size_t i = 0; i < g.videos.size(); ++i) g.offsets[i + 1] += g.offsets[i];
  for (const auto& p : pairs) g.targets.push_back(p.second);
  return g;
}

WeightedGraph GraphRecord::to_weighted() const {
  if (header.kind != GraphKind::CPWG && header.kind != GraphKind::ChPWG) {
    throw Error(ErrorCode::Mismatch,
                fmt::format("expected a weighted graph, found {}",
                            to_string(header.kind)));
  }
  WeightedGraph g;
  g.nodes = nodes;
  g.edges = edges;
  return g;
}

AugmentedGraph GraphRecord::to_augmented() const {
  if (header.kind != GraphKind::AVCG) {
    throw Error(ErrorCode::Mismatch,
                fmt::format("expected an avcg graph, found {}",
                            to_string(header.kind)));
  }
  AugmentedGraph g;
  g.video_count = header.u_count;
  g.commenter_count = header.v_count;
  g.threshold = header.threshold;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  pairs.reserve(edges.size());
  for (const auto& e : edges) {
    pairs.emplace_back(e.a, e.b);
    if (e.a >= g.video_count && e.b >= g.video_count) {
      ++g.commenter_edge_count;
    } else {
      ++g.vcg_edge_count;
    }
  }
  g.graph = SimpleGraph::from_edges(nodes, std::move(pairs));
  return g;
}

void write_graph(std::ostream& out, const GraphRecord& record) {
  const auto& h = record.header;
  out << kMagic << '\n';
  out << "kind\t" << to_string(h.kind) << '\n';
  out << "channel\t" << escape(h.channel_id) << '\n';
  if (h.channel_kind) out << "channel_kind\t" << to_string(*h.channel_kind) << '\n';
  if (h.orientation) out << "orientation\t" << to_string(*h.orientation) << '\n';
  out << "u_count\t" << h.u_count << '\n';
  out << "v_count\t" << h.v_count << '\n';
  out << "edge_count\t" << record.edges.size() << '\n';
  out << "threshold\t" << h.threshold << '\n';
  out << "nodes\n";
  for (const auto& id : record.nodes) out << escape(id) << '\n';
  out << "edges\n";
  fmt::memory_buffer buf;
  for (const auto& e : record.edges) {
    buf.clear();
    fmt::format_to(std::back_inserter(buf), "{}\t{}\t{}\n", e.a, e.b, e.weight);
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  }
  out << "end\n";
}

void write_graph(const std::filesystem::path& path, const GraphRecord& record) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::Io, fmt::format("cannot write '{}'", path.string()));
  }
  write_graph(out, record);
  if (!out) {
    throw Error(ErrorCode::Io, fmt::format("write failed for '{}'", path.string()));
  }
}

GraphRecord read_graph(std::istream& in, const std::string& source) {
  LineReader reader(in, source);
  if (reader.next() != kMagic) reader.fail("not a mediagraph graph file");
  GraphRecord r;
  auto& h = r.header;
  bool saw_kind = false;
  std::optional<std::size_t> declared_edges;
  for (;;) {
    const auto line = reader.next();
    if (line == "nodes") break;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) reader.fail(fmt::format("bad header line '{}'", line));
    const std::string_view key(line.data(), tab);
    const std::string_view value(line.data() + tab + 1, line.size() - tab - 1);
    auto count = [&]() {
      const auto n = parse_number<std::size_t>(value);
      if (!n) reader.fail(fmt::format("bad count for '{}'", key));
      return *n;
    };
    if (key == "kind") {
      const auto kind = parse_graph_kind(value);
      if (!kind) reader.fail(fmt::format("unknown graph kind '{}'", value));
      h.kind = *kind;
      saw_kind = true;
    } else if (key == "channel") {
      const auto id = unescape(value);
      if (!id) reader.fail("bad escape in channel id");
      h.channel_id = *id;
    } else if (key == "channel_kind") {
      h.channel_kind = parse_kind(value);
      if (!h.channel_kind) reader.fail(fmt::format("unknown channel kind '{}'", value));
    } else if (key == "orientation") {
      h.orientation = parse_orientation(value);
      if (!h.orientation) reader.fail(fmt::format("unknown orientation '{}'", value));
    } else if (key == "u_count") {
      h.u_count = count();
    } else if (key == "v_count") {
      h.v_count = count();
    } else if (key == "edge_count") {
      declared_edges = count();
    } else if (key == "threshold") {
      h.threshold = static_cast<std::uint32_t>(count());
    }
    // Unknown header keys are ignored for forward compatibility.
  }
  if (!saw_kind) reader.fail("graph header lacks 'kind'");

  const auto node_total = h.u_count + h.v_count;
  r.nodes.reserve(node_total);
  for (std::size_t i = 0; i < node_total; ++i) {
    const auto id = unescape(reader.next());
    if (!id) reader.fail("bad escape in node id");
    r.nodes.push_back(*id);
  }
  if (reader.next() != "edges") reader.fail("expected 'edges' section");
  if (declared_edges) r.edges.reserve(*declared_edges);
  for (;;) {
    const auto line = reader.next();
    if (line == "end") break;
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos) reader.fail("edge line needs three fields");
    const std::string_view sv(line);
    const auto a = parse_number<std::uint32_t>(sv.substr(0, t1));
    const auto b = parse_number<std::uint32_t>(sv.substr(t1 + 1, t2 - t1 - 1));
    const auto w = parse_number<double>(sv.substr(t2 + 1));
    if (!a || !b || !w) reader.fail(fmt::format("bad edge line '{}'", line));
    if (*a >= node_total || *b >= node_total) {
      reader.fail(fmt::format("edge endpoint outside {} nodes", node_total));
    }
    r.edges.push_back({*a, *b, *w});
  }
  if (declared_edges && *declared_edges != r.edges.size()) {
    reader.fail(fmt::format("header declares {} edges, found {}", *declared_edges,
                            r.edges.size()));
  }
  h.edge_count = r.edges.size();
  return r;
}

GraphRecord read_graph(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::Io, fmt::format("cannot open '{}'", path.string()));
  }
  return read_graph(in, path.string());
}

std::string file_stem_for(std::string_view id) {
  std::string out;
  for (unsigned char c : id) {
    if (std::isalnum(c) || c == '_' || c == '-' || c == '.') {
      out += static_cast<char>(c);
    } else {
      out += fmt::format("%{:02X}", c);
    }
  }
  if (out.empty() || out == "." || out == "..") out = "%" + out;
  return out;
}

}  // namespace mediagraph
