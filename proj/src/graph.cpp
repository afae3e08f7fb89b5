#include "tempnet/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

namespace tempnet {

bool UndirectedGraph::add_edge(VertexId u, VertexId v) {
  if (u >= adj_.size() || v >= adj_.size())
    throw UnknownVertex("add_edge: unregistered endpoint");
  if (u == v) throw SelfLoopError("add_edge: self-loop on undirected graph");
  VertexId a = u, b = v;
  if (a > b) std::swap(a, b);
  if (!keys_.insert(edge_key(a, b)).second) return false;
  adj_[u].push_back(v);
  adj_[v].push_back(u);
  edges_.emplace_back(u, v);
  return true;
}

bool TimeStampedGraph::add_edge(VertexId u, VertexId v) {
  if (u >= join_time_.size() || v >= join_time_.size())
    throw UnknownVertex("add_edge: unregistered endpoint");
  if (!keys_.insert(edge_key(u, v)).second) return false;
  out_[u].push_back(v);
  in_[v].push_back(u);
  edges_.emplace_back(u, v);
  if (u == v) ++loops_;
  return true;
}

UndirectedGraph TimeStampedGraph::undirected_projection() const {
  UndirectedGraph g;
  for (std::size_t i = 0; i < vertex_count(); ++i) g.add_vertex();
  for (const auto& [u, v] : edges_) {
    if (u == v) continue;
    g.add_edge(u, v);  // duplicate (v,u) collapses via the return value
  }
  return g;
}

namespace {

struct UnionFind {
  std::vector<VertexId> parent;
  std::vector<std::uint32_t> size;

  explicit UnionFind(std::size_t n) : parent(n), size(n, 1) {
    std::iota(parent.begin(), parent.end(), VertexId{0});
  }

  VertexId find(VertexId v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];  // path halving
      v = parent[v];
    }
    return v;
  }

  void unite(VertexId a, VertexId b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size[a] < size[b]) std::swap(a, b);
    parent[b] = a;
    size[a] += size[b];
  }
};

ComponentPartition partition_from(UnionFind& uf, std::size_t n) {
  ComponentPartition part;
  std::vector<std::int64_t> slot(n, -1);
  for (VertexId v = 0; v < n; ++v) {
    const VertexId root = uf.find(v);
    if (slot[root] < 0) {
      slot[root] = static_cast<std::int64_t>(part.components.size());
      part.components.emplace_back();
    }
    part.components[static_cast<std::size_t>(slot[root])].push_back(v);
  }
  // Members are already ascending (vertices visited in id order).
  std::stable_sort(part.components.begin(), part.components.end(),
                   [](const auto& a, const auto& b) {
                     if (a.size() != b.size()) return a.size() > b.size();
                     return a.front() < b.front();
                   });
  part.component_of.assign(n, 0);
  for (std::size_t c = 0; c < part.components.size(); ++c)
    for (VertexId v : part.components[c]) part.component_of[v] = static_cast<std::uint32_t>(c);
  return part;
}

}  // namespace

ComponentPartition connected_components(const UndirectedGraph& g) {
  UnionFind uf(g.vertex_count());
  for (const auto& [u, v] : g.edges()) uf.unite(u, v);
  return partition_from(uf, g.vertex_count());
}

ComponentPartition weakly_connected_components(const TimeStampedGraph& g) {
  UnionFind uf(g.vertex_count());
  for (const auto& [u, v] : g.edges())
    if (u != v) uf.unite(u, v);
  return partition_from(uf, g.vertex_count());
}

namespace {

template <typename MetaFn>
void write_edge_list_impl(std::ostream& out, bool directed, std::size_t n,
                          std::vector<std::pair<VertexId, VertexId>> edges, MetaFn meta) {
  out << "# directed=" << (directed ? 1 : 0) << '\n';
  for (VertexId v = 0; v < n; ++v) out << "v " << v << ' ' << meta(v) << '\n';
  if (!directed) {
    for (auto& [u, v] : edges)
      if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  for (const auto& [u, v] : edges) out << "e " << u << ' ' << v << '\n';
}

struct ParsedEdgeList {
  bool directed = false;
  std::vector<std::int64_t> meta;
  std::vector<std::pair<VertexId, VertexId>> edges;
};

ParsedEdgeList parse_edge_list(std::istream& in) {
  ParsedEdgeList out;
  std::string line;
  if (!std::getline(in, line)) throw IoError("edge list: empty input");
  if (line.rfind("# directed=", 0) != 0)
    throw IoError("edge list: missing '# directed=' header");
  if (line == "# directed=1")
    out.directed = true;
  else if (line == "# directed=0")
    out.directed = false;
  else
    throw IoError("edge list: bad header '" + line + "'");

  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    char tag = 0;
    ls >> tag;
    if (tag == 'v') {
      std::uint64_t id = 0;
      std::int64_t meta = 0;
      if (!(ls >> id >> meta) || id != out.meta.size())
        throw IoError("edge list: bad vertex line " + std::to_string(lineno));
      out.meta.push_back(meta);
    } else if (tag == 'e') {
      std::uint64_t u = 0, v = 0;
      if (!(ls >> u >> v) || u >= out.meta.size() || v >= out.meta.size())
        throw IoError("edge list: bad edge line " + std::to_string(lineno));
      out.edges.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
    } else {
      throw IoError("edge list: unknown tag on line " + std::to_string(lineno));
    }
  }
  return out;
}

std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

}  // namespace

void write_edge_list(const TimeStampedGraph& g, std::ostream& out) {
  write_edge_list_impl(out, true, g.vertex_count(), g.edges(),
                       [&](VertexId v) { return g.join_time(v); });
}

void write_edge_list(const TimeGroupedGraph& g, std::ostream& out) {
  write_edge_list_impl(out, false, g.vertex_count(), g.edges(),
                       [&](VertexId v) { return g.time_group(v); });
}

void write_edge_list_file(const TimeStampedGraph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_edge_list(g, out);
}

void write_edge_list_file(const TimeGroupedGraph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_edge_list(g, out);
}

bool edge_list_is_directed(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  std::string line;
  if (!std::getline(in, line)) throw IoError("edge list: empty file " + path.string());
  if (line == "# directed=1") return true;
  if (line == "# directed=0") return false;
  throw IoError("edge list: bad header in " + path.string());
}

TimeStampedGraph read_time_stamped(std::istream& in) {
  ParsedEdgeList p = parse_edge_list(in);
  if (!p.directed) throw IoError("edge list: expected a directed graph");
  TimeStampedGraph g;
  for (std::int64_t t : p.meta) g.add_vertex(t);
  for (const auto& [u, v] : p.edges) g.add_edge(u, v);
  return g;
}

TimeGroupedGraph read_time_grouped(std::istream& in) {
  ParsedEdgeList p = parse_edge_list(in);
  if (p.directed) throw IoError("edge list: expected an undirected graph");
  TimeGroupedGraph g;
  for (std::int64_t m : p.meta) {
    if (m < 0) throw IoError("edge list: negative time group");
    g.add_vertex(static_cast<std::uint32_t>(m));
  }
  for (const auto& [u, v] : p.edges) g.add_edge(u, v);
  return g;
}

TimeStampedGraph read_time_stamped_file(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  return read_time_stamped(in);
}

TimeGroupedGraph read_time_grouped_file(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  return read_time_grouped(in);
}

}  // namespace tempnet
