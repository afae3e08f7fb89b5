#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <unordered_set>
#include <utility>
#include <vector>

#include "tempnet/error.hpp"

namespace tempnet {

// Dense 0-based vertex identifier, unique within one graph.
using VertexId = std::uint32_t;

inline std::uint64_t edge_key(VertexId u, VertexId v) {
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

// Simple undirected graph: no self-loops, no parallel edges.
class UndirectedGraph {
 public:
  VertexId add_vertex() {
    adj_.emplace_back();
    return static_cast<VertexId>(adj_.size() - 1);
  }

  // Returns false (and leaves the graph unchanged) if the edge already
  // exists. Throws SelfLoopError on u == v and UnknownVertex on
  // unregistered endpoints.
  bool add_edge(VertexId u, VertexId v);

  bool has_edge(VertexId u, VertexId v) const {
    if (u > v) std::swap(u, v);
    return keys_.count(edge_key(u, v)) != 0;
  }

  std::size_t vertex_count() const { return adj_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t degree(VertexId v) const { return adj_[v].size(); }
  const std::vector<VertexId>& neighbors(VertexId v) const { return adj_[v]; }
  // Insertion order; the first element of each pair is the endpoint that
  // initiated the edge (meaningful to the generators).
  const std::vector<std::pair<VertexId, VertexId>>& edges() const { return edges_; }

 private:
  std::vector<std::vector<VertexId>> adj_;
  std::vector<std::pair<VertexId, VertexId>> edges_;
  std::unordered_set<std::uint64_t> keys_;
};

// Undirected graph whose vertices carry the iteration (time group) they were
// inserted in.
class TimeGroupedGraph {
 public:
  VertexId add_vertex(std::uint32_t group) {
    group_.push_back(group);
    return g_.add_vertex();
  }

  bool add_edge(VertexId u, VertexId v) { return g_.add_edge(u, v); }
  bool has_edge(VertexId u, VertexId v) const { return g_.has_edge(u, v); }

  std::size_t vertex_count() const { return g_.vertex_count(); }
  std::size_t edge_count() const { return g_.edge_count(); }
  std::size_t degree(VertexId v) const { return g_.degree(v); }
  std::uint32_t time_group(VertexId v) const { return group_[v]; }
  const std::vector<std::uint32_t>& time_groups() const { return group_; }
  const UndirectedGraph& graph() const { return g_; }
  const std::vector<std::pair<VertexId, VertexId>>& edges() const { return g_.edges(); }

 private:
  UndirectedGraph g_;
  std::vector<std::uint32_t> group_;
};

// Directed simple graph with a first-activity timestamp per vertex.
// Self-loops are allowed (reply graphs contain them); duplicate ordered
// pairs are not.
class TimeStampedGraph {
 public:
  VertexId add_vertex(std::int64_t join_time) {
    join_time_.push_back(join_time);
    out_.emplace_back();
    in_.emplace_back();
    return static_cast<VertexId>(join_time_.size() - 1);
  }

  // Returns false on a duplicate ordered pair; throws UnknownVertex on an
  // unregistered endpoint.
  bool add_edge(VertexId u, VertexId v);

  bool has_edge(VertexId u, VertexId v) const { return keys_.count(edge_key(u, v)) != 0; }

  std::size_t vertex_count() const { return join_time_.size(); }
  std::size_t edge_count() const { return edges_.size(); }  // self-loops included
  std::size_t loop_count() const { return loops_; }
  std::int64_t join_time(VertexId v) const { return join_time_[v]; }
  const std::vector<std::int64_t>& join_times() const { return join_time_; }
  const std::vector<VertexId>& out_neighbors(VertexId v) const { return out_[v]; }
  const std::vector<VertexId>& in_neighbors(VertexId v) const { return in_[v]; }
  const std::vector<std::pair<VertexId, VertexId>>& edges() const { return edges_; }

  // Self-loops dropped, (u,v)/(v,u) collapsed. Idempotent.
  UndirectedGraph undirected_projection() const;

 private:
  std::vector<std::int64_t> join_time_;
  std::vector<std::vector<VertexId>> out_;
  std::vector<std::vector<VertexId>> in_;
  std::vector<std::pair<VertexId, VertexId>> edges_;
  std::unordered_set<std::uint64_t> keys_;
  std::size_t loops_ = 0;
};

// Partition of the vertex set into connected components. Components are
// ordered by descending size, ties broken by smallest contained vertex id;
// members are listed ascending.
struct ComponentPartition {
  std::vector<std::vector<VertexId>> components;
  std::vector<std::uint32_t> component_of;  // vertex -> index into components
};

ComponentPartition connected_components(const UndirectedGraph& g);
ComponentPartition weakly_connected_components(const TimeStampedGraph& g);

// --- Edge-list file format -------------------------------------------------
//
//   # directed=<0|1>
//   v <id> <join_time_or_group>
//   e <u> <v>
//
// Vertices are written in id order and edges sorted by (u, v), so writing a
// graph that was read from a file reproduces the file byte for byte.

void write_edge_list(const TimeStampedGraph& g, std::ostream& out);
void write_edge_list(const TimeGroupedGraph& g, std::ostream& out);
void write_edge_list_file(const TimeStampedGraph& g, const std::filesystem::path& path);
void write_edge_list_file(const TimeGroupedGraph& g, const std::filesystem::path& path);

// Peek at the header without consuming the stream position guarantees.
bool edge_list_is_directed(const std::filesystem::path& path);

TimeStampedGraph read_time_stamped(std::istream& in);
TimeGroupedGraph read_time_grouped(std::istream& in);
TimeStampedGraph read_time_stamped_file(const std::filesystem::path& path);
TimeGroupedGraph read_time_grouped_file(const std::filesystem::path& path);

}  // namespace tempnet
