#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tempnet/graph.hpp"
#include "tempnet/rng.hpp"

namespace tempnet {

// Relative edge-formation weight as a function of the gap between two time
// groups. Two parameterizations cover the CLI forms `exp2:<c>` (2^{-c-t})
// and `geo:<a>:<r>` (a * r^t).
struct TimeDiffFunction {
  enum class Kind { Exp2, Geometric };

  Kind kind = Kind::Exp2;
  double c = 1.0;  // exp2
  double a = 1.0;  // geometric
  double r = 0.5;  // geometric

  double operator()(std::uint32_t t) const;

  static TimeDiffFunction exp2(double c);
  static TimeDiffFunction geometric(double a, double r);
  static TimeDiffFunction parse(std::string_view spec);
  std::string to_string() const;
};

// Per-iteration batch sizes of new vertices.
struct GrowthSchedule {
  enum class Kind { Linear, Polynomial, Sigmoidal, Explicit };

  Kind kind = Kind::Explicit;
  std::vector<std::uint32_t> batches;

  std::uint64_t total() const;

  static GrowthSchedule linear(std::uint64_t target_vertices);
  static GrowthSchedule polynomial(std::uint64_t target_vertices);
  static GrowthSchedule sigmoidal(std::uint64_t target_vertices);
  static GrowthSchedule explicit_batches(std::vector<std::uint32_t> batches);
  // "linear:700", "poly:700", "sig:700", "explicit:100,200,400"
  static GrowthSchedule parse(std::string_view spec);
  std::string to_string() const;
};

GrowthSchedule growth_sequence(GrowthSchedule::Kind kind, std::uint64_t target_vertices);

struct GeneratorParams {
  std::uint32_t m = 3;
  GrowthSchedule schedule;
  TimeDiffFunction f;
  std::uint64_t seed = 1;
  std::uint32_t retry_cap = 50;

  void validate() const;  // throws InvalidParams
};

// Degree-proportional (weight degree+1) vertex sampler, one pick list per
// time group. Each vertex appears once on registration and once more per
// incident edge, so a uniform pick from a group's list is a degree+1 draw.
class GroupPickList {
 public:
  void ensure_group(std::uint32_t group) {
    if (group >= lists_.size()) lists_.resize(group + 1);
  }
  void add_vertex(std::uint32_t group, VertexId v) {
    ensure_group(group);
    lists_[group].push_back(v);
  }
  void note_edge_endpoint(std::uint32_t group, VertexId v) { lists_[group].push_back(v); }
  bool empty(std::uint32_t group) const {
    return group >= lists_.size() || lists_[group].empty();
  }
  VertexId sample(std::uint32_t group, Rng& rng) const {
    const auto& list = lists_[group];
    return list[uniform_index(rng, list.size())];
  }

 private:
  std::vector<std::vector<VertexId>> lists_;
};

// Unnormalized selection weights f(|current - g|) over groups 0..current,
// zero for empty groups.
std::vector<double> group_weights(const TimeDiffFunction& f, std::uint32_t current_group,
                                  std::span<const std::size_t> group_sizes);

// Temporal preferential attachment. Batch i's vertices are registered with
// time group i before any wiring; each new vertex then attempts m edges,
// sampling a target group by f and a target vertex by degree+1 within it,
// retrying a duplicate or self pick up to retry_cap times before abandoning
// the slot. Bit-reproducible for a fixed seed.
TimeGroupedGraph generate_tpa(const GeneratorParams& params);

// Barabasi-Albert: m isolated seed vertices; every later vertex attaches m
// distinct degree-proportional edges (the first arrival connects to all
// seeds). Exactly (n - m) * m edges.
UndirectedGraph generate_ba(std::uint64_t n, std::uint32_t m, std::uint64_t seed);

// Watts-Strogatz: ring lattice with k nearest neighbours, each clockwise
// edge rewired with probability p avoiding duplicates and self-loops.
// Exactly n * k / 2 edges.
UndirectedGraph generate_ws(std::uint64_t n, std::uint32_t k, double p, std::uint64_t seed);

}  // namespace tempnet
