#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tempnet/graph.hpp"

namespace tempnet {

struct DegreeFeatures {
  double avg_deg = 0.0;
  double avg_in_deg = 0.0;
  std::uint64_t max_in_deg = 0;
  std::uint64_t max_out_deg = 0;
};

struct ComponentFeatures {
  std::uint64_t wcc_count = 0;
  std::uint64_t lc_vertices = 0;
  std::uint64_t lc_edges = 0;  // directed edges (self-loops included) inside the LC
  double lc_ratio = 0.0;
  std::uint64_t singletons = 0;
};

// One row of the per-network feature table.
struct FeatureRecord {
  std::uint64_t vertices = 0;
  std::uint64_t edges = 0;
  std::optional<double> density;  // undefined for |V| < 2
  std::uint64_t loops = 0;
  std::uint64_t triangles = 0;
  double avg_clustering = 0.0;
  DegreeFeatures degrees;
  ComponentFeatures components;
  double days = 0.0;
};

struct PowerLawFit {
  double gamma = 0.0;
  std::uint64_t x_min = 0;
  double ks_distance = 0.0;
  std::size_t tail_size = 0;
  // Set when the tail cannot identify an exponent (e.g. all observations
  // equal); gamma is then the optimizer's upper bound and must not be trusted.
  bool degenerate = false;
};

// Summary metrics for generated-network comparisons.
struct EvalMetrics {
  double avg_clustering = 0.0;
  std::uint64_t max_degree = 0;
  double avg_shortest_path = 0.0;
  std::optional<PowerLawFit> power_law;  // absent when degrees can't support a fit
};

// Directed density |E| / (|V| (|V|-1)); self-loops excluded from the count.
// Throws DegenerateGraph for |V| < 2.
double density(const TimeStampedGraph& g);

std::uint64_t triangle_count(const UndirectedGraph& g);
std::uint64_t triangle_count(const TimeStampedGraph& g);

// Mean local clustering over all vertices; degree < 2 contributes zero.
double avg_clustering(const UndirectedGraph& g);
double avg_clustering(const TimeStampedGraph& g);

DegreeFeatures degree_features(const TimeStampedGraph& g);

ComponentFeatures component_features(const TimeStampedGraph& g);

// (max join time - min join time) in fractional days.
double days_span(const TimeStampedGraph& g);

// Mean hop distance over ordered pairs inside the largest component. Exact
// all-sources BFS up to 20000 LC vertices, sampled sources beyond that.
// Throws DegenerateGraph when the largest component has fewer than 2 vertices.
double avg_shortest_path(const UndirectedGraph& g,
                         std::optional<std::size_t> sample_size = std::nullopt,
                         std::uint64_t seed = 1);

std::uint64_t max_degree(const UndirectedGraph& g);

// Discrete power-law MLE with x_min picked by KS minimization. Requires at
// least 50 positive observations (InsufficientData otherwise).
PowerLawFit fit_power_law_exponent(std::span<const std::uint64_t> degrees);

FeatureRecord feature_record(const TimeStampedGraph& g);

EvalMetrics eval_metrics(const UndirectedGraph& g, std::uint64_t sp_seed = 1);

// CSV in the fixed feature-table column order; reals carry 6 significant
// digits, counts print as integers, undefined fields stay empty.
std::string feature_csv_header(std::string_view label_column = "graph");
std::string feature_csv_row(std::string_view name, const FeatureRecord& rec);

}  // namespace tempnet
