#include "tempnet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "tempnet/error.hpp"
#include "tempnet/rng.hpp"
#include "tempnet/util.hpp"

namespace tempnet {

namespace {

std::vector<std::vector<VertexId>> sorted_adjacency(const UndirectedGraph& g) {
  std::vector<std::vector<VertexId>> adj(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    adj[v] = g.neighbors(v);
    std::sort(adj[v].begin(), adj[v].end());
  }
  return adj;
}

// tri[v] = number of triangles containing v. Each triangle increments the
// vertex opposite to the edge being scanned, so every vertex of every
// triangle is counted exactly once.
std::vector<std::uint64_t> per_vertex_triangles(const UndirectedGraph& g) {
  const auto adj = sorted_adjacency(g);
  std::vector<std::uint64_t> tri(g.vertex_count(), 0);
  for (const auto& [eu, ev] : g.edges()) {
    const auto& a = adj[eu];
    const auto& b = adj[ev];
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i] < b[j])
        ++i;
      else if (a[i] > b[j])
        ++j;
      else {
        ++tri[a[i]];
        ++i;
        ++j;
      }
    }
  }
  return tri;
}

}  // namespace

double density(const TimeStampedGraph& g) {
  const std::uint64_t n = g.vertex_count();
  if (n < 2) throw DegenerateGraph("density: needs at least 2 vertices");
  const std::uint64_t e = g.edge_count() - g.loop_count();
  return static_cast<double>(e) / (static_cast<double>(n) * static_cast<double>(n - 1));
}

std::uint64_t triangle_count(const UndirectedGraph& g) {
  const auto tri = per_vertex_triangles(g);
  return std::accumulate(tri.begin(), tri.end(), std::uint64_t{0}) / 3;
}

std::uint64_t triangle_count(const TimeStampedGraph& g) {
  return triangle_count(g.undirected_projection());
}

double avg_clustering(const UndirectedGraph& g) {
  if (g.vertex_count() == 0) return 0.0;
  const auto tri = per_vertex_triangles(g);
  double sum = 0.0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const double d = static_cast<double>(g.degree(v));
    if (d < 2) continue;
    sum += 2.0 * static_cast<double>(tri[v]) / (d * (d - 1.0));
  }
  return sum / static_cast<double>(g.vertex_count());
}

double avg_clustering(const TimeStampedGraph& g) {
  return avg_clustering(g.undirected_projection());
}

DegreeFeatures degree_features(const TimeStampedGraph& g) {
  DegreeFeatures out;
  const std::size_t n = g.vertex_count();
  if (n == 0) return out;
  std::uint64_t tot_sum = 0, in_sum = 0;
  std::vector<VertexId> merged;
  for (VertexId v = 0; v < n; ++v) {
    const auto& in = g.in_neighbors(v);
    const auto& outn = g.out_neighbors(v);
    in_sum += in.size();
    out.max_in_deg = std::max<std::uint64_t>(out.max_in_deg, in.size());
    out.max_out_deg = std::max<std::uint64_t>(out.max_out_deg, outn.size());
    merged.assign(in.begin(), in.end());
    merged.insert(merged.end(), outn.begin(), outn.end());
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    tot_sum += merged.size();
  }
  out.avg_deg = static_cast<double>(tot_sum) / static_cast<double>(n);
  out.avg_in_deg = static_cast<double>(in_sum) / static_cast<double>(n);
  return out;
}

ComponentFeatures component_features(const TimeStampedGraph& g) {
  if (g.vertex_count() == 0) throw DegenerateGraph("component_features: empty graph");
  const ComponentPartition part = weakly_connected_components(g);
  ComponentFeatures out;
  out.wcc_count = part.components.size();
  out.lc_vertices = part.components.front().size();
  out.lc_ratio = static_cast<double>(out.lc_vertices) / static_cast<double>(g.vertex_count());
  for (const auto& comp : part.components)
    if (comp.size() == 1) ++out.singletons;
  for (const auto& [u, v] : g.edges())
    if (part.component_of[u] == 0 && part.component_of[v] == 0) ++out.lc_edges;
  return out;
}

double days_span(const TimeStampedGraph& g) {
  if (g.vertex_count() == 0) throw DegenerateGraph("days_span: empty graph");
  const auto [lo, hi] = std::minmax_element(g.join_times().begin(), g.join_times().end());
  return static_cast<double>(*hi - *lo) / 86400.0;
}

namespace {

struct Csr {
  std::vector<std::uint32_t> offsets;
  std::vector<VertexId> targets;
};

Csr build_csr(const UndirectedGraph& g) {
  Csr csr;
  csr.offsets.assign(g.vertex_count() + 1, 0);
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    csr.offsets[v + 1] = csr.offsets[v] + static_cast<std::uint32_t>(g.degree(v));
  csr.targets.resize(csr.offsets.back());
  std::vector<std::uint32_t> cursor(csr.offsets.begin(), csr.offsets.end() - 1);
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    for (VertexId w : g.neighbors(v)) csr.targets[cursor[v]++] = w;
  return csr;
}

// Sum of hop distances from src to every reachable vertex, and their count.
std::pair<std::uint64_t, std::uint64_t> bfs_distance_sum(const Csr& csr, VertexId src,
                                                         std::vector<std::int32_t>& dist,
                                                         std::vector<VertexId>& queue) {
  std::fill(dist.begin(), dist.end(), -1);
  queue.clear();
  queue.push_back(src);
  dist[src] = 0;
  std::uint64_t sum = 0, reached = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const VertexId v = queue[head];
    const std::int32_t dv = dist[v];
    sum += static_cast<std::uint64_t>(dv);
    ++reached;
    for (std::uint32_t i = csr.offsets[v]; i < csr.offsets[v + 1]; ++i) {
      const VertexId w = csr.targets[i];
      if (dist[w] < 0) {
        dist[w] = dv + 1;
        queue.push_back(w);
      }
    }
  }
  return {sum, reached - 1};  // exclude the source itself
}

}  // namespace

double avg_shortest_path(const UndirectedGraph& g, std::optional<std::size_t> sample_size,
                         std::uint64_t seed) {
  if (g.vertex_count() == 0) throw DegenerateGraph("avg_shortest_path: empty graph");
  const ComponentPartition part = connected_components(g);
  std::vector<VertexId> lc = part.components.front();
  if (lc.size() < 2)
    throw DegenerateGraph("avg_shortest_path: largest component has fewer than 2 vertices");

  constexpr std::size_t kExactLimit = 20000;
  std::vector<VertexId> sources;
  if (lc.size() <= kExactLimit) {
    sources = lc;
  } else {
    std::size_t want = std::min(sample_size.value_or(1000), lc.size());
    Rng rng(seed);
    for (std::size_t i = 0; i < want; ++i) {  // partial Fisher-Yates
      const std::size_t j = i + uniform_index(rng, lc.size() - i);
      std::swap(lc[i], lc[j]);
      sources.push_back(lc[i]);
    }
  }

  const Csr csr = build_csr(g);
  std::vector<std::int32_t> dist(g.vertex_count());
  std::vector<VertexId> queue;
  queue.reserve(g.vertex_count());
  std::uint64_t total = 0, pairs = 0;
  for (VertexId s : sources) {
    const auto [sum, reached] = bfs_distance_sum(csr, s, dist, queue);
    total += sum;
    pairs += reached;
  }
  return static_cast<double>(total) / static_cast<double>(pairs);
}

std::uint64_t max_degree(const UndirectedGraph& g) {
  std::uint64_t best = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    best = std::max<std::uint64_t>(best, g.degree(v));
  return best;
}

namespace {

// Hurwitz zeta for s > 1, a >= 1: direct terms plus Euler-Maclaurin tail.
double hurwitz_zeta(double s, double a) {
  constexpr int kDirect = 64;
  double sum = 0.0;
  for (int k = 0; k < kDirect; ++k) sum += std::pow(a + k, -s);
  const double m = a + kDirect;
  sum += std::pow(m, 1.0 - s) / (s - 1.0);
  sum += 0.5 * std::pow(m, -s);
  sum += s * std::pow(m, -s - 1.0) / 12.0;
  sum -= s * (s + 1.0) * (s + 2.0) * std::pow(m, -s - 3.0) / 720.0;
  return sum;
}

constexpr double kGammaLo = 1.0001;
constexpr double kGammaHi = 20.0;

// Discrete power-law log-likelihood (per the tail), concave in gamma.
double power_law_loglik(double gamma, double x_min, double sum_log, std::size_t n) {
  return -static_cast<double>(n) * std::log(hurwitz_zeta(gamma, x_min)) - gamma * sum_log;
}

double maximize_gamma(double x_min, double sum_log, std::size_t n) {
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = kGammaLo, hi = kGammaHi;
  double x1 = hi - phi * (hi - lo);
  double x2 = lo + phi * (hi - lo);
  double f1 = power_law_loglik(x1, x_min, sum_log, n);
  double f2 = power_law_loglik(x2, x_min, sum_log, n);
  for (int it = 0; it < 120 && hi - lo > 1e-10; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = power_law_loglik(x2, x_min, sum_log, n);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = power_law_loglik(x1, x_min, sum_log, n);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

PowerLawFit fit_power_law_exponent(std::span<const std::uint64_t> degrees) {
  std::vector<std::uint64_t> xs;
  xs.reserve(degrees.size());
  for (std::uint64_t d : degrees)
    if (d > 0) xs.push_back(d);
  if (xs.size() < 50)
    throw InsufficientData("fit_power_law_exponent: needs >= 50 positive observations");
  std::sort(xs.begin(), xs.end());

  // Unique values with tail counts / tail log-sums (suffix scans).
  std::vector<std::uint64_t> uniq;
  std::vector<std::size_t> first_index;
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (i == 0 || xs[i] != xs[i - 1]) {
      uniq.push_back(xs[i]);
      first_index.push_back(i);
    }
  std::vector<double> suffix_log(xs.size() + 1, 0.0);
  for (std::size_t i = xs.size(); i-- > 0;)
    suffix_log[i] = suffix_log[i + 1] + std::log(static_cast<double>(xs[i]));

  constexpr std::size_t kMinTail = 50;
  PowerLawFit best;
  bool found = false;
  for (std::size_t c = 0; c < uniq.size(); ++c) {
    const std::size_t tail_n = xs.size() - first_index[c];
    if (tail_n < kMinTail) break;        // tails only shrink from here on
    if (c + 1 >= uniq.size()) break;     // single unique value left: no slope
    const double x_min = static_cast<double>(uniq[c]);
    const double gamma = maximize_gamma(x_min, suffix_log[first_index[c]], tail_n);

    const double z0 = hurwitz_zeta(gamma, x_min);
    double ks = 0.0;
    for (std::size_t j = c; j < uniq.size(); ++j) {
      const std::size_t below_or_eq =
          (j + 1 < uniq.size() ? first_index[j + 1] : xs.size()) - first_index[c];
      const double ecdf = static_cast<double>(below_or_eq) / static_cast<double>(tail_n);
      const double tcdf = 1.0 - hurwitz_zeta(gamma, static_cast<double>(uniq[j]) + 1.0) / z0;
      ks = std::max(ks, std::abs(ecdf - tcdf));
    }
    if (!found || ks < best.ks_distance) {
      found = true;
      best.gamma = gamma;
      best.x_min = uniq[c];
      best.ks_distance = ks;
      best.tail_size = tail_n;
      best.degenerate = gamma >= kGammaHi - 1e-6;
    }
  }

  if (!found) {
    // No candidate with at least two distinct tail values: the exponent
    // diverges (e.g. an all-equal degree sequence).
    best.gamma = std::numeric_limits<double>::infinity();
    best.x_min = uniq.front();
    best.ks_distance = 0.0;
    best.tail_size = xs.size();
    best.degenerate = true;
  }
  return best;
}

FeatureRecord feature_record(const TimeStampedGraph& g) {
  FeatureRecord rec;
  rec.vertices = g.vertex_count();
  rec.edges = g.edge_count();
  rec.loops = g.loop_count();
  if (rec.vertices == 0) return rec;
  try {
    rec.density = density(g);
  } catch (const DegenerateGraph&) {
    rec.density = std::nullopt;  // |V| < 2; reported as an empty CSV field
  }
  const UndirectedGraph proj = g.undirected_projection();
  rec.triangles = triangle_count(proj);
  rec.avg_clustering = avg_clustering(proj);
  rec.degrees = degree_features(g);
  rec.components = component_features(g);
  rec.days = days_span(g);
  return rec;
}

EvalMetrics eval_metrics(const UndirectedGraph& g, std::uint64_t sp_seed) {
  EvalMetrics m;
  m.avg_clustering = avg_clustering(g);
  m.max_degree = max_degree(g);
  m.avg_shortest_path = avg_shortest_path(g, std::nullopt, sp_seed);
  std::vector<std::uint64_t> degs;
  degs.reserve(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) degs.push_back(g.degree(v));
  try {
    m.power_law = fit_power_law_exponent(degs);
  } catch (const InsufficientData&) {
    m.power_law = std::nullopt;
  }
  return m;
}

std::string feature_csv_header(std::string_view label_column) {
  std::string out(label_column);
  out +=
      ",Avg-deg,Avg-in-deg,CC,D,Days,LC-Ratio,Loops,Max-in-deg,Max-out-deg,"
      "|E_LC|,|E|,|Single|,|T|,|V_LC|,|V|,|WCC|\n";
  return out;
}

std::string feature_csv_row(std::string_view name, const FeatureRecord& r) {
  std::string out(name);
  auto real = [&](double v) {
    out += ',';
    out += fmt_g6(v);
  };
  auto count = [&](std::uint64_t v) {
    out += ',';
    out += std::to_string(v);
  };
  real(r.degrees.avg_deg);
  real(r.degrees.avg_in_deg);
  real(r.avg_clustering);
  if (r.density)
    real(*r.density);
  else
    out += ',';
  real(r.days);
  real(r.components.lc_ratio);
  count(r.loops);
  count(r.degrees.max_in_deg);
  count(r.degrees.max_out_deg);
  count(r.components.lc_edges);
  count(r.edges);
  count(r.components.singletons);
  count(r.triangles);
  count(r.components.lc_vertices);
  count(r.vertices);
  count(r.components.wcc_count);
  out += '\n';
  return out;
}

}  // namespace tempnet
