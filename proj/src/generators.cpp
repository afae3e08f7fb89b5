#include "tempnet/generators.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "tempnet/error.hpp"
#include "tempnet/util.hpp"

namespace tempnet {

double TimeDiffFunction::operator()(std::uint32_t t) const {
  switch (kind) {
    case Kind::Exp2:
      return std::exp2(-c - static_cast<double>(t));
    case Kind::Geometric:
      return a * std::pow(r, static_cast<double>(t));
  }
  return 0.0;
}

TimeDiffFunction TimeDiffFunction::exp2(double c) {
  TimeDiffFunction f;
  f.kind = Kind::Exp2;
  f.c = c;
  return f;
}

TimeDiffFunction TimeDiffFunction::geometric(double a, double r) {
  if (a <= 0.0 || r <= 0.0)
    throw InvalidParams("time-diff function: geometric needs a > 0 and r > 0");
  TimeDiffFunction f;
  f.kind = Kind::Geometric;
  f.a = a;
  f.r = r;
  return f;
}

TimeDiffFunction TimeDiffFunction::parse(std::string_view spec) {
  const auto parts = split(spec, ':');
  if (parts.size() == 2 && parts[0] == "exp2") return exp2(parse_double(parts[1]));
  if (parts.size() == 3 && parts[0] == "geo")
    return geometric(parse_double(parts[1]), parse_double(parts[2]));
  throw InvalidParams("time-diff function: expected exp2:<c> or geo:<a>:<r>, got '" +
                      std::string(spec) + "'");
}

std::string TimeDiffFunction::to_string() const {
  switch (kind) {
    case Kind::Exp2:
      return "exp2:" + fmt_g6(c);
    case Kind::Geometric:
      return "geo:" + fmt_g6(a) + ":" + fmt_g6(r);
  }
  return {};
}

std::uint64_t GrowthSchedule::total() const {
  std::uint64_t sum = 0;
  for (auto b : batches) sum += b;
  return sum;
}

GrowthSchedule GrowthSchedule::linear(std::uint64_t target) {
  if (target == 0) throw InvalidParams("growth schedule: target must be positive");
  GrowthSchedule s;
  s.kind = Kind::Linear;
  constexpr std::uint32_t kBatch = 10;
  for (std::uint64_t placed = 0; placed < target; placed += kBatch)
    s.batches.push_back(static_cast<std::uint32_t>(std::min<std::uint64_t>(kBatch, target - placed)));
  return s;
}

GrowthSchedule GrowthSchedule::polynomial(std::uint64_t target) {
  // Batches 5*x^2 for x = 0..T-1, the x = 0 batch dropped as empty.
  GrowthSchedule s;
  s.kind = Kind::Polynomial;
  std::uint64_t sum = 0;
  for (std::uint64_t x = 0; sum < target; ++x) {
    const std::uint64_t batch = 5 * x * x;
    if (batch == 0) continue;
    sum += batch;
    s.batches.push_back(static_cast<std::uint32_t>(batch));
  }
  if (sum != target)
    throw InvalidParams("growth schedule: target " + std::to_string(target) +
                        " is not a partial sum of 5*x^2");
  return s;
}

GrowthSchedule GrowthSchedule::sigmoidal(std::uint64_t target) {
  GrowthSchedule s = polynomial(target);
  s.kind = Kind::Sigmoidal;
  std::reverse(s.batches.begin(), s.batches.end());
  return s;
}

GrowthSchedule GrowthSchedule::explicit_batches(std::vector<std::uint32_t> batches) {
  GrowthSchedule s;
  s.kind = Kind::Explicit;
  s.batches = std::move(batches);
  if (s.total() == 0) throw InvalidParams("growth schedule: needs at least one positive batch");
  return s;
}

GrowthSchedule GrowthSchedule::parse(std::string_view spec) {
  const auto parts = split(spec, ':');
  if (parts.size() != 2)
    throw InvalidParams("growth schedule: expected <kind>:<arg>, got '" + std::string(spec) + "'");
  if (parts[0] == "linear") return linear(parse_u64(parts[1]));
  if (parts[0] == "poly") return polynomial(parse_u64(parts[1]));
  if (parts[0] == "sig") return sigmoidal(parse_u64(parts[1]));
  if (parts[0] == "explicit") {
    std::vector<std::uint32_t> batches;
    for (const auto& item : split(parts[1], ','))
      batches.push_back(static_cast<std::uint32_t>(parse_u64(item)));
    return explicit_batches(std::move(batches));
  }
  throw InvalidParams("growth schedule: unknown kind '" + std::string(parts[0]) + "'");
}

std::string GrowthSchedule::to_string() const {
  switch (kind) {
    case Kind::Linear:
      return "linear:" + std::to_string(total());
    case Kind::Polynomial:
      return "poly:" + std::to_string(total());
    case Kind::Sigmoidal:
      return "sig:" + std::to_string(total());
    case Kind::Explicit: {
      std::string out = "explicit:";
      for (std::size_t i = 0; i < batches.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(batches[i]);
      }
      return out;
    }
  }
  return {};
}

GrowthSchedule growth_sequence(GrowthSchedule::Kind kind, std::uint64_t target) {
  switch (kind) {
    case GrowthSchedule::Kind::Linear:
      return GrowthSchedule::linear(target);
    case GrowthSchedule::Kind::Polynomial:
      return GrowthSchedule::polynomial(target);
    case GrowthSchedule::Kind::Sigmoidal:
      return GrowthSchedule::sigmoidal(target);
    case GrowthSchedule::Kind::Explicit:
      break;
  }
  throw InvalidParams("growth_sequence: explicit schedules carry their own batches");
}

void GeneratorParams::validate() const {
  if (m < 1) throw InvalidParams("generator params: m must be >= 1");
  if (retry_cap < 1) throw InvalidParams("generator params: retry_cap must be >= 1");
  if (schedule.batches.empty() || schedule.total() == 0)
    throw InvalidParams("generator params: empty growth schedule");
  for (std::uint32_t t = 0; t < schedule.batches.size(); ++t)
    if (!(f(t) > 0.0)) throw InvalidParams("generator params: f must be positive over the schedule");
}

std::vector<double> group_weights(const TimeDiffFunction& f, std::uint32_t current_group,
                                  std::span<const std::size_t> group_sizes) {
  std::vector<double> w(current_group + 1, 0.0);
  for (std::uint32_t g = 0; g <= current_group; ++g) {
    if (group_sizes[g] == 0) continue;  // empty groups are not sampling targets
    w[g] = f(current_group - g);
  }
  return w;
}

TimeGroupedGraph generate_tpa(const GeneratorParams& params) {
  params.validate();
  Rng rng(params.seed);
  TimeGroupedGraph g;
  GroupPickList picks;
  std::vector<std::size_t> group_sizes(params.schedule.batches.size(), 0);

  for (std::uint32_t i = 0; i < params.schedule.batches.size(); ++i) {
    const std::uint32_t batch = params.schedule.batches[i];
    picks.ensure_group(i);
    const VertexId first = static_cast<VertexId>(g.vertex_count());
    for (std::uint32_t b = 0; b < batch; ++b) {
      const VertexId v = g.add_vertex(i);
      picks.add_vertex(i, v);
    }
    group_sizes[i] = batch;

    const std::vector<double> weights =
        group_weights(params.f, i, std::span<const std::size_t>(group_sizes.data(), i + 1));
    if (std::all_of(weights.begin(), weights.end(), [](double w) { return w <= 0.0; }))
      continue;  // nothing to wire against (all groups so far empty)

    for (VertexId v = first; v < first + batch; ++v) {
      for (std::uint32_t slot = 0; slot < params.m; ++slot) {
        for (std::uint32_t attempt = 0; attempt < params.retry_cap; ++attempt) {
          const std::uint32_t r = static_cast<std::uint32_t>(weighted_index(rng, weights));
          const VertexId u = picks.sample(r, rng);
          if (u == v || g.has_edge(v, u)) continue;
          g.add_edge(v, u);
          picks.note_edge_endpoint(i, v);
          picks.note_edge_endpoint(r, u);
          break;
        }
        // retry_cap exhausted: the slot is abandoned and |E| falls short.
      }
    }
  }
  return g;
}

UndirectedGraph generate_ba(std::uint64_t n, std::uint32_t m, std::uint64_t seed) {
  if (m < 1 || n <= m) throw InvalidParams("generate_ba: need n > m >= 1");
  Rng rng(seed);
  UndirectedGraph g;
  std::vector<VertexId> pick_list;  // vertex repeated once per unit of degree
  for (std::uint32_t i = 0; i < m; ++i) g.add_vertex();

  std::vector<VertexId> targets;
  for (std::uint64_t step = m; step < n; ++step) {
    const VertexId v = g.add_vertex();
    targets.clear();
    std::unordered_set<VertexId> chosen;
    while (targets.size() < m) {
      VertexId u;
      if (pick_list.empty()) {
        // All existing vertices still have degree zero: uniform choice.
        u = static_cast<VertexId>(uniform_u64(rng, v));
      } else {
        u = pick_list[uniform_index(rng, pick_list.size())];
      }
      if (!chosen.insert(u).second) continue;
      targets.push_back(u);
    }
    for (VertexId u : targets) {
      g.add_edge(v, u);
      pick_list.push_back(v);
      pick_list.push_back(u);
    }
  }
  return g;
}

UndirectedGraph generate_ws(std::uint64_t n, std::uint32_t k, double p, std::uint64_t seed) {
  if (k < 2 || k % 2 != 0 || n <= k) throw InvalidParams("generate_ws: need n > k >= 2, k even");
  if (p < 0.0 || p > 1.0) throw InvalidParams("generate_ws: p must be in [0, 1]");
  Rng rng(seed);

  std::unordered_set<std::uint64_t> keys;
  auto key = [](VertexId a, VertexId b) {
    if (a > b) std::swap(a, b);
    return edge_key(a, b);
  };
  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(n * k / 2);
  for (std::uint64_t u = 0; u < n; ++u)
    for (std::uint32_t j = 1; j <= k / 2; ++j) {
      const VertexId a = static_cast<VertexId>(u);
      const VertexId b = static_cast<VertexId>((u + j) % n);
      edges.emplace_back(a, b);
      keys.insert(key(a, b));
    }

  constexpr int kRewireAttempts = 100;
  for (auto& [u, v] : edges) {
    if (uniform_real(rng) >= p) continue;
    for (int attempt = 0; attempt < kRewireAttempts; ++attempt) {
      const VertexId w = static_cast<VertexId>(uniform_u64(rng, n));
      if (w == u || keys.count(key(u, w))) continue;
      keys.erase(key(u, v));
      keys.insert(key(u, w));
      v = w;
      break;
    }
  }

  std::sort(edges.begin(), edges.end(), [](auto a, auto b) {
    if (a.first > a.second) std::swap(a.first, a.second);
    if (b.first > b.second) std::swap(b.first, b.second);
    return a < b;
  });
  UndirectedGraph g;
  for (std::uint64_t i = 0; i < n; ++i) g.add_vertex();
  for (const auto& [u, v] : edges) g.add_edge(u, v);
  return g;
}

}  // namespace tempnet
