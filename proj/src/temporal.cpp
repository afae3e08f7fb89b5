#include "tempnet/temporal.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "tempnet/error.hpp"

namespace tempnet {

namespace {
constexpr double kSecondsPerWeek = 7.0 * 86400.0;
}

std::string_view growth_kind_name(GrowthKind kind) {
  switch (kind) {
    case GrowthKind::Polynomial:
      return "polynomial";
    case GrowthKind::Sublinear:
      return "sublinear";
    case GrowthKind::Linear:
      return "linear";
    case GrowthKind::Superlinear:
      return "superlinear";
    case GrowthKind::Sigmoidal:
      return "sigmoidal";
    case GrowthKind::EventsOriented:
      return "events_oriented";
  }
  return "?";
}

std::string_view fit_kind_name(FitKind kind) {
  switch (kind) {
    case FitKind::Quartic:
      return "quartic";
    case FitKind::Mmf:
      return "mmf";
    case FitKind::None:
      return "none";
  }
  return "?";
}

UJCurve build_ujc(std::span<const JoinEvent> events) {
  std::unordered_map<std::string, std::int64_t> earliest;
  for (const auto& ev : events) {
    auto [it, inserted] = earliest.try_emplace(ev.user, ev.timestamp);
    if (!inserted && ev.timestamp < it->second) it->second = ev.timestamp;
  }
  if (earliest.size() < 2) throw DegenerateSpan("build_ujc: needs at least 2 distinct users");

  std::vector<std::int64_t> times;
  times.reserve(earliest.size());
  for (const auto& [user, t] : earliest) times.push_back(t);
  std::sort(times.begin(), times.end());
  const std::int64_t t0 = times.front();
  const std::int64_t t1 = times.back();
  if (t1 == t0) throw DegenerateSpan("build_ujc: all users joined at the same instant");

  std::vector<double> offsets(times.size());
  for (std::size_t i = 0; i < times.size(); ++i)
    offsets[i] = static_cast<double>(times[i] - t0) / kSecondsPerWeek;

  UJCurve curve;
  curve.total_users = times.size();
  curve.t_end_weeks = static_cast<double>(t1 - t0) / kSecondsPerWeek;
  const double n = static_cast<double>(times.size());
  for (double t = 0.0; t < curve.t_end_weeks; t += 4.0) {
    const auto joined = std::lower_bound(offsets.begin(), offsets.end(), t) - offsets.begin();
    curve.samples.emplace_back(t, static_cast<double>(joined) / n);
  }
  curve.samples.emplace_back(curve.t_end_weeks, 1.0);
  return curve;
}

double normalized_area(const QuarticFit& fit, double t_end_weeks) {
  if (!(t_end_weeks > 0.0)) throw InvalidParams("normalized_area: t_end must be positive");
  double integral = 0.0;
  double power = t_end_weeks;
  for (std::size_t k = 0; k < fit.coefficients.size(); ++k) {
    integral += fit.coefficients[k] * power / static_cast<double>(k + 1);
    power *= t_end_weeks;
  }
  return integral / t_end_weeks;
}

namespace {

GrowthKind category_from_norm_area(double narea) {
  const double v = std::clamp(narea, 0.0, 1.0);
  if (v < 0.24) return GrowthKind::Polynomial;
  if (v < 0.40) return GrowthKind::Sublinear;
  if (v < 0.56) return GrowthKind::Linear;
  if (v < 0.72) return GrowthKind::Superlinear;
  return GrowthKind::Sigmoidal;
}

}  // namespace

GrowthCategory categorize_ujc(const UJCurve& curve) {
  constexpr double kThreshold = 0.95;
  GrowthCategory out;
  try {
    const QuarticFit q = fit_quartic(curve.samples);
    if (q.r_squared >= kThreshold) {
      out.fit_kind = FitKind::Quartic;
      out.r_squared = q.r_squared;
      out.norm_area = normalized_area(q, curve.t_end_weeks);
      out.kind = category_from_norm_area(*out.norm_area);
      return out;
    }
  } catch (const Error&) {
    // fall through to the MMF branch
  }
  try {
    const MMFFit m = fit_mmf(curve.samples);
    out.fit_kind = FitKind::Mmf;
    out.r_squared = m.r_squared;
    out.kind = m.r_squared >= kThreshold ? GrowthKind::Sigmoidal : GrowthKind::EventsOriented;
    return out;
  } catch (const Error&) {
    out.fit_kind = FitKind::None;
    out.r_squared = 0.0;
    out.kind = GrowthKind::EventsOriented;
    out.diagnostic = true;
    return out;
  }
}

TimeDiffDistribution edge_time_differences(const TimeStampedGraph& g, double bin_width_days,
                                           std::span<const double> tail_thresholds) {
  if (g.edge_count() == 0) throw InvalidParams("edge_time_differences: graph has no edges");
  if (!(bin_width_days > 0.0)) throw InvalidParams("edge_time_differences: bad bin width");

  std::vector<double> diffs;
  diffs.reserve(g.edge_count());
  for (const auto& [u, v] : g.edges())
    diffs.push_back(std::abs(static_cast<double>(g.join_time(u) - g.join_time(v))) / 86400.0);
  std::sort(diffs.begin(), diffs.end());

  TimeDiffDistribution dist;
  dist.bin_width_days = bin_width_days;
  dist.total_edges = diffs.size();
  const std::size_t nbins =
      static_cast<std::size_t>(std::floor(diffs.back() / bin_width_days)) + 1;
  dist.bins.resize(nbins);
  for (std::size_t i = 0; i < nbins; ++i)
    dist.bins[i].midpoint_days = (static_cast<double>(i) + 0.5) * bin_width_days;
  for (double d : diffs) {
    const std::size_t idx =
        std::min(static_cast<std::size_t>(std::floor(d / bin_width_days)), nbins - 1);
    ++dist.bins[idx].count;
  }
  for (auto& bin : dist.bins)
    bin.probability = static_cast<double>(bin.count) / static_cast<double>(dist.total_edges);

  const std::size_t mid = diffs.size() / 2;
  dist.median_days =
      diffs.size() % 2 ? diffs[mid] : 0.5 * (diffs[mid - 1] + diffs[mid]);

  for (double threshold : tail_thresholds) {
    const auto beyond =
        diffs.end() - std::upper_bound(diffs.begin(), diffs.end(), threshold);
    dist.tail_fractions.emplace_back(
        threshold, static_cast<double>(beyond) / static_cast<double>(diffs.size()));
  }
  return dist;
}

ExponentialFit link_probability_estimate(const TimeDiffDistribution& dist) {
  std::size_t nonzero = 0;
  for (const auto& bin : dist.bins)
    if (bin.count > 0) ++nonzero;
  if (nonzero < 10)
    throw InsufficientData("link_probability_estimate: needs >= 10 nonzero bins");
  std::vector<XY> pts;
  pts.reserve(dist.bins.size());
  for (const auto& bin : dist.bins) pts.emplace_back(bin.midpoint_days, bin.probability);
  return fit_exponential(pts);
}

}  // namespace tempnet
