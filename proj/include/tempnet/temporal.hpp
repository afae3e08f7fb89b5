#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tempnet/fitting.hpp"
#include "tempnet/graph.hpp"

namespace tempnet {

struct JoinEvent {
  std::string user;
  std::int64_t timestamp = 0;  // seconds since epoch
};

// Cumulative fraction of eventual members that joined before t weeks,
// sampled every 4 weeks plus a final sample at t_end. The strictly-before
// convention makes the curve start at exactly 0; it always ends at exactly 1.
struct UJCurve {
  std::vector<XY> samples;  // (t in weeks, fraction)
  double t_end_weeks = 0.0;
  std::size_t total_users = 0;
};

enum class GrowthKind {
  Polynomial,
  Sublinear,
  Linear,
  Superlinear,
  Sigmoidal,
  EventsOriented,
};

enum class FitKind { Quartic, Mmf, None };

struct GrowthCategory {
  GrowthKind kind = GrowthKind::EventsOriented;
  FitKind fit_kind = FitKind::None;
  std::optional<double> norm_area;  // present iff fit_kind == Quartic
  double r_squared = 0.0;
  bool diagnostic = false;  // a fit error forced the events_oriented fallback
};

std::string_view growth_kind_name(GrowthKind kind);
std::string_view fit_kind_name(FitKind kind);

struct TimeDiffDistribution {
  double bin_width_days = 1.0;
  struct Bin {
    double midpoint_days = 0.0;
    std::uint64_t count = 0;
    double probability = 0.0;
  };
  std::vector<Bin> bins;
  std::uint64_t total_edges = 0;
  double median_days = 0.0;
  // fraction of edges whose difference exceeds each requested threshold
  std::vector<std::pair<double, double>> tail_fractions;
};

// Duplicate users keep their earliest event. Throws DegenerateSpan unless
// there are >= 2 distinct users spanning > 0 time.
UJCurve build_ujc(std::span<const JoinEvent> events);

// Closed-form integral of the fitted quartic over [0, t_end] divided by
// t_end. The raw value is returned unclamped.
double normalized_area(const QuarticFit& fit, double t_end_weeks);

// Quartic fit first; R^2 >= 0.95 places the curve by norm-area
// ([0,.24) polynomial, [.24,.4) sublinear, [.4,.56) linear,
// [.56,.72) superlinear, [.72,1) sigmoidal). Otherwise an MMF fit with
// R^2 >= 0.95 is sigmoidal, and anything else is events-oriented.
GrowthCategory categorize_ujc(const UJCurve& curve);

// Histogram of |join(u) - join(v)| in fractional days over every edge
// (self-loops included, at zero difference).
TimeDiffDistribution edge_time_differences(const TimeStampedGraph& g,
                                           double bin_width_days = 1.0,
                                           std::span<const double> tail_thresholds = {});

// Exponential fit of (bin midpoint, probability); needs >= 10 nonzero bins.
ExponentialFit link_probability_estimate(const TimeDiffDistribution& dist);

}  // namespace tempnet
