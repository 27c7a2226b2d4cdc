#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "spa/clustering.hpp"
#include "spa/graph.hpp"

namespace spa {

/// Asymptotic predictions for a parameter set.
struct TheoryConstants {
  double gamma;              // in-degree power-law exponent 1 + 1/(p A1)
  double mean_out;           // p A2 / (1 - p A1)
  std::vector<double> c;     // limiting fraction of in-degree i, i = 0..i_max
};

/// c_0 = 1/(1+pA2), c_i = c_{i-1} p (A1(i-1)+A2) / (1 + p(A1 i + A2)).
/// Cross-checks every c_i against the closed-form product; throws
/// DomainError when p*A1 >= 1.
TheoryConstants theory_constants(const ModelParams& params, std::size_t i_max);

/// c_i from the product form p^i/(1+pA2+ipA1) * prod_{j<i} (jA1+A2)/(1+pA2+jpA1).
double census_coefficient_product(const ModelParams& params, std::size_t i);

/// In-degree counts N_i at time t over all vertices born by t.
struct DegreeCensus {
  std::uint64_t t = 0;
  std::vector<std::uint64_t> counts;  // counts[i] = N_i

  std::uint64_t total() const;           // sum N_i
  std::uint64_t degree_sum() const;      // sum i N_i
  std::uint64_t count(std::size_t i) const { return i < counts.size() ? counts[i] : 0; }
};

/// Census of G_t; t defaults to n. In-degrees at t < n are replayed from edge
/// creation steps. Throws UsageError unless 1 <= t <= n.
DegreeCensus degree_census(const GrownGraph& graph, std::optional<std::uint64_t> t = std::nullopt);

/// Census of an arbitrary degree multiset (t = sample size).
DegreeCensus census_from_degrees(std::span<const std::uint64_t> degrees);

/// Counts, for i = 0..i_max, vertices born by t lying in the closed ball of
/// the given volume around center whose in-degree at t is i.
/// Throws UsageError unless 0 < volume <= 1 and 1 <= t <= n.
std::vector<std::uint64_t> ball_census(const GrownGraph& graph, std::span<const double> center,
                                       double volume, std::uint64_t t, std::size_t i_max);

/// Nine fixed ball centers: a 3x3 grid at {1/6, 1/2, 5/6} on the first two
/// axes (other axes at 1/2); for m = 1, the points (j + 1/2)/9.
std::vector<TorusPoint> ball_centers(int dimension);

struct PowerLawFit {
  double estimate;          // 1 + N / sum ln(d / (d_min - 1/2))
  double std_error;         // (estimate - 1) / sqrt(N)
  std::uint64_t tail_count; // N: vertices with degree >= d_min
  std::uint64_t d_min;
  double ls_exponent;       // minus the log-log slope of log-binned densities; NaN if < 2 bins
};

/// Discrete power-law tail exponent by continuous-approximation MLE.
/// Throws DomainError with fewer than `min_tail` tail vertices or when all
/// tail degrees are equal.
PowerLawFit powerlaw_exponent(const DegreeCensus& census, std::uint64_t d_min,
                              std::uint64_t min_tail = 100);

struct TrajectoryCheck {
  VertexId vertex = 0;
  std::uint64_t k = 0;       // final in-degree
  double t_v = 0.0;          // onset n (omega ln n / k)^(1/(p A1)), clamped to [1, n]
  bool vacuous = false;      // k < omega ln n: the concentration claim does not apply
  double ratio_min = 0.0;
  double ratio_max = 0.0;
  std::size_t samples = 0;   // samples with t >= t_v
};

/// Extremes of deg^-(v,t) / (k (t/n)^(p A1)) over recorded samples with t >= T_v.
/// Throws UsageError when v has no trajectory.
TrajectoryCheck trajectory_check(const GrownGraph& graph, VertexId v, double omega);

/// Same check on an explicit trajectory.
TrajectoryCheck trajectory_check(const Trajectory& trajectory, std::uint64_t k, std::uint64_t n,
                                 double p_a1, double omega, VertexId v = 0);

struct LineFit {
  double slope;
  double intercept;
  double r2;
  std::size_t points;
};

/// Least squares of log(mean) on log(d) over bins with d_lo <= d <= d_hi,
/// count >= min_count and mean > 0. Throws DomainError with fewer than 5 bins.
LineFit curve_slope(const DegreeCurve& curve, double d_lo, double d_hi, std::uint64_t min_count);

/// Ordinary least squares y = a + b x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

double mean_out_degree(const GrownGraph& graph);

}  // namespace spa
