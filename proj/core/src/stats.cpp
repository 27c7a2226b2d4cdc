#include "spa/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "spa/error.hpp"

namespace spa {

namespace {

void check_time(const GrownGraph& g, std::uint64_t t) {
  if (t < 1 || t > g.vertex_count()) {
    throw UsageError("census time must lie in [1, n], got " + std::to_string(t));
  }
}

}  // namespace

double census_coefficient_product(const ModelParams& params, std::size_t i) {
  const double p = params.p, a1 = params.a1, a2 = params.a2;
  // p is folded into each factor; p^i alone underflows long before c_i does.
  double value = 1.0 / (1.0 + p * a2 + static_cast<double>(i) * p * a1);
  for (std::size_t j = 0; j < i; ++j) {
    const double jd = static_cast<double>(j);
    value *= p * (jd * a1 + a2) / (1.0 + p * a2 + jd * p * a1);
  }
  return value;
}

TheoryConstants theory_constants(const ModelParams& params, std::size_t i_max) {
  const double p = params.p, a1 = params.a1, a2 = params.a2;
  if (!(p * a1 < 1.0)) throw DomainError("p*A1 must be < 1");
  TheoryConstants tc;
  tc.gamma = 1.0 + 1.0 / (p * a1);
  tc.mean_out = p * a2 / (1.0 - p * a1);
  tc.c.resize(i_max + 1);
  tc.c[0] = 1.0 / (1.0 + p * a2);
  for (std::size_t i = 1; i <= i_max; ++i) {
    const double id = static_cast<double>(i);
    tc.c[i] = tc.c[i - 1] * p * (a1 * (id - 1.0) + a2) / (1.0 + p * (a1 * id + a2));
  }
  for (std::size_t i = 0; i <= i_max; ++i) {
    const double closed = census_coefficient_product(params, i);
    const double scale = std::max(std::fabs(closed), std::numeric_limits<double>::min());
    if (std::fabs(closed - tc.c[i]) > 1e-12 * scale) {
      throw std::logic_error("census coefficient recurrence and product form disagree at i=" +
                             std::to_string(i));
    }
  }
  return tc;
}

std::uint64_t DegreeCensus::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

std::uint64_t DegreeCensus::degree_sum() const {
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) sum += i * counts[i];
  return sum;
}

DegreeCensus degree_census(const GrownGraph& graph, std::optional<std::uint64_t> t) {
  const std::uint64_t at = t.value_or(graph.vertex_count());
  check_time(graph, at);
  DegreeCensus census;
  census.t = at;
  for (VertexId v = 1; v <= at; ++v) {
    const std::uint64_t d = at == graph.vertex_count() ? graph.in_degree(v) : graph.in_degree_at(v, at);
    if (d >= census.counts.size()) census.counts.resize(d + 1, 0);
    ++census.counts[d];
  }
  return census;
}

DegreeCensus census_from_degrees(std::span<const std::uint64_t> degrees) {
  DegreeCensus census;
  census.t = degrees.size();
  for (std::uint64_t d : degrees) {
    if (d >= census.counts.size()) census.counts.resize(d + 1, 0);
    ++census.counts[d];
  }
  return census;
}

std::vector<std::uint64_t> ball_census(const GrownGraph& graph, std::span<const double> center,
                                       double volume, std::uint64_t t, std::size_t i_max) {
  check_time(graph, t);
  const ModelParams& params = graph.params();
  const double radius = volume_to_radius(volume, params.dimension, params.norm);
  std::vector<std::uint64_t> counts(i_max + 1, 0);
  for (VertexId v = 1; v <= t; ++v) {
    const double d = torus_distance(center, graph.position(v), params.norm);
    if (!within_sphere(d, volume, radius)) continue;
    const std::uint64_t deg = graph.in_degree_at(v, t);
    if (deg <= i_max) ++counts[deg];
  }
  return counts;
}

std::vector<TorusPoint> ball_centers(int dimension) {
  if (dimension < 1) throw UsageError("dimension must be >= 1");
  std::vector<TorusPoint> centers;
  for (int j = 0; j < 9; ++j) {
    std::vector<double> x(static_cast<std::size_t>(dimension), 0.5);
    if (dimension == 1) {
      x[0] = (j + 0.5) / 9.0;
    } else {
      x[0] = (2 * (j % 3) + 1) / 6.0;
      x[1] = (2 * (j / 3) + 1) / 6.0;
    }
    centers.emplace_back(std::move(x));
  }
  return centers;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
  const double intercept = my - slope * mx;
  // A perfectly flat response is fit exactly.
  const double r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return {slope, intercept, r2, x.size()};
}

PowerLawFit powerlaw_exponent(const DegreeCensus& census, std::uint64_t d_min,
                              std::uint64_t min_tail) {
  if (d_min < 1) throw UsageError("d_min must be >= 1");
  std::uint64_t tail = 0;
  std::size_t distinct = 0;
  double log_sum = 0.0;
  const double shift = static_cast<double>(d_min) - 0.5;
  for (std::size_t d = d_min; d < census.counts.size(); ++d) {
    const std::uint64_t c = census.counts[d];
    if (c == 0) continue;
    tail += c;
    ++distinct;
    log_sum += static_cast<double>(c) * std::log(static_cast<double>(d) / shift);
  }
  if (tail < min_tail) {
    throw DomainError("power-law fit needs at least " + std::to_string(min_tail) +
                      " vertices with degree >= " + std::to_string(d_min) + ", got " +
                      std::to_string(tail) + " (short by " + std::to_string(min_tail - tail) + ")");
  }
  if (distinct < 2) throw DomainError("power-law fit: all tail degrees are equal (degenerate input)");

  PowerLawFit fit{};
  fit.tail_count = tail;
  fit.d_min = d_min;
  fit.estimate = 1.0 + static_cast<double>(tail) / log_sum;
  fit.std_error = (fit.estimate - 1.0) / std::sqrt(static_cast<double>(tail));

  // Diagnostic: densities in doubling bins [d_min 2^j, d_min 2^(j+1)).
  std::vector<double> lx, ly;
  for (std::uint64_t lo = d_min; lo < census.counts.size(); lo *= 2) {
    const std::uint64_t hi = std::min<std::uint64_t>(lo * 2, census.counts.size());
    std::uint64_t c = 0;
    for (std::uint64_t d = lo; d < hi; ++d) c += census.counts[d];
    if (c > 0) {
      lx.push_back(0.5 * (std::log(static_cast<double>(lo)) + std::log(static_cast<double>(lo * 2))));
      ly.push_back(std::log(static_cast<double>(c) / static_cast<double>(lo)));
    }
  }
  fit.ls_exponent = lx.size() >= 2 ? -fit_line(lx, ly).slope : std::numeric_limits<double>::quiet_NaN();
  return fit;
}

TrajectoryCheck trajectory_check(const Trajectory& trajectory, std::uint64_t k, std::uint64_t n,
                                 double p_a1, double omega, VertexId v) {
  TrajectoryCheck check;
  check.vertex = v;
  check.k = k;
  const double nd = static_cast<double>(n);
  const double floor_degree = omega * std::log(nd);
  if (k == 0 || static_cast<double>(k) < floor_degree) {
    check.vacuous = true;
    check.t_v = nd;
    return check;
  }
  check.t_v = std::clamp(nd * std::pow(floor_degree / static_cast<double>(k), 1.0 / p_a1), 1.0, nd);
  check.ratio_min = std::numeric_limits<double>::infinity();
  check.ratio_max = 0.0;
  for (const auto& s : trajectory) {
    if (static_cast<double>(s.t) < check.t_v) continue;
    const double expected = static_cast<double>(k) * std::pow(static_cast<double>(s.t) / nd, p_a1);
    const double ratio = static_cast<double>(s.in_degree) / expected;
    check.ratio_min = std::min(check.ratio_min, ratio);
    check.ratio_max = std::max(check.ratio_max, ratio);
    ++check.samples;
  }
  if (check.samples == 0) {
    check.ratio_min = check.ratio_max = std::numeric_limits<double>::quiet_NaN();
  }
  return check;
}

TrajectoryCheck trajectory_check(const GrownGraph& graph, VertexId v, double omega) {
  const auto& params = graph.params();
  return trajectory_check(graph.trajectory(v), graph.in_degree(v), graph.vertex_count(),
                          params.p * params.a1, omega, v);
}

LineFit curve_slope(const DegreeCurve& curve, double d_lo, double d_hi, std::uint64_t min_count) {
  std::vector<double> x, y;
  for (const auto& [d, bin] : curve) {
    if (d < d_lo || d > d_hi || bin.count < min_count || !(bin.mean > 0.0)) continue;
    x.push_back(std::log(d));
    y.push_back(std::log(bin.mean));
  }
  if (x.size() < 5) {
    throw DomainError("curve_slope needs at least 5 usable bins in [" + std::to_string(d_lo) + ", " +
                      std::to_string(d_hi) + "], got " + std::to_string(x.size()));
  }
  return fit_line(x, y);
}

double mean_out_degree(const GrownGraph& graph) {
  return static_cast<double>(graph.edge_count()) / static_cast<double>(graph.vertex_count());
}

}  // namespace spa
