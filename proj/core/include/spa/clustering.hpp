#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "spa/graph.hpp"

namespace spa {

/// How the split time T_hat(v) separating old from new in-neighbors is chosen.
struct SplitPolicy {
  enum class Mode {
    ThresholdLog,  // first t with deg^-(v,t) > omega * ln n
    HalfFinal,     // first t with deg^-(v,t) > deg^-(v,n) / 2
  };
  Mode mode = Mode::HalfFinal;
  std::optional<double> omega;  // ThresholdLog only; defaults to ln ln n

  static SplitPolicy threshold_log(std::optional<double> omega = std::nullopt) {
    return {Mode::ThresholdLog, omega};
  }
  static SplitPolicy half_final() { return {Mode::HalfFinal, std::nullopt}; }

  // "log" or "half".
  static SplitPolicy parse(std::string_view text);
  std::string_view name() const noexcept;
};

/// ln ln n, the default slowly growing omega(n).
double default_omega(std::uint64_t n);

/// Split time for v from its recorded trajectory; n when the threshold is
/// never exceeded. Throws UsageError if v has no trajectory.
std::uint64_t split_time(const GrownGraph& graph, VertexId v, const SplitPolicy& policy);

/// c^-(v,n): directed edges among in-neighbors over C(deg^-, 2).
/// Empty when deg^-(v) < 2.
std::optional<double> local_clustering_directed(const GrownGraph& graph, VertexId v);

/// c(v,n) on the undirected view (neighbors = in- and out-neighbors).
/// Empty when the undirected degree is < 2.
std::optional<double> local_clustering_undirected(const GrownGraph& graph, VertexId v);

struct OldNewSplit {
  std::uint64_t split_time;
  std::uint64_t old_edges;
  std::uint64_t new_edges;
  double c_old;
  double c_new;
};

/// Partitions E(N^-(v,n)) into edges whose target is an old in-neighbor
/// (arrived no later than T_hat(v)) and the rest.
/// Throws UsageError when deg^-(v) < 2 or v has no trajectory.
OldNewSplit old_new_split(const GrownGraph& graph, VertexId v, const SplitPolicy& policy);

/// Per-vertex clustering values. Fields are empty where undefined.
struct VertexClustering {
  VertexId vertex = 0;
  std::uint64_t in_degree = 0;
  std::uint64_t degree = 0;       // undirected: in + out
  std::uint64_t directed_edges = 0;
  std::uint64_t undirected_edges = 0;
  std::optional<double> c_directed;
  std::optional<double> c_undirected;
  std::optional<double> c_old;
  std::optional<double> c_new;
};

struct ClusteringReport {
  std::vector<VertexClustering> per_vertex;  // ascending vertex id; eligible vertices only
  std::optional<SplitPolicy> split;          // empty when old/new was not computed
};

/// Clustering of every vertex with deg^- >= 2 or undirected degree >= 2.
/// When `split` is given, also fills c_old / c_new (requires trajectories).
ClusteringReport compute_clustering(const GrownGraph& graph,
                                    const std::optional<SplitPolicy>& split = std::nullopt);

/// Concatenates per-vertex records of several replicas for pooled curves.
ClusteringReport pool_reports(std::span<const ClusteringReport> reports);

enum class Variant { Directed, Undirected, Old, New };

std::string_view to_string(Variant variant);
inline constexpr Variant kAllVariants[] = {Variant::Directed, Variant::Undirected, Variant::Old,
                                           Variant::New};

struct CurveBin {
  std::uint64_t count = 0;
  double mean = 0.0;

  friend bool operator==(const CurveBin&, const CurveBin&) = default;
};

/// Degree (or band center) -> bin. Bins with no eligible vertex are absent.
using DegreeCurve = std::map<double, CurveBin>;

/// Exact-degree curve. Directed, old and new variants bin by deg^-,
/// the undirected variant by the undirected degree.
DegreeCurve clustering_curve(const ClusteringReport& report, Variant variant);

/// Geometric grid 2, 2*ratio, 2*ratio^2, ... up to max_degree.
std::vector<double> geometric_grid(double max_degree, double ratio = 1.1, double start = 2.0);

/// Curve averaged over X_d = {v : (1-delta) d <= deg(v) <= (1+delta) d}
/// for d on the given grid (default: geometric grid up to the largest degree).
/// Throws UsageError unless 0 < delta < 1/2.
DegreeCurve banded_curve(const ClusteringReport& report, Variant variant, double delta,
                         std::optional<std::vector<double>> grid = std::nullopt);

/// (degree, c) for every vertex where the variant is defined.
std::vector<std::pair<std::uint64_t, double>> scatter_export(const ClusteringReport& report,
                                                             Variant variant);

/// 3 * triangles / connected triples on the undirected view; 0 without triples.
double global_clustering(const GrownGraph& graph);

}  // namespace spa
