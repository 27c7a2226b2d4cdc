#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spa/params.hpp"
#include "spa/spatial_index.hpp"

namespace spa {

struct TrajectorySample {
  std::uint64_t t;
  std::uint64_t in_degree;

  friend bool operator==(const TrajectorySample&, const TrajectorySample&) = default;
};

using Trajectory = std::vector<TrajectorySample>;

/// Which vertices get a recorded in-degree trajectory.
struct TrackPolicy {
  enum class Kind { None, All, TopK };
  Kind kind = Kind::All;
  std::size_t k = 0;

  static TrackPolicy none() { return {Kind::None, 0}; }
  static TrackPolicy all() { return {Kind::All, 0}; }
  static TrackPolicy top(std::size_t k) { return {Kind::TopK, k}; }

  // "none", "all" or "top:K".
  static TrackPolicy parse(std::string_view text);
  std::string to_string() const;
};

/// Final directed SPA graph G_n. Vertices are 1..n by birth; every edge points
/// from a younger vertex to an older one, and the out-edges of vertex t are
/// exactly those created at step t.
class GrownGraph {
 public:
  GrownGraph() = default;

  /// Assembles a graph from per-vertex positions ((n + 1) * dimension values,
  /// slot 0 unused; may be empty when positions are unknown) and
  /// out-edge lists in CSR form (offsets has n + 2 entries, indexed by id).
  /// Validates edge direction, ordering and bounds; throws UsageError.
  GrownGraph(ModelParams params, std::vector<double> positions,
             std::vector<std::uint64_t> out_offsets, std::vector<VertexId> out_targets);

  const ModelParams& params() const noexcept { return params_; }
  std::uint64_t vertex_count() const noexcept { return n_; }
  std::uint64_t edge_count() const noexcept { return out_targets_.size(); }
  int dimension() const noexcept { return params_.dimension; }

  bool has_positions() const noexcept { return !positions_.empty(); }
  /// Throws UsageError when the graph carries no positions.
  std::span<const double> position(VertexId v) const;

  /// Out-neighbors ascending by id (the order their coins were flipped).
  std::span<const VertexId> out_neighbors(VertexId v) const;
  /// In-neighbors ascending by id, which is also their arrival order.
  std::span<const VertexId> in_neighbors(VertexId v) const;

  std::uint64_t in_degree(VertexId v) const { return in_neighbors(v).size(); }
  std::uint64_t out_degree(VertexId v) const { return out_neighbors(v).size(); }

  /// deg^-(v, t): in-neighbors are born (and link) at their own birth step,
  /// so this counts in-neighbors with id <= t.
  std::uint64_t in_degree_at(VertexId v, std::uint64_t t) const;

  /// Materializes trajectories for the vertices selected by the policy,
  /// replacing any existing ones.
  void track(const TrackPolicy& policy);
  void set_trajectory(VertexId v, Trajectory trajectory);
  bool has_trajectory(VertexId v) const noexcept;
  /// Throws UsageError if v has no recorded trajectory.
  const Trajectory& trajectory(VertexId v) const;
  std::size_t tracked_count() const noexcept;

  /// Samples at every in-degree change of v, at its birth, and at the
  /// geometric checkpoints ceil(n / 2^j) not earlier than its birth.
  Trajectory build_trajectory(VertexId v) const;

  /// Vertices sorted by final in-degree descending, ties by ascending id.
  std::vector<VertexId> top_by_in_degree(std::size_t k) const;

  friend bool operator==(const GrownGraph&, const GrownGraph&) = default;

 private:
  void check_vertex(VertexId v) const;

  ModelParams params_{};
  std::uint64_t n_ = 0;
  std::vector<double> positions_;          // index 0 unused
  std::vector<std::uint64_t> out_offsets_;
  std::vector<VertexId> out_targets_;
  std::vector<std::uint64_t> in_offsets_;
  std::vector<VertexId> in_sources_;
  std::vector<Trajectory> trajectories_;   // empty vector for untracked
  std::vector<std::uint8_t> tracked_;
};

/// Checks the structural invariants (edge direction, no duplicate edges,
/// degree accounting). Returns an empty string when all hold, otherwise a
/// description of the first violation.
std::string check_invariants(const GrownGraph& graph);

}  // namespace spa
