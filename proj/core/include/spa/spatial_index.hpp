#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "spa/params.hpp"

namespace spa {

using VertexId = std::uint32_t;  // 1-based birth index

/// Snapshot of one indexed sphere of influence at the index's current time.
struct InfluenceEntry {
  VertexId vertex_id;
  std::vector<double> position;
  std::uint64_t in_degree;
  double volume;
  double radius;
  int level;
};

/// Leveled uniform grid over the torus answering "which spheres of influence
/// contain x" at the current time t.
///
/// Level l has 2^l cells per axis. A vertex is stored once, in the cell holding
/// its center, at a level whose cell side is at least its radius; a query then
/// only inspects the 3^m cells around x on each level. Radii are never stored:
/// they are recomputed from (in_degree, t) when a candidate is tested, so the
/// final membership test is the exact closed-ball predicate.
///
/// Between degree changes a radius only shrinks, which keeps a vertex's stored
/// level valid (merely coarser than necessary). Levels are refreshed when the
/// degree changes and in a full sweep each time t doubles.
class SpatialIndex {
 public:
  /// `final_n` bounds the number of vertices and fixes the level range.
  SpatialIndex(const ModelParams& params, std::uint64_t final_n);

  std::uint64_t time() const noexcept { return time_; }
  std::size_t size() const noexcept { return size_; }
  int level_count() const noexcept { return static_cast<int>(levels_.size()); }
  bool contains(VertexId id) const noexcept;

  /// Adds a sphere centered at `position`. Requires time() >= 1.
  /// Throws UsageError on duplicate id, id 0, or dimension mismatch.
  void insert(VertexId id, std::span<const double> position, std::uint64_t in_degree = 0);

  /// Changes the in-degree (and therefore the radius) of an indexed vertex,
  /// re-bucketing it if its radius class changed. Throws UsageError on unknown id.
  void set_in_degree(VertexId id, std::uint64_t in_degree);

  /// Moves the clock from t to t+1; all radii decay accordingly.
  /// Throws UsageError unless t_new == time() + 1.
  void advance(std::uint64_t t_new);

  /// Vertices whose sphere at the current time contains x, ascending by id.
  std::vector<VertexId> covering_spheres(std::span<const double> x) const;

  InfluenceEntry entry(VertexId id) const;

  /// Radius class for a sphere: the finest level whose cell side is >= radius
  /// (level 0 for clamped spheres), clamped to the level range.
  int level_for(const Sphere& sphere) const noexcept;

  /// Number of full re-leveling sweeps run so far.
  std::size_t sweep_count() const noexcept { return sweeps_; }

 private:
  using Bucket = std::vector<VertexId>;
  using Level = std::unordered_map<std::uint64_t, Bucket>;

  static constexpr std::int8_t kAbsent = -1;

  std::span<const double> position(VertexId id) const noexcept;
  std::uint64_t cell_key(std::span<const double> x, int level) const noexcept;
  void place(VertexId id, int level);
  void unplace(VertexId id);
  void sweep();
  void ensure_capacity(VertexId id);

  ModelParams params_;
  std::uint64_t time_ = 0;
  std::uint64_t last_sweep_ = 1;
  std::size_t size_ = 0;
  std::size_t sweeps_ = 0;

  std::vector<double> positions_;        // dimension values per id
  std::vector<std::uint64_t> degree_;
  std::vector<std::int8_t> level_;       // kAbsent if not indexed
  std::vector<std::uint64_t> cell_;
  std::vector<std::uint32_t> slot_;      // position inside the bucket
  std::vector<Level> levels_;
};

}  // namespace spa
