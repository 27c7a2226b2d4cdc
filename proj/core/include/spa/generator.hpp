#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "spa/graph.hpp"
#include "spa/params.hpp"
#include "spa/rng.hpp"
#include "spa/spatial_index.hpp"

namespace spa {

enum class CandidateSearch { Indexed, Naive };

/// Default ceiling on n for the O(n^2) naive generator.
inline constexpr std::uint64_t kNaiveGuard = 10000;

/// The SPA process from the null graph G_0 up to G_n, one step at a time.
///
/// RNG contract: the position of v_t takes m uniforms from the position lane
/// of step t; the coin for candidate u takes one uniform addressed by (t, u).
/// Coins are flipped in ascending birth order. Indexed and naive candidate
/// search therefore produce bit-identical graphs.
class SpaProcess {
 public:
  explicit SpaProcess(const ModelParams& params, CandidateSearch search = CandidateSearch::Indexed);

  std::uint64_t time() const noexcept { return t_; }
  bool done() const noexcept { return t_ >= params_.n; }
  const ModelParams& params() const noexcept { return params_; }

  /// Builds G_t from G_{t-1}. Throws UsageError once t == n.
  void step();

  /// Candidates tested at the most recent step (vertices whose sphere contained v_t).
  const std::vector<VertexId>& last_candidates() const noexcept { return candidates_; }

  std::uint64_t in_degree(VertexId v) const { return in_degree_.at(v); }

  /// Runs remaining steps and returns the graph with trajectories per policy.
  /// Consumes the process state; call at most once.
  GrownGraph finish(const TrackPolicy& track = TrackPolicy::all());

  /// Test hook: at step t the indexed search silently drops its first candidate.
  void inject_fault_at(std::uint64_t t) noexcept { fault_step_ = t; }

 private:
  void find_candidates(std::span<const double> x);

  ModelParams params_;
  CandidateSearch search_;
  StepStreams streams_;
  std::optional<SpatialIndex> index_;
  std::uint64_t t_ = 0;
  std::optional<std::uint64_t> fault_step_;

  std::vector<double> positions_;
  std::vector<std::uint64_t> in_degree_;
  std::vector<std::uint64_t> out_offsets_;
  std::vector<VertexId> out_targets_;
  std::vector<VertexId> candidates_;
  std::vector<double> x_;
};

/// Indexed generation of G_n. Allocation failure raises ResourceError.
GrownGraph generate(const ModelParams& params, const TrackPolicy& track = TrackPolicy::all());

/// Reference O(n^2) generator scanning every prior vertex. Same output as
/// generate(). Throws UsageError when n exceeds `guard` unless `force`.
GrownGraph generate_naive(const ModelParams& params, const TrackPolicy& track = TrackPolicy::all(),
                          bool force = false, std::uint64_t guard = kNaiveGuard);

}  // namespace spa
