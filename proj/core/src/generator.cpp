#include "spa/generator.hpp"

#include <new>

#include "spa/error.hpp"

namespace spa {

SpaProcess::SpaProcess(const ModelParams& params, CandidateSearch search)
    : params_(params), search_(search), streams_(params.seed) {
  params_.validate();
  if (search_ == CandidateSearch::Indexed) index_.emplace(params_, params_.n);
  const auto m = static_cast<std::size_t>(params_.dimension);
  positions_.assign(m, 0.0);  // slot for the unused id 0
  in_degree_.assign(1, 0);
  out_offsets_.assign(2, 0);
  x_.resize(m);
}

void SpaProcess::find_candidates(std::span<const double> x) {
  candidates_.clear();
  if (t_ == 0) return;
  if (index_) {
    candidates_ = index_->covering_spheres(x);
    if (fault_step_ && *fault_step_ == t_ + 1 && !candidates_.empty()) {
      candidates_.erase(candidates_.begin());
    }
    return;
  }
  // Naive scan: spheres of G_{t-1} are evaluated at time t-1 == t_.
  const auto m = static_cast<std::size_t>(params_.dimension);
  for (VertexId u = 1; u <= t_; ++u) {
    const Sphere s = sphere_of_influence(in_degree_[u], t_, params_);
    const std::span<const double> pu(positions_.data() + u * m, m);
    if (within_sphere(torus_distance(x, pu, params_.norm), s.volume, s.radius)) {
      candidates_.push_back(u);
    }
  }
}

void SpaProcess::step() {
  if (done()) throw UsageError("step: process already reached n");
  const std::uint64_t t = t_ + 1;
  const auto m = static_cast<std::uint32_t>(params_.dimension);
  for (std::uint32_t k = 0; k < m; ++k) x_[k] = streams_.position_uniform(t, k);

  find_candidates(x_);

  std::size_t first_new_edge = out_targets_.size();
  for (VertexId u : candidates_) {
    if (streams_.coin(t, u, params_.p)) out_targets_.push_back(u);
  }

  t_ = t;
  if (index_) index_->advance(t_);
  for (std::size_t e = first_new_edge; e < out_targets_.size(); ++e) {
    const VertexId u = out_targets_[e];
    ++in_degree_[u];
    if (index_) index_->set_in_degree(u, in_degree_[u]);
  }

  positions_.insert(positions_.end(), x_.begin(), x_.end());
  in_degree_.push_back(0);
  out_offsets_.push_back(out_targets_.size());
  if (index_) index_->insert(static_cast<VertexId>(t_), x_, 0);
}

GrownGraph SpaProcess::finish(const TrackPolicy& track) {
  while (!done()) step();
  GrownGraph graph(params_, std::move(positions_), std::move(out_offsets_), std::move(out_targets_));
  graph.track(track);
  return graph;
}

namespace {

GrownGraph run(const ModelParams& params, const TrackPolicy& track, CandidateSearch search) {
  try {
    SpaProcess process(params, search);
    return process.finish(track);
  } catch (const std::bad_alloc&) {
    throw ResourceError("out of memory while generating a graph with n=" + std::to_string(params.n));
  } catch (const std::length_error&) {
    throw ResourceError("graph too large to represent (n=" + std::to_string(params.n) + ")");
  }
}

}  // namespace

GrownGraph generate(const ModelParams& params, const TrackPolicy& track) {
  return run(params, track, CandidateSearch::Indexed);
}

GrownGraph generate_naive(const ModelParams& params, const TrackPolicy& track, bool force,
                          std::uint64_t guard) {
  if (params.n > guard && !force) {
    throw UsageError("naive generator limited to n <= " + std::to_string(guard) +
                     " (got " + std::to_string(params.n) + "); force to override");
  }
  return run(params, track, CandidateSearch::Naive);
}

}  // namespace spa
