#include "spa/graph.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "spa/error.hpp"

namespace spa {

TrackPolicy TrackPolicy::parse(std::string_view text) {
  if (text == "none") return none();
  if (text == "all") return all();
  if (text.starts_with("top:")) {
    std::size_t k = 0;
    const auto digits = text.substr(4);
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec == std::errc{} && ptr == digits.data() + digits.size() && k > 0) return top(k);
  }
  throw UsageError("tracking policy must be none, all or top:K, got '" + std::string(text) + "'");
}

std::string TrackPolicy::to_string() const {
  switch (kind) {
    case Kind::None: return "none";
    case Kind::All: return "all";
    case Kind::TopK: return "top:" + std::to_string(k);
  }
  return "none";
}

GrownGraph::GrownGraph(ModelParams params, std::vector<double> positions,
                       std::vector<std::uint64_t> out_offsets, std::vector<VertexId> out_targets)
    : params_(params),
      n_(params.n),
      positions_(std::move(positions)),
      out_offsets_(std::move(out_offsets)),
      out_targets_(std::move(out_targets)) {
  const auto m = static_cast<std::size_t>(params_.dimension);
  if (!positions_.empty() && positions_.size() != (n_ + 1) * m) {
    throw UsageError("graph: position count does not match n");
  }
  if (out_offsets_.size() != n_ + 2) throw UsageError("graph: offset table does not match n");
  if (out_offsets_[0] != 0 || out_offsets_[1] != 0 || out_offsets_.back() != out_targets_.size()) {
    throw UsageError("graph: malformed offset table");
  }
  std::vector<std::uint64_t> in_count(n_ + 2, 0);
  for (VertexId v = 1; v <= n_; ++v) {
    if (out_offsets_[v + 1] < out_offsets_[v]) throw UsageError("graph: offsets not monotone");
    VertexId prev = 0;
    for (auto e = out_offsets_[v]; e < out_offsets_[v + 1]; ++e) {
      const VertexId u = out_targets_[e];
      if (u == 0 || u >= v) throw UsageError("graph: edge must point to an older vertex");
      if (u <= prev) throw UsageError("graph: out-edges must be strictly ascending");
      prev = u;
      ++in_count[u + 1];
    }
  }
  std::partial_sum(in_count.begin(), in_count.end(), in_count.begin());
  in_offsets_ = in_count;
  in_sources_.resize(out_targets_.size());
  for (VertexId v = 1; v <= n_; ++v) {
    for (auto e = out_offsets_[v]; e < out_offsets_[v + 1]; ++e) {
      in_sources_[in_count[out_targets_[e]]++] = v;
    }
  }
  trajectories_.resize(n_ + 1);
  tracked_.assign(n_ + 1, 0);
}

void GrownGraph::check_vertex(VertexId v) const {
  if (v == 0 || v > n_) throw UsageError("vertex id " + std::to_string(v) + " out of range");
}

std::span<const double> GrownGraph::position(VertexId v) const {
  check_vertex(v);
  if (positions_.empty()) throw UsageError("graph was loaded without positions");
  const auto m = static_cast<std::size_t>(params_.dimension);
  return {positions_.data() + v * m, m};
}

std::span<const VertexId> GrownGraph::out_neighbors(VertexId v) const {
  check_vertex(v);
  return {out_targets_.data() + out_offsets_[v], out_offsets_[v + 1] - out_offsets_[v]};
}

std::span<const VertexId> GrownGraph::in_neighbors(VertexId v) const {
  check_vertex(v);
  return {in_sources_.data() + in_offsets_[v], in_offsets_[v + 1] - in_offsets_[v]};
}

std::uint64_t GrownGraph::in_degree_at(VertexId v, std::uint64_t t) const {
  const auto in = in_neighbors(v);
  return static_cast<std::uint64_t>(
      std::upper_bound(in.begin(), in.end(), t, [](std::uint64_t x, VertexId s) { return x < s; }) -
      in.begin());
}

Trajectory GrownGraph::build_trajectory(VertexId v) const {
  std::vector<std::uint64_t> times{v};
  for (VertexId s : in_neighbors(v)) times.push_back(s);
  for (std::uint64_t j = 0; j < 64; ++j) {
    const std::uint64_t c = (n_ + (std::uint64_t{1} << j) - 1) >> j;
    if (c >= v) times.push_back(c);
    if (c <= 1) break;
  }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  Trajectory out;
  out.reserve(times.size());
  for (std::uint64_t t : times) out.push_back({t, in_degree_at(v, t)});
  return out;
}

std::vector<VertexId> GrownGraph::top_by_in_degree(std::size_t k) const {
  std::vector<VertexId> ids(n_);
  std::iota(ids.begin(), ids.end(), VertexId{1});
  const auto by_degree = [this](VertexId a, VertexId b) {
    const auto da = in_degree(a), db = in_degree(b);
    return da != db ? da > db : a < b;
  };
  k = std::min<std::size_t>(k, ids.size());
  std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(k), ids.end(), by_degree);
  ids.resize(k);
  return ids;
}

void GrownGraph::track(const TrackPolicy& policy) {
  trajectories_.assign(n_ + 1, {});
  tracked_.assign(n_ + 1, 0);
  std::vector<VertexId> selected;
  switch (policy.kind) {
    case TrackPolicy::Kind::None:
      return;
    case TrackPolicy::Kind::All:
      selected.resize(n_);
      std::iota(selected.begin(), selected.end(), VertexId{1});
      break;
    case TrackPolicy::Kind::TopK:
      selected = top_by_in_degree(policy.k);
      break;
  }
  for (VertexId v : selected) set_trajectory(v, build_trajectory(v));
}

void GrownGraph::set_trajectory(VertexId v, Trajectory trajectory) {
  check_vertex(v);
  trajectories_[v] = std::move(trajectory);
  tracked_[v] = 1;
}

bool GrownGraph::has_trajectory(VertexId v) const noexcept {
  return v >= 1 && v <= n_ && tracked_[v] != 0;
}

const Trajectory& GrownGraph::trajectory(VertexId v) const {
  if (!has_trajectory(v)) {
    throw UsageError("no trajectory recorded for vertex " + std::to_string(v) +
                     "; regenerate with tracking enabled (--track all or top:K)");
  }
  return trajectories_[v];
}

std::size_t GrownGraph::tracked_count() const noexcept {
  return static_cast<std::size_t>(std::count(tracked_.begin(), tracked_.end(), 1));
}

std::string check_invariants(const GrownGraph& graph) {
  std::uint64_t in_sum = 0, out_sum = 0;
  for (VertexId v = 1; v <= graph.vertex_count(); ++v) {
    const auto out = graph.out_neighbors(v);
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (out[i] >= v) return "edge (" + std::to_string(v) + "," + std::to_string(out[i]) + ") points forward";
      if (i > 0 && out[i] <= out[i - 1]) return "duplicate or unordered out-edge at vertex " + std::to_string(v);
    }
    out_sum += out.size();
    in_sum += graph.in_degree(v);
  }
  if (in_sum != graph.edge_count() || out_sum != graph.edge_count()) {
    return "degree sums do not match edge count";
  }
  return {};
}

}  // namespace spa
