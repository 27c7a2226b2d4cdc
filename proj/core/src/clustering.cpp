#include "spa/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spa/error.hpp"
#include "spa/parallel.hpp"

namespace spa {

namespace {

double pairs(std::uint64_t k) {
  return static_cast<double>(k) * static_cast<double>(k - 1) / 2.0;
}

struct EdgeCounts {
  std::uint64_t total = 0;
  std::uint64_t old = 0;  // target arrived at or before the split time
};

// Directed edges u -> w with u, w both in-neighbors of v. Out-degrees are
// small, so walking out-lists of in-neighbors beats pairwise enumeration.
template <class Member>
EdgeCounts count_in_neighborhood(const GrownGraph& g, VertexId v, Member&& member,
                                 std::uint64_t split) {
  EdgeCounts c;
  for (VertexId u : g.in_neighbors(v)) {
    for (VertexId w : g.out_neighbors(u)) {
      if (w > v && member(w)) {
        ++c.total;
        if (w <= split) ++c.old;
      }
    }
  }
  return c;
}

// Undirected view: in- and out-neighbors are disjoint (ids above / below v)
// and no pair is joined in both directions, so each edge is seen once.
template <class Member>
std::uint64_t count_neighborhood(const GrownGraph& g, VertexId v, Member&& member) {
  std::uint64_t total = 0;
  const auto visit = [&](VertexId u) {
    for (VertexId w : g.out_neighbors(u)) {
      if (member(w)) ++total;
    }
  };
  for (VertexId u : g.in_neighbors(v)) visit(u);
  for (VertexId u : g.out_neighbors(v)) visit(u);
  return total;
}

bool contains_sorted(std::span<const VertexId> s, VertexId x) {
  return std::binary_search(s.begin(), s.end(), x);
}

double resolved_omega(const SplitPolicy& policy, std::uint64_t n) {
  return policy.omega.value_or(default_omega(n));
}

}  // namespace

SplitPolicy SplitPolicy::parse(std::string_view text) {
  if (text == "log") return threshold_log();
  if (text == "half") return half_final();
  throw UsageError("split mode must be 'log' or 'half', got '" + std::string(text) + "'");
}

std::string_view SplitPolicy::name() const noexcept {
  return mode == Mode::ThresholdLog ? "log" : "half";
}

double default_omega(std::uint64_t n) {
  return std::log(std::log(static_cast<double>(n)));
}

std::uint64_t split_time(const GrownGraph& graph, VertexId v, const SplitPolicy& policy) {
  const Trajectory& traj = graph.trajectory(v);
  const std::uint64_t n = graph.vertex_count();
  const double threshold =
      policy.mode == SplitPolicy::Mode::HalfFinal
          ? static_cast<double>(graph.in_degree(v)) / 2.0
          : resolved_omega(policy, n) * std::log(static_cast<double>(n));
  for (const auto& s : traj) {
    if (static_cast<double>(s.in_degree) > threshold) return s.t;
  }
  return n;
}

std::optional<double> local_clustering_directed(const GrownGraph& graph, VertexId v) {
  const auto in = graph.in_neighbors(v);
  if (in.size() < 2) return std::nullopt;
  const auto c = count_in_neighborhood(
      graph, v, [&](VertexId w) { return contains_sorted(in, w); }, 0);
  return static_cast<double>(c.total) / pairs(in.size());
}

std::optional<double> local_clustering_undirected(const GrownGraph& graph, VertexId v) {
  const auto in = graph.in_neighbors(v);
  const auto out = graph.out_neighbors(v);
  const std::uint64_t degree = in.size() + out.size();
  if (degree < 2) return std::nullopt;
  const auto total = count_neighborhood(graph, v, [&](VertexId w) {
    return w > v ? contains_sorted(in, w) : contains_sorted(out, w);
  });
  return static_cast<double>(total) / pairs(degree);
}

OldNewSplit old_new_split(const GrownGraph& graph, VertexId v, const SplitPolicy& policy) {
  const auto in = graph.in_neighbors(v);
  if (in.size() < 2) throw UsageError("old_new_split: vertex needs in-degree >= 2");
  const std::uint64_t split = split_time(graph, v, policy);
  const auto c = count_in_neighborhood(
      graph, v, [&](VertexId w) { return contains_sorted(in, w); }, split);
  const double denom = pairs(in.size());
  return {split, c.old, c.total - c.old, static_cast<double>(c.old) / denom,
          static_cast<double>(c.total - c.old) / denom};
}

ClusteringReport compute_clustering(const GrownGraph& graph,
                                    const std::optional<SplitPolicy>& split) {
  const std::uint64_t n = graph.vertex_count();
  if (split) {
    for (VertexId v = 1; v <= n; ++v) {
      if (graph.in_degree(v) >= 2 && !graph.has_trajectory(v)) {
        throw UsageError("old/new split needs trajectories (vertex " + std::to_string(v) +
                         " has none); regenerate with --track all");
      }
    }
  }

  std::vector<VertexClustering> all(n);
  std::vector<std::uint8_t> eligible(n, 0);
  const unsigned workers = worker_count();
  std::vector<std::vector<VertexId>> markers(workers);

  parallel_for(n, [&](std::size_t begin, std::size_t end, unsigned worker) {
    auto& mark = markers[worker];
    mark.assign(n + 1, 0);
    for (std::size_t i = begin; i < end; ++i) {
      const auto v = static_cast<VertexId>(i + 1);
      const auto in = graph.in_neighbors(v);
      const auto out = graph.out_neighbors(v);
      VertexClustering rec;
      rec.vertex = v;
      rec.in_degree = in.size();
      rec.degree = in.size() + out.size();
      if (rec.degree < 2) continue;
      eligible[i] = 1;

      // Every vertex id is marked with v at most once per role; in-neighbors
      // are marked first so the directed count sees only N^-(v).
      for (VertexId u : in) mark[u] = v;
      if (rec.in_degree >= 2) {
        const std::uint64_t split_at = split ? split_time(graph, v, *split) : 0;
        const auto c = count_in_neighborhood(
            graph, v, [&](VertexId w) { return mark[w] == v; }, split_at);
        const double denom = pairs(rec.in_degree);
        rec.directed_edges = c.total;
        rec.c_directed = static_cast<double>(c.total) / denom;
        if (split) {
          rec.c_old = static_cast<double>(c.old) / denom;
          rec.c_new = static_cast<double>(c.total - c.old) / denom;
        }
      }
      for (VertexId u : out) mark[u] = v;
      rec.undirected_edges = count_neighborhood(graph, v, [&](VertexId w) { return mark[w] == v; });
      rec.c_undirected = static_cast<double>(rec.undirected_edges) / pairs(rec.degree);
      all[i] = rec;
    }
  });

  ClusteringReport report;
  report.split = split;
  for (std::size_t i = 0; i < n; ++i) {
    if (eligible[i]) report.per_vertex.push_back(all[i]);
  }
  return report;
}

ClusteringReport pool_reports(std::span<const ClusteringReport> reports) {
  ClusteringReport pooled;
  for (const auto& r : reports) {
    pooled.per_vertex.insert(pooled.per_vertex.end(), r.per_vertex.begin(), r.per_vertex.end());
    if (!pooled.split) pooled.split = r.split;
  }
  return pooled;
}

std::string_view to_string(Variant variant) {
  switch (variant) {
    case Variant::Directed: return "directed";
    case Variant::Undirected: return "undirected";
    case Variant::Old: return "old";
    case Variant::New: return "new";
  }
  return "directed";
}

namespace {

// (degree used for binning, value) if the variant is defined for the record.
std::optional<std::pair<std::uint64_t, double>> value_of(const VertexClustering& rec, Variant variant) {
  switch (variant) {
    case Variant::Directed:
      if (rec.c_directed) return std::pair{rec.in_degree, *rec.c_directed};
      break;
    case Variant::Undirected:
      if (rec.c_undirected) return std::pair{rec.degree, *rec.c_undirected};
      break;
    case Variant::Old:
      if (rec.c_old) return std::pair{rec.in_degree, *rec.c_old};
      break;
    case Variant::New:
      if (rec.c_new) return std::pair{rec.in_degree, *rec.c_new};
      break;
  }
  return std::nullopt;
}

void require_variant(const ClusteringReport& report, Variant variant) {
  if ((variant == Variant::Old || variant == Variant::New) && !report.split) {
    throw UsageError("old/new curves need a report computed with a split policy");
  }
}

}  // namespace

DegreeCurve clustering_curve(const ClusteringReport& report, Variant variant) {
  require_variant(report, variant);
  std::map<std::uint64_t, std::pair<std::uint64_t, double>> acc;
  for (const auto& rec : report.per_vertex) {
    if (auto val = value_of(rec, variant)) {
      auto& [count, sum] = acc[val->first];
      ++count;
      sum += val->second;
    }
  }
  DegreeCurve curve;
  for (const auto& [d, cs] : acc) {
    curve[static_cast<double>(d)] = {cs.first, cs.second / static_cast<double>(cs.first)};
  }
  return curve;
}

std::vector<double> geometric_grid(double max_degree, double ratio, double start) {
  if (!(ratio > 1.0)) throw UsageError("geometric grid ratio must be > 1");
  std::vector<double> grid;
  for (double d = start; d <= max_degree; d *= ratio) grid.push_back(d);
  return grid;
}

DegreeCurve banded_curve(const ClusteringReport& report, Variant variant, double delta,
                         std::optional<std::vector<double>> grid) {
  if (!(delta > 0.0 && delta < 0.5)) throw UsageError("delta must lie in (0, 1/2)");
  require_variant(report, variant);

  // Degree histogram of (count, sum) so each band is a range query.
  std::map<std::uint64_t, std::pair<std::uint64_t, double>> acc;
  for (const auto& rec : report.per_vertex) {
    if (auto val = value_of(rec, variant)) {
      auto& [count, sum] = acc[val->first];
      ++count;
      sum += val->second;
    }
  }
  if (!grid) {
    const double max_degree = acc.empty() ? 0.0 : static_cast<double>(acc.rbegin()->first);
    grid = geometric_grid(max_degree);
  }

  DegreeCurve curve;
  for (double d : *grid) {
    const double lo = (1.0 - delta) * d;
    const double hi = (1.0 + delta) * d;
    std::uint64_t count = 0;
    double sum = 0.0;
    for (auto it = acc.lower_bound(static_cast<std::uint64_t>(std::ceil(lo)));
         it != acc.end() && static_cast<double>(it->first) <= hi; ++it) {
      if (static_cast<double>(it->first) < lo) continue;
      count += it->second.first;
      sum += it->second.second;
    }
    if (count > 0) curve[d] = {count, sum / static_cast<double>(count)};
  }
  return curve;
}

std::vector<std::pair<std::uint64_t, double>> scatter_export(const ClusteringReport& report,
                                                             Variant variant) {
  require_variant(report, variant);
  std::vector<std::pair<std::uint64_t, double>> out;
  for (const auto& rec : report.per_vertex) {
    if (auto val = value_of(rec, variant)) out.push_back(*val);
  }
  return out;
}

double global_clustering(const GrownGraph& graph) {
  const std::uint64_t n = graph.vertex_count();
  std::vector<VertexId> mark(n + 1, 0);
  // Sum over v of |E(N(v))| counts every triangle three times.
  std::uint64_t closed = 0;
  double triples = 0.0;
  for (VertexId v = 1; v <= n; ++v) {
    const std::uint64_t degree = graph.in_degree(v) + graph.out_degree(v);
    if (degree < 2) continue;
    for (VertexId u : graph.in_neighbors(v)) mark[u] = v;
    for (VertexId u : graph.out_neighbors(v)) mark[u] = v;
    closed += count_neighborhood(graph, v, [&](VertexId w) { return mark[w] == v; });
    triples += pairs(degree);
  }
  return triples > 0.0 ? static_cast<double>(closed) / triples : 0.0;
}

}  // namespace spa
