#include "spa/reference.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace spa::reference {

bool has_edge(const GrownGraph& graph, VertexId from, VertexId to) {
  const auto out = graph.out_neighbors(from);
  return std::find(out.begin(), out.end(), to) != out.end();
}

namespace {

std::vector<VertexId> undirected_neighbors(const GrownGraph& g, VertexId v) {
  std::vector<VertexId> nb(g.in_neighbors(v).begin(), g.in_neighbors(v).end());
  nb.insert(nb.end(), g.out_neighbors(v).begin(), g.out_neighbors(v).end());
  return nb;
}

std::uint64_t linked_pairs(const GrownGraph& g, const std::vector<VertexId>& nb) {
  std::uint64_t edges = 0;
  for (std::size_t i = 0; i < nb.size(); ++i) {
    for (std::size_t j = i + 1; j < nb.size(); ++j) {
      if (has_edge(g, nb[i], nb[j]) || has_edge(g, nb[j], nb[i])) ++edges;
    }
  }
  return edges;
}

double pairs(std::size_t k) {
  return static_cast<double>(k) * static_cast<double>(k - 1) / 2.0;
}

}  // namespace

std::optional<double> clustering_directed(const GrownGraph& graph, VertexId v) {
  const std::vector<VertexId> nb(graph.in_neighbors(v).begin(), graph.in_neighbors(v).end());
  if (nb.size() < 2) return std::nullopt;
  // Ordered pairs: a directed edge between two in-neighbors counts once per direction present.
  std::uint64_t edges = 0;
  for (VertexId a : nb) {
    for (VertexId b : nb) {
      if (a != b && has_edge(graph, a, b)) ++edges;
    }
  }
  return static_cast<double>(edges) / pairs(nb.size());
}

std::optional<double> clustering_undirected(const GrownGraph& graph, VertexId v) {
  const auto nb = undirected_neighbors(graph, v);
  if (nb.size() < 2) return std::nullopt;
  return static_cast<double>(linked_pairs(graph, nb)) / pairs(nb.size());
}

std::pair<std::uint64_t, std::uint64_t> old_new_edges(const GrownGraph& graph, VertexId v,
                                                      std::uint64_t split_time) {
  const auto in = graph.in_neighbors(v);
  std::uint64_t old_edges = 0, new_edges = 0;
  for (VertexId a : in) {
    for (VertexId b : in) {
      if (a == b || !has_edge(graph, a, b)) continue;
      // b joined N^-(v) at step b, its own birth.
      if (graph.in_degree_at(v, b) > 0 && b <= split_time) {
        ++old_edges;
      } else {
        ++new_edges;
      }
    }
  }
  return {old_edges, new_edges};
}

double global_clustering(const GrownGraph& graph) {
  std::uint64_t closed = 0, triples = 0;
  for (VertexId v = 1; v <= graph.vertex_count(); ++v) {
    const auto nb = undirected_neighbors(graph, v);
    closed += linked_pairs(graph, nb);
    triples += nb.size() < 2 ? 0 : nb.size() * (nb.size() - 1) / 2;
  }
  return triples == 0 ? 0.0 : static_cast<double>(closed) / static_cast<double>(triples);
}

std::string compare_report(const GrownGraph& graph, const ClusteringReport& report) {
  std::size_t next = 0;
  for (VertexId v = 1; v <= graph.vertex_count(); ++v) {
    const auto cd = clustering_directed(graph, v);
    const auto cu = clustering_undirected(graph, v);
    if (!cd && !cu) continue;
    if (next >= report.per_vertex.size() || report.per_vertex[next].vertex != v) {
      return "vertex " + std::to_string(v) + " missing from report";
    }
    const auto& rec = report.per_vertex[next++];
    if (cd != rec.c_directed) return "directed clustering differs at vertex " + std::to_string(v);
    if (cu != rec.c_undirected) return "undirected clustering differs at vertex " + std::to_string(v);
  }
  if (next != report.per_vertex.size()) return "report lists ineligible vertices";
  return {};
}

std::optional<std::uint64_t> first_divergent_step(const GrownGraph& a, const GrownGraph& b) {
  const std::uint64_t n = std::min(a.vertex_count(), b.vertex_count());
  for (VertexId t = 1; t <= n; ++t) {
    const auto pa = a.position(t), pb = b.position(t);
    const auto oa = a.out_neighbors(t), ob = b.out_neighbors(t);
    if (!std::equal(pa.begin(), pa.end(), pb.begin(), pb.end()) ||
        !std::equal(oa.begin(), oa.end(), ob.begin(), ob.end())) {
      return t;
    }
  }
  if (a.vertex_count() != b.vertex_count()) return n + 1;
  return std::nullopt;
}

}  // namespace spa::reference
