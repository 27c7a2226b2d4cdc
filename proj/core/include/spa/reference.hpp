#pragma once

// Brute-force reference computations: pairwise enumeration over neighbor
// sets with explicit edge lookups. Quadratic in degree; used to cross-check
// the fast paths in tests and in `spa verify`.

#include <cstdint>
#include <optional>
#include <string>

#include "spa/clustering.hpp"
#include "spa/graph.hpp"

namespace spa::reference {

/// True iff the directed edge (from, to) exists.
bool has_edge(const GrownGraph& graph, VertexId from, VertexId to);

std::optional<double> clustering_directed(const GrownGraph& graph, VertexId v);
std::optional<double> clustering_undirected(const GrownGraph& graph, VertexId v);

/// Counts (old, new) edges of E(N^-(v)) given an explicit split time.
std::pair<std::uint64_t, std::uint64_t> old_new_edges(const GrownGraph& graph, VertexId v,
                                                      std::uint64_t split_time);

/// Triangles and connected triples by enumerating every vertex triple around
/// each center.
double global_clustering(const GrownGraph& graph);

/// Compares a clustering report against pairwise enumeration. Returns an
/// empty string on exact agreement, else the first mismatch.
std::string compare_report(const GrownGraph& graph, const ClusteringReport& report);

/// Compares two graphs vertex by vertex in birth order. Returns the first step
/// t at which positions or out-edges differ, or nullopt when identical.
std::optional<std::uint64_t> first_divergent_step(const GrownGraph& a, const GrownGraph& b);

}  // namespace spa::reference
