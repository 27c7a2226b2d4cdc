#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "spa/clustering.hpp"
#include "spa/graph.hpp"
#include "spa/params.hpp"

namespace spa {

/// Everything a CLI run needs. Config-file keys mirror the field names:
/// p, a1, a2, dimension, norm, n, seed, replicas, seeds, tracking, split,
/// omega, delta, output_dir.
struct RunConfig {
  ModelParams model;
  int replicas = 1;
  std::vector<std::uint64_t> seeds;  // explicit list; empty means model.seed + i
  TrackPolicy tracking = TrackPolicy::all();
  SplitPolicy split = SplitPolicy::half_final();
  double delta = 0.1;
  std::string output_dir = "spa-out";

  /// One seed per replica: the explicit list, or model.seed, model.seed+1, ...
  std::vector<std::uint64_t> replica_seeds() const;

  /// Throws DomainError / UsageError on invalid values or repeated seeds.
  void validate() const;
};

/// Applies one key=value assignment. Throws UsageError on unknown keys.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// Parses a flat key=value file ('#' starts a comment). Throws ParseError with
/// the byte offset of a bad line.
RunConfig parse_config(std::string_view text, RunConfig base = {});
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});

/// Serializes every field as key=value lines, in declaration order.
std::string format_config(const RunConfig& config);

}  // namespace spa
