#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "spa/graph.hpp"

namespace spa {

/// Text graph format, version 1:
///
///   %spa-graph v1
///   p=<real>            a1=, a2=, dimension=, norm=, n=, seed= likewise, one per line
///   %edges
///   <source>\t<target>  one line per edge in generation order
///   %positions          optional
///   <vertex>\t<x1>\t...\t<xm>
///   %trajectories       optional
///   <vertex>\t<t>\t<in_degree>
///
/// Reals use the shortest representation that round-trips exactly, so
/// serialize(parse(text)) == text.
std::string serialize_graph(const GrownGraph& graph);
void write_graph(std::ostream& out, const GrownGraph& graph);

/// Throws ParseError carrying the byte offset of the offending line.
GrownGraph parse_graph(std::string_view text);

/// Writes atomically (temporary file + rename). Paths ending in .gz are
/// gzip-compressed. Throws IoError.
void save_graph(const std::filesystem::path& path, const GrownGraph& graph);

/// Reads plain or .gz files. Throws IoError or ParseError.
GrownGraph load_graph(const std::filesystem::path& path);

/// Shortest round-trip decimal form of a double.
std::string format_real(double value);

/// Writes text to path atomically. Throws IoError.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace spa
