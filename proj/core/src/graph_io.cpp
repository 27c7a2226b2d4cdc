#include "spa/graph_io.hpp"

#include <zlib.h>

#include <array>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <system_error>
#include <vector>

#include "spa/error.hpp"

namespace spa {

namespace {

constexpr std::string_view kMagic = "%spa-graph v1";

void append_uint(std::string& out, std::uint64_t v) {
  std::array<char, 24> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  out.append(buf.data(), res.ptr);
}

bool ends_with_gz(const std::filesystem::path& path) {
  return path.extension() == ".gz";
}

// Splits a text buffer into lines while tracking byte offsets.
class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  bool next(std::string_view& line) {
    if (pos_ >= text_.size()) return false;
    offset_ = pos_;
    const auto nl = text_.find('\n', pos_);
    const auto end = nl == std::string_view::npos ? text_.size() : nl;
    line = text_.substr(pos_, end - pos_);
    pos_ = end == text_.size() ? end : end + 1;
    return true;
  }

  void unread() { pos_ = offset_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t offset_ = 0;
};

template <class T>
T parse_number(std::string_view field, std::size_t offset, std::string_view what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
    throw ParseError(offset, "invalid " + std::string(what) + " '" + std::string(field) + "'");
  }
  return value;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return fields;
}

}  // namespace

std::string format_real(double value) {
  std::array<char, 64> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

std::string serialize_graph(const GrownGraph& graph) {
  const ModelParams& p = graph.params();
  std::string out;
  out.reserve(64 + graph.edge_count() * 14);
  out += kMagic;
  out += "\np=" + format_real(p.p);
  out += "\na1=" + format_real(p.a1);
  out += "\na2=" + format_real(p.a2);
  out += "\ndimension=" + std::to_string(p.dimension);
  out += "\nnorm=" + std::string(to_string(p.norm));
  out += "\nn=" + std::to_string(p.n);
  out += "\nseed=" + std::to_string(p.seed);
  out += "\n%edges\n";
  for (VertexId v = 1; v <= graph.vertex_count(); ++v) {
    for (VertexId u : graph.out_neighbors(v)) {
      append_uint(out, v);
      out += '\t';
      append_uint(out, u);
      out += '\n';
    }
  }
  if (graph.has_positions()) {
    out += "%positions\n";
    for (VertexId v = 1; v <= graph.vertex_count(); ++v) {
      append_uint(out, v);
      for (double x : graph.position(v)) {
        out += '\t';
        out += format_real(x);
      }
      out += '\n';
    }
  }
  if (graph.tracked_count() > 0) {
    out += "%trajectories\n";
    for (VertexId v = 1; v <= graph.vertex_count(); ++v) {
      if (!graph.has_trajectory(v)) continue;
      for (const auto& s : graph.trajectory(v)) {
        append_uint(out, v);
        out += '\t';
        append_uint(out, s.t);
        out += '\t';
        append_uint(out, s.in_degree);
        out += '\n';
      }
    }
  }
  return out;
}

void write_graph(std::ostream& out, const GrownGraph& graph) {
  out << serialize_graph(graph);
}

GrownGraph parse_graph(std::string_view text) {
  LineReader reader(text);
  std::string_view line;
  if (!reader.next(line) || line != kMagic) throw ParseError(0, "missing '%spa-graph v1' header");

  ModelParams params;
  constexpr std::array<std::string_view, 7> kKeys = {"p", "a1", "a2", "dimension", "norm", "n", "seed"};
  std::array<bool, 7> seen{};
  while (reader.next(line) && !line.starts_with('%')) {
    const std::size_t off = reader.offset();
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(off, "expected key=value header line");
    const auto key = line.substr(0, eq);
    const auto value = line.substr(eq + 1);
    std::size_t idx = 0;
    while (idx < kKeys.size() && kKeys[idx] != key) ++idx;
    if (idx == kKeys.size()) throw ParseError(off, "unknown header key '" + std::string(key) + "'");
    if (seen[idx]) throw ParseError(off, "duplicate header key '" + std::string(key) + "'");
    seen[idx] = true;
    switch (idx) {
      case 0: params.p = parse_number<double>(value, off, "p"); break;
      case 1: params.a1 = parse_number<double>(value, off, "a1"); break;
      case 2: params.a2 = parse_number<double>(value, off, "a2"); break;
      case 3: params.dimension = parse_number<int>(value, off, "dimension"); break;
      case 4:
        try {
          params.norm = parse_norm(value);
        } catch (const UsageError& e) {
          throw ParseError(off, e.what());
        }
        break;
      case 5: params.n = parse_number<std::uint64_t>(value, off, "n"); break;
      case 6: params.seed = parse_number<std::uint64_t>(value, off, "seed"); break;
    }
  }
  for (std::size_t i = 0; i < kKeys.size(); ++i) {
    if (!seen[i]) throw ParseError(reader.offset(), "header lacks key '" + std::string(kKeys[i]) + "'");
  }
  try {
    params.validate();
  } catch (const DomainError& e) {
    throw ParseError(0, std::string("invalid parameters: ") + e.what());
  }
  if (line != "%edges") throw ParseError(reader.offset(), "expected %edges section");

  const std::uint64_t n = params.n;
  std::vector<std::uint64_t> offsets(n + 2, 0);
  std::vector<VertexId> targets;
  VertexId last_source = 0, last_target = 0;
  bool more = false;
  while ((more = reader.next(line)) && !line.starts_with('%')) {
    const std::size_t off = reader.offset();
    const auto f = split_tabs(line);
    if (f.size() != 2) throw ParseError(off, "edge line needs source<TAB>target");
    const auto s = parse_number<VertexId>(f[0], off, "edge source");
    const auto t = parse_number<VertexId>(f[1], off, "edge target");
    if (s > n || t == 0 || t >= s) throw ParseError(off, "edge must satisfy 1 <= target < source <= n");
    if (s < last_source || (s == last_source && t <= last_target)) {
      throw ParseError(off, "edges out of generation order");
    }
    last_source = s;
    last_target = t;
    ++offsets[s + 1];
    targets.push_back(t);
  }
  for (std::size_t i = 1; i < offsets.size(); ++i) offsets[i] += offsets[i - 1];

  const auto m = static_cast<std::size_t>(params.dimension);
  std::vector<double> positions;
  if (more && line == "%positions") {
    positions.assign((n + 1) * m, 0.0);
    VertexId expect = 1;
    while ((more = reader.next(line)) && !line.starts_with('%')) {
      const std::size_t off = reader.offset();
      const auto f = split_tabs(line);
      if (f.size() != m + 1) throw ParseError(off, "position line needs vertex and " + std::to_string(m) + " coordinates");
      const auto v = parse_number<VertexId>(f[0], off, "vertex");
      if (v != expect || v > n) throw ParseError(off, "positions must list vertices 1..n in order");
      for (std::size_t k = 0; k < m; ++k) {
        const double x = parse_number<double>(f[k + 1], off, "coordinate");
        if (!(x >= 0.0 && x < 1.0)) throw ParseError(off, "coordinate outside [0,1)");
        positions[v * m + k] = x;
      }
      ++expect;
    }
    if (expect != n + 1) throw ParseError(more ? reader.offset() : text.size(), "positions section lists fewer than n vertices");
  }

  GrownGraph graph(params, std::move(positions), std::move(offsets), std::move(targets));

  if (more && line == "%trajectories") {
    VertexId current = 0;
    Trajectory traj;
    std::vector<std::uint8_t> done(n + 1, 0);
    const auto flush = [&] {
      if (current != 0) graph.set_trajectory(current, std::move(traj));
      traj.clear();
    };
    while ((more = reader.next(line)) && !line.starts_with('%')) {
      const std::size_t off = reader.offset();
      const auto f = split_tabs(line);
      if (f.size() != 3) throw ParseError(off, "trajectory line needs vertex<TAB>t<TAB>in_degree");
      const auto v = parse_number<VertexId>(f[0], off, "vertex");
      const auto t = parse_number<std::uint64_t>(f[1], off, "time");
      const auto d = parse_number<std::uint64_t>(f[2], off, "in-degree");
      if (v == 0 || v > n || t < v || t > n) throw ParseError(off, "trajectory sample out of range");
      if (v != current) {
        if (done[v]) throw ParseError(off, "trajectory samples of a vertex must be contiguous");
        flush();
        current = v;
        done[v] = 1;
      } else if (!traj.empty() && (t <= traj.back().t || d < traj.back().in_degree)) {
        throw ParseError(off, "trajectory samples must have increasing t and non-decreasing degree");
      }
      traj.push_back({t, d});
    }
    flush();
  }
  if (more) throw ParseError(reader.offset(), "unexpected section '" + std::string(line) + "'");
  return graph;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  auto tmp = path;
  tmp += ".tmp";
  if (ends_with_gz(path)) {
    gzFile gz = gzopen(tmp.c_str(), "wb");
    if (gz == nullptr) throw IoError("cannot open " + tmp.string() + " for writing");
    std::size_t written = 0;
    while (written < contents.size()) {
      const auto chunk = static_cast<unsigned>(std::min<std::size_t>(contents.size() - written, 1u << 30));
      if (gzwrite(gz, contents.data() + written, chunk) != static_cast<int>(chunk)) {
        gzclose(gz);
        throw IoError("write failed for " + tmp.string());
      }
      written += chunk;
    }
    if (gzclose(gz) != Z_OK) throw IoError("close failed for " + tmp.string());
  } else {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.close();
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

void save_graph(const std::filesystem::path& path, const GrownGraph& graph) {
  write_file_atomic(path, serialize_graph(graph));
}

GrownGraph load_graph(const std::filesystem::path& path) {
  std::string text;
  if (ends_with_gz(path)) {
    gzFile gz = gzopen(path.c_str(), "rb");
    if (gz == nullptr) throw IoError("cannot open " + path.string());
    std::array<char, 1 << 16> buf;
    int got;
    while ((got = gzread(gz, buf.data(), static_cast<unsigned>(buf.size()))) > 0) text.append(buf.data(), static_cast<std::size_t>(got));
    const bool failed = got < 0;
    gzclose(gz);
    if (failed) throw IoError("corrupt gzip stream in " + path.string());
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    text = std::move(ss).str();
  }
  return parse_graph(text);
}

}  // namespace spa
