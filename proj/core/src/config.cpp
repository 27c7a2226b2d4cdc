#include "spa/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "spa/error.hpp"
#include "spa/graph_io.hpp"

namespace spa {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T number(std::string_view key, std::string_view value) {
  T out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size() || value.empty()) {
    throw UsageError("invalid value '" + std::string(value) + "' for " + std::string(key));
  }
  return out;
}

}  // namespace

std::vector<std::uint64_t> RunConfig::replica_seeds() const {
  if (!seeds.empty()) return seeds;
  std::vector<std::uint64_t> out;
  for (int i = 0; i < replicas; ++i) out.push_back(model.seed + static_cast<std::uint64_t>(i));
  return out;
}

void RunConfig::validate() const {
  model.validate();
  if (replicas < 1) throw UsageError("replicas must be >= 1");
  if (!seeds.empty() && seeds.size() != static_cast<std::size_t>(replicas)) {
    throw UsageError("seeds list has " + std::to_string(seeds.size()) + " entries but replicas=" +
                     std::to_string(replicas));
  }
  const auto all = replica_seeds();
  if (std::set<std::uint64_t>(all.begin(), all.end()).size() != all.size()) {
    throw UsageError("replica seeds must be pairwise distinct");
  }
  if (!(delta > 0.0 && delta < 0.5)) throw UsageError("delta must lie in (0, 1/2)");
  if (split.omega && !(*split.omega > 0.0)) throw UsageError("omega must be > 0");
}

void apply_setting(RunConfig& c, std::string_view key, std::string_view value) {
  if (key == "p") c.model.p = number<double>(key, value);
  else if (key == "a1") c.model.a1 = number<double>(key, value);
  else if (key == "a2") c.model.a2 = number<double>(key, value);
  else if (key == "dimension") c.model.dimension = number<int>(key, value);
  else if (key == "norm") c.model.norm = parse_norm(value);
  else if (key == "n") c.model.n = number<std::uint64_t>(key, value);
  else if (key == "seed") c.model.seed = number<std::uint64_t>(key, value);
  else if (key == "replicas") c.replicas = number<int>(key, value);
  else if (key == "seeds") {
    c.seeds.clear();
    std::size_t start = 0;
    while (start <= value.size()) {
      const auto comma = value.find(',', start);
      const auto item = trim(value.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
      if (!item.empty()) c.seeds.push_back(number<std::uint64_t>(key, item));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (!c.seeds.empty()) c.replicas = static_cast<int>(c.seeds.size());
  }
  else if (key == "tracking") c.tracking = TrackPolicy::parse(value);
  else if (key == "split") {
    const auto omega = c.split.omega;
    c.split = SplitPolicy::parse(value);
    if (c.split.mode == SplitPolicy::Mode::ThresholdLog) c.split.omega = omega;
  }
  else if (key == "omega") {
    if (value == "loglog") c.split.omega.reset();
    else c.split.omega = number<double>(key, value);
  }
  else if (key == "delta") c.delta = number<double>(key, value);
  else if (key == "output_dir") c.output_dir = std::string(value);
  else throw UsageError("unknown configuration key '" + std::string(key) + "'");
}

RunConfig parse_config(std::string_view text, RunConfig base) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t offset = pos;
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = text.substr(pos, nl - pos);
    pos = nl + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(offset, "expected key=value");
    try {
      apply_setting(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const UsageError& e) {
      throw ParseError(offset, e.what());
    }
  }
  return base;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

std::string format_config(const RunConfig& c) {
  std::ostringstream out;
  out << "p=" << format_real(c.model.p) << '\n'
      << "a1=" << format_real(c.model.a1) << '\n'
      << "a2=" << format_real(c.model.a2) << '\n'
      << "dimension=" << c.model.dimension << '\n'
      << "norm=" << to_string(c.model.norm) << '\n'
      << "n=" << c.model.n << '\n'
      << "seed=" << c.model.seed << '\n'
      << "replicas=" << c.replicas << '\n';
  if (!c.seeds.empty()) {
    out << "seeds=";
    for (std::size_t i = 0; i < c.seeds.size(); ++i) out << (i ? "," : "") << c.seeds[i];
    out << '\n';
  }
  out << "tracking=" << c.tracking.to_string() << '\n'
      << "split=" << c.split.name() << '\n';
  if (c.split.omega) out << "omega=" << format_real(*c.split.omega) << '\n';
  out << "delta=" << format_real(c.delta) << '\n'
      << "output_dir=" << c.output_dir << '\n';
  return out.str();
}

}  // namespace spa
