#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "spa/clustering.hpp"
#include "spa/config.hpp"
#include "spa/error.hpp"
#include "spa/generator.hpp"
#include "spa/graph_io.hpp"
#include "spa/parallel.hpp"
#include "spa/reference.hpp"
#include "spa/stats.hpp"

namespace spa::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

// Flags that map one-to-one onto RunConfig keys. Empty means "not given".
struct SettingFlags {
  std::string config_file;
  std::vector<std::pair<std::string, std::string>> values;  // key, flag value
  std::map<std::string, std::string> storage;

  void add(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    app->add_option(flag, storage[key], help);
    values.emplace_back(key, flag);
  }

  // Config file first, then explicit flags on top.
  void apply(RunConfig& config) const {
    if (!config_file.empty()) config = load_config(config_file, config);
    for (const auto& [key, flag] : values) {
      const auto& value = storage.at(key);
      if (!value.empty()) apply_setting(config, key, value);
    }
  }
};

void add_model_flags(CLI::App* app, SettingFlags& flags) {
  app->add_option("--config", flags.config_file, "key=value run configuration file");
  flags.add(app, "--p", "p", "link probability");
  flags.add(app, "--a1", "a1", "sphere volume degree coefficient");
  flags.add(app, "--a2", "a2", "sphere volume offset");
  flags.add(app, "--n", "n", "number of vertices");
  flags.add(app, "--dim", "dimension", "torus dimension");
  flags.add(app, "--norm", "norm", "l2 or linf");
  flags.add(app, "--seed", "seed", "base seed (replica i uses seed + i)");
  flags.add(app, "--seeds", "seeds", "explicit comma-separated replica seeds");
  flags.add(app, "--replicas", "replicas", "number of replicas");
  flags.add(app, "--tracking", "tracking", "trajectory recording: none, all or top:K");
}

void add_analysis_flags(CLI::App* app, SettingFlags& flags) {
  flags.add(app, "--delta", "delta", "degree band half-width, in (0, 1/2)");
  flags.add(app, "--split", "split", "old/new split: log or half");
  flags.add(app, "--omega-mode", "omega", "omega for the log split: loglog or a positive number");
  flags.add(app, "--out", "output_dir", "output directory");
}

std::string graph_label(const fs::path& path) {
  auto name = path.filename().string();
  for (const char* ext : {".gz", ".spa", ".tsv", ".txt"}) {
    if (name.size() > std::strlen(ext) && name.ends_with(ext)) name.resize(name.size() - std::strlen(ext));
  }
  return name;
}

std::vector<std::string> unique_labels(const std::vector<std::string>& files) {
  std::vector<std::string> labels;
  std::map<std::string, int> seen;
  for (const auto& f : files) {
    auto label = graph_label(f);
    if (label == "pooled") label = "pooled_graph";
    if (seen[label]++ > 0) label += "_" + std::to_string(seen[label]);
    labels.push_back(label);
  }
  return labels;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
}

std::string csv_degree(double d) {
  return format_real(d);
}

void append_curve(std::string& csv, const std::string& prefix, std::string_view variant,
                  const DegreeCurve& curve) {
  for (const auto& [d, bin] : curve) {
    csv += prefix;
    csv += variant;
    csv += ',' + csv_degree(d) + ',' + std::to_string(bin.count) + ',' + format_real(bin.mean) + '\n';
  }
}

std::vector<Variant> available_variants(const ClusteringReport& report) {
  if (report.split) return {std::begin(kAllVariants), std::end(kAllVariants)};
  return {Variant::Directed, Variant::Undirected};
}

// variant,d,count,mean_c: exact-degree curves, then banded ones with a _band suffix.
std::string curves_csv(const ClusteringReport& report, double delta) {
  std::string csv = "variant,d,count,mean_c\n";
  const auto variants = available_variants(report);
  for (Variant v : variants) append_curve(csv, "", to_string(v), clustering_curve(report, v));
  for (Variant v : variants) {
    append_curve(csv, "", std::string(to_string(v)) + "_band", banded_curve(report, v, delta));
  }
  return csv;
}

std::string scatter_csv(const ClusteringReport& report, const std::vector<Variant>& variants) {
  std::string csv = "variant,degree,c\n";
  for (Variant v : variants) {
    for (const auto& [d, c] : scatter_export(report, v)) {
      csv += std::string(to_string(v)) + ',' + std::to_string(d) + ',' + format_real(c) + '\n';
    }
  }
  return csv;
}

std::string census_csv(const DegreeCensus& census, const ModelParams& params) {
  const std::size_t i_max = census.counts.empty() ? 0 : census.counts.size() - 1;
  const auto theory = theory_constants(params, i_max);
  std::string csv = "i,count,fraction,c_theory\n";
  const double total = static_cast<double>(census.total());
  for (std::size_t i = 0; i <= i_max; ++i) {
    csv += std::to_string(i) + ',' + std::to_string(census.count(i)) + ',' +
           format_real(static_cast<double>(census.count(i)) / total) + ',' + format_real(theory.c[i]) +
           '\n';
  }
  return csv;
}

ModelParams without_seed(ModelParams p) {
  p.seed = 0;
  p.n = 0;
  return p;
}

void print_exception(std::ostream& err, const std::exception& e) {
  err << "spa: error: " << e.what() << '\n';
}

// ---------------------------------------------------------------- generate

struct GeneratedReplica {
  std::uint64_t seed;
  GrownGraph graph;
  double seconds;
};

std::vector<GeneratedReplica> generate_replicas(const RunConfig& config) {
  const auto seeds = config.replica_seeds();
  std::vector<GeneratedReplica> out(seeds.size());
  parallel_for(seeds.size(), [&](std::size_t begin, std::size_t end, unsigned) {
    for (std::size_t i = begin; i < end; ++i) {
      ModelParams params = config.model;
      params.seed = seeds[i];
      const auto start = Clock::now();
      auto graph = generate(params, config.tracking);
      out[i] = {seeds[i], std::move(graph),
                std::chrono::duration<double>(Clock::now() - start).count()};
    }
  });
  return out;
}

json params_json(const ModelParams& p) {
  return {{"p", p.p},     {"a1", p.a1},     {"a2", p.a2},    {"dimension", p.dimension},
          {"norm", std::string(to_string(p.norm))}, {"n", p.n}, {"seed", p.seed}};
}

int cmd_generate(const RunConfig& config, bool gzip, std::ostream& out) {
  const fs::path dir = config.output_dir;
  ensure_dir(dir);
  const auto replicas = generate_replicas(config);
  json manifest;
  manifest["tool"] = "spa";
  manifest["version"] = SPA_VERSION_STRING;
  manifest["command"] = "generate";
  manifest["tracking"] = config.tracking.to_string();
  manifest["config"] = format_config(config);
  manifest["replicas"] = json::array();
  for (const auto& r : replicas) {
    const std::string name = "graph_" + std::to_string(r.seed) + (gzip ? ".spa.gz" : ".spa");
    save_graph(dir / name, r.graph);
    manifest["replicas"].push_back({{"file", name},
                                    {"params", params_json(r.graph.params())},
                                    {"vertices", r.graph.vertex_count()},
                                    {"edges", r.graph.edge_count()},
                                    {"wall_seconds", r.seconds}});
    out << name << ": n=" << r.graph.vertex_count() << " edges=" << r.graph.edge_count()
        << " mean_out=" << mean_out_degree(r.graph) << " (" << r.seconds << " s)\n";
  }
  write_file_atomic(dir / "manifest.json", manifest.dump(2) + "\n");
  return kOk;
}

// ---------------------------------------------------------------- stats

struct StatsOptions {
  std::vector<std::string> files;
  bool no_split = false;
  std::uint64_t d_min = 10;
  std::size_t top = 20;
  double ball_volume = 0.05;
  bool scatter = true;
};

std::string check_row(const std::string& label, const TrajectoryCheck& c) {
  return label + ',' + std::to_string(c.vertex) + ',' + std::to_string(c.k) + ',' + format_real(c.t_v) +
         ',' + (c.vacuous ? "1" : "0") + ',' + std::to_string(c.samples) + ',' +
         format_real(c.ratio_min) + ',' + format_real(c.ratio_max) + '\n';
}

std::string fit_row(const std::string& label, const std::optional<PowerLawFit>& fit, double gamma,
                    std::uint64_t d_min, const std::string& note) {
  if (!fit) return label + ',' + std::to_string(d_min) + ",0,,,," + format_real(gamma) + ',' + note + '\n';
  return label + ',' + std::to_string(fit->d_min) + ',' + std::to_string(fit->tail_count) + ',' +
         format_real(fit->estimate) + ',' + format_real(fit->std_error) + ',' +
         format_real(fit->ls_exponent) + ',' + format_real(gamma) + ",\n";
}

std::optional<PowerLawFit> try_fit(const DegreeCensus& census, std::uint64_t d_min, std::string& note) {
  try {
    return powerlaw_exponent(census, d_min);
  } catch (const DomainError& e) {
    note = e.what();
    std::replace(note.begin(), note.end(), ',', ';');
    return std::nullopt;
  }
}

int cmd_stats(const RunConfig& config, const StatsOptions& opt, std::ostream& out) {
  const fs::path dir = config.output_dir;
  ensure_dir(dir);
  const auto labels = unique_labels(opt.files);
  const std::optional<SplitPolicy> split =
      opt.no_split ? std::nullopt : std::optional<SplitPolicy>(config.split);

  std::vector<ClusteringReport> reports;
  std::vector<std::uint64_t> pooled_counts;
  std::optional<ModelParams> shared;
  bool poolable = true;
  std::string exponent = "graph,d_min,tail_count,estimate,std_error,ls_exponent,gamma_theory,note\n";
  std::string trajectories = "graph,vertex,k,t_v,vacuous,samples,ratio_min,ratio_max\n";
  std::string global = "graph,n,edges,mean_out_degree,global_clustering\n";
  std::string balls = "graph,ball,i,count,fraction,c_theory\n";

  for (std::size_t f = 0; f < opt.files.size(); ++f) {
    const auto& label = labels[f];
    const GrownGraph graph = load_graph(opt.files[f]);
    const auto& params = graph.params();
    if (split && graph.tracked_count() < graph.vertex_count()) {
      throw UsageError(opt.files[f] + " lacks trajectories for every vertex; the old/new split needs "
                       "them (regenerate with --tracking all, or pass --no-split)");
    }
    if (!shared) shared = params;
    else if (without_seed(*shared) != without_seed(params)) poolable = false;

    auto report = compute_clustering(graph, split);
    write_file_atomic(dir / ("curves_" + label + ".csv"), curves_csv(report, config.delta));
    if (opt.scatter) {
      write_file_atomic(dir / ("scatter_" + label + ".csv"), scatter_csv(report, available_variants(report)));
    }

    const auto census = degree_census(graph);
    write_file_atomic(dir / ("census_" + label + ".csv"), census_csv(census, params));
    if (pooled_counts.size() < census.counts.size()) pooled_counts.resize(census.counts.size(), 0);
    for (std::size_t i = 0; i < census.counts.size(); ++i) pooled_counts[i] += census.counts[i];

    const double gamma = 1.0 + 1.0 / (params.p * params.a1);
    std::string note;
    auto fit = try_fit(census, opt.d_min, note);
    exponent += fit_row(label, fit, gamma, opt.d_min, note);

    if (split) {
      const double omega = config.split.omega.value_or(default_omega(graph.vertex_count()));
      for (VertexId v : graph.top_by_in_degree(opt.top)) {
        trajectories += check_row(label, trajectory_check(graph, v, omega));
      }
    }

    if (graph.has_positions()) {
      const auto theory = theory_constants(params, 2);
      const auto centers = ball_centers(graph.dimension());
      for (std::size_t b = 0; b < centers.size(); ++b) {
        auto counts = ball_census(graph, centers[b].coords(), opt.ball_volume, graph.vertex_count(), 2);
        for (std::size_t i = 0; i <= 2; ++i) {
          balls += label + ',' + std::to_string(b) + ',' + std::to_string(i) + ',' +
                   std::to_string(counts[i]) + ',' +
                   format_real(static_cast<double>(counts[i]) /
                               (opt.ball_volume * static_cast<double>(graph.vertex_count()))) +
                   ',' + format_real(theory.c[i]) + '\n';
        }
      }
    }

    const double cc = global_clustering(graph);
    global += label + ',' + std::to_string(graph.vertex_count()) + ',' + std::to_string(graph.edge_count()) +
              ',' + format_real(mean_out_degree(graph)) + ',' + format_real(cc) + '\n';
    out << label << ": n=" << graph.vertex_count() << " mean_out=" << mean_out_degree(graph)
        << " N0/n=" << static_cast<double>(census.count(0)) / static_cast<double>(census.total())
        << " gamma_hat=" << (fit ? std::to_string(fit->estimate) : std::string("n/a"))
        << " global_c=" << cc << '\n';
    reports.push_back(std::move(report));
  }

  if (poolable && shared) {
    const auto pooled = pool_reports(reports);
    write_file_atomic(dir / "curves_pooled.csv", curves_csv(pooled, config.delta));
    DegreeCensus census;
    census.counts = pooled_counts;
    census.t = census.total();
    write_file_atomic(dir / "census_pooled.csv", census_csv(census, *shared));
    std::string note;
    auto fit = try_fit(census, opt.d_min, note);
    exponent += fit_row("pooled", fit, 1.0 + 1.0 / (shared->p * shared->a1), opt.d_min, note);
  } else if (!poolable) {
    out << "note: inputs have different model parameters; pooled outputs skipped\n";
  }
  write_file_atomic(dir / "exponent.csv", exponent);
  write_file_atomic(dir / "global.csv", global);
  write_file_atomic(dir / "balls.csv", balls);
  if (split) write_file_atomic(dir / "trajectory.csv", trajectories);
  return kOk;
}

// ---------------------------------------------------------------- sweep

std::vector<double> parse_p_list(const std::string& text) {
  std::vector<double> ps;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    RunConfig scratch;
    apply_setting(scratch, "p", item);
    ps.push_back(scratch.model.p);
  }
  if (ps.empty()) throw UsageError("--ps needs at least one value");
  return ps;
}

int cmd_sweep(RunConfig config, const std::string& p_list, std::ostream& out) {
  const auto ps = parse_p_list(p_list);
  for (double p : ps) {
    RunConfig c = config;
    c.model.p = p;
    c.model.a2 = a2_for_mean_degree(p);
    c.validate();
  }
  const fs::path dir = config.output_dir;
  ensure_dir(dir);
  config.tracking = TrackPolicy::none();

  std::string csv = "p,variant,d,count,mean_c\n";
  json manifest;
  manifest["tool"] = "spa";
  manifest["version"] = SPA_VERSION_STRING;
  manifest["command"] = "sweep";
  manifest["config"] = format_config(config);
  manifest["runs"] = json::array();
  for (double p : ps) {
    RunConfig c = config;
    c.model.p = p;
    c.model.a2 = a2_for_mean_degree(p);
    const auto start = Clock::now();
    auto replicas = generate_replicas(c);
    std::vector<ClusteringReport> reports;
    double mean_out = 0.0;
    for (const auto& r : replicas) {
      reports.push_back(compute_clustering(r.graph));
      mean_out += mean_out_degree(r.graph) / static_cast<double>(replicas.size());
    }
    const auto pooled = pool_reports(reports);
    const std::string prefix = format_real(p) + ',';
    for (Variant v : {Variant::Directed, Variant::Undirected}) {
      append_curve(csv, prefix, to_string(v), clustering_curve(pooled, v));
    }
    for (Variant v : {Variant::Directed, Variant::Undirected}) {
      append_curve(csv, prefix, std::string(to_string(v)) + "_band", banded_curve(pooled, v, c.delta));
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    manifest["runs"].push_back({{"p", p},
                                {"a2", c.model.a2},
                                {"seeds", c.replica_seeds()},
                                {"mean_out_degree", mean_out},
                                {"wall_seconds", seconds}});
    out << "p=" << p << " a2=" << c.model.a2 << " replicas=" << replicas.size()
        << " mean_out=" << mean_out << " (" << seconds << " s)\n";
  }
  write_file_atomic(dir / "sweep.csv", csv);
  write_file_atomic(dir / "manifest.json", manifest.dump(2) + "\n");
  return kOk;
}

// ---------------------------------------------------------------- verify

struct VerifyOptions {
  std::optional<std::uint64_t> fault_step;
  bool force = false;
  std::uint64_t guard = 5000;
};

std::string compare_graphs(const GrownGraph& indexed, const GrownGraph& naive) {
  if (auto t = reference::first_divergent_step(indexed, naive)) {
    return "first divergent step t=" + std::to_string(*t);
  }
  for (VertexId v = 1; v <= indexed.vertex_count(); ++v) {
    if (indexed.in_degree(v) != naive.in_degree(v)) {
      return "in-degree of vertex " + std::to_string(v) + " differs";
    }
  }
  if (!(indexed == naive)) return "graphs differ outside positions and edges";
  return {};
}

int cmd_verify(const RunConfig& config, const VerifyOptions& opt, std::ostream& out) {
  if (config.model.n > opt.guard && !opt.force) {
    throw UsageError("verify runs an O(n^2) reference; n=" + std::to_string(config.model.n) +
                     " exceeds " + std::to_string(opt.guard) + " (pass --force to override)");
  }
  bool ok = true;
  const auto start = Clock::now();
  for (std::uint64_t seed : config.replica_seeds()) {
    ModelParams params = config.model;
    params.seed = seed;
    SpaProcess process(params, CandidateSearch::Indexed);
    if (opt.fault_step) process.inject_fault_at(*opt.fault_step);
    const GrownGraph indexed = process.finish(TrackPolicy::all());
    const GrownGraph naive = generate_naive(params, TrackPolicy::all(), true);

    std::vector<std::string> failures;
    if (auto diff = compare_graphs(indexed, naive); !diff.empty()) failures.push_back(diff);
    if (auto bad = check_invariants(indexed); !bad.empty()) failures.push_back("invariant: " + bad);
    const auto report = compute_clustering(indexed, config.split);
    if (auto diff = reference::compare_report(indexed, report); !diff.empty()) {
      failures.push_back("clustering: " + diff);
    }
    for (const auto& rec : report.per_vertex) {
      if (!rec.c_directed) continue;
      const auto counts = reference::old_new_edges(indexed, rec.vertex,
                                                   split_time(indexed, rec.vertex, config.split));
      const double pairs = static_cast<double>(rec.in_degree) * static_cast<double>(rec.in_degree - 1) / 2.0;
      if (static_cast<double>(counts.first) / pairs != *rec.c_old ||
          static_cast<double>(counts.second) / pairs != *rec.c_new) {
        failures.push_back("old/new split of vertex " + std::to_string(rec.vertex));
        break;
      }
    }
    const double cc = global_clustering(indexed), cc_ref = reference::global_clustering(indexed);
    if (std::abs(cc - cc_ref) > 1e-12) failures.push_back("global clustering");

    out << "seed " << seed << ": ";
    if (failures.empty()) {
      out << "PASS (n=" << indexed.vertex_count() << ", edges=" << indexed.edge_count()
          << ", eligible=" << report.per_vertex.size() << ")\n";
    } else {
      ok = false;
      out << "FAIL";
      for (const auto& f : failures) out << "; " << f;
      out << '\n';
    }
  }
  out << (ok ? "verify: PASS" : "verify: FAIL") << " ("
      << std::chrono::duration<double>(Clock::now() - start).count() << " s)\n";
  return ok ? kOk : kVerifyFailed;
}

// ---------------------------------------------------------------- trajectory / scatter

int cmd_trajectory(const RunConfig& config, const std::string& file, std::vector<std::uint64_t> vertices,
                   std::size_t top, std::ostream& out) {
  const GrownGraph graph = load_graph(file);
  if (vertices.empty()) {
    for (VertexId v : graph.top_by_in_degree(top)) vertices.push_back(v);
  }
  const fs::path dir = config.output_dir;
  ensure_dir(dir);
  const double omega = config.split.omega.value_or(default_omega(graph.vertex_count()));
  const double n = static_cast<double>(graph.vertex_count());
  const double pa1 = graph.params().p * graph.params().a1;
  std::string samples = "vertex,t,in_degree,expected,ratio\n";
  std::string checks = "graph,vertex,k,t_v,vacuous,samples,ratio_min,ratio_max\n";
  const auto label = graph_label(file);
  for (auto id : vertices) {
    if (id == 0 || id > graph.vertex_count()) {
      throw UsageError("vertex " + std::to_string(id) + " is outside 1.." +
                       std::to_string(graph.vertex_count()));
    }
    const auto v = static_cast<VertexId>(id);
    const auto k = static_cast<double>(graph.in_degree(v));
    for (const auto& s : graph.trajectory(v)) {
      const double expected = k * std::pow(static_cast<double>(s.t) / n, pa1);
      samples += std::to_string(v) + ',' + std::to_string(s.t) + ',' + std::to_string(s.in_degree) + ',' +
                 format_real(expected) + ',' +
                 format_real(expected > 0 ? static_cast<double>(s.in_degree) / expected : 0.0) + '\n';
    }
    const auto check = trajectory_check(graph, v, omega);
    checks += check_row(label, check);
    out << "vertex " << v << ": k=" << check.k << " T_v=" << check.t_v;
    if (check.vacuous) out << " (k below omega ln n, no claim)\n";
    else out << " ratio in [" << check.ratio_min << ", " << check.ratio_max << "]\n";
  }
  write_file_atomic(dir / "trajectories.csv", samples);
  write_file_atomic(dir / "trajectory.csv", checks);
  return kOk;
}

int cmd_scatter(const RunConfig& config, const std::string& file, const std::string& variant,
                bool no_split, std::ostream& out) {
  const GrownGraph graph = load_graph(file);
  std::vector<Variant> variants;
  for (Variant v : kAllVariants) {
    if (variant == "all" || variant == to_string(v)) variants.push_back(v);
  }
  if (variants.empty()) throw UsageError("unknown variant '" + variant + "'");
  const bool need_split = std::any_of(variants.begin(), variants.end(), [](Variant v) {
    return v == Variant::Old || v == Variant::New;
  });
  std::optional<SplitPolicy> split;
  if (need_split && !(no_split && variant == "all")) split = config.split;
  if (split && graph.tracked_count() < graph.vertex_count()) {
    if (variant == "all") {
      split.reset();
    } else {
      throw UsageError(file + " lacks trajectories; variant '" + variant + "' needs the old/new split");
    }
  }
  const auto report = compute_clustering(graph, split);
  if (!split) {
    variants.erase(std::remove_if(variants.begin(), variants.end(),
                                  [](Variant v) { return v == Variant::Old || v == Variant::New; }),
                   variants.end());
  }
  const fs::path dir = config.output_dir;
  ensure_dir(dir);
  write_file_atomic(dir / "scatter.csv", scatter_csv(report, variants));
  out << "scatter: " << report.per_vertex.size() << " eligible vertices, " << variants.size()
      << " variant(s)\n";
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spatial preferential attachment graphs: generation and clustering statistics", "spa"};
  app.set_version_flag("--version", std::string("spa ") + SPA_VERSION_STRING);
  app.require_subcommand(1);

  SettingFlags gen_flags, stats_flags, sweep_flags, verify_flags, traj_flags, scatter_flags;
  bool gzip = false;
  auto* gen = app.add_subcommand("generate", "grow SPA graphs and write them with a manifest");
  add_model_flags(gen, gen_flags);
  gen_flags.add(gen, "--out", "output_dir", "output directory");
  gen->add_flag("--gzip", gzip, "gzip the graph files");

  StatsOptions stats_opt;
  auto* stats = app.add_subcommand("stats", "clustering curves, census, exponent and trajectory checks");
  stats->add_option("graphs", stats_opt.files, "graph files")->required();
  add_analysis_flags(stats, stats_flags);
  stats->add_flag("--no-split", stats_opt.no_split, "skip the old/new split and trajectory checks");
  stats->add_option("--d-min", stats_opt.d_min, "lower cutoff of the exponent fit");
  stats->add_option("--top", stats_opt.top, "vertices in the trajectory check");
  stats->add_option("--ball-volume", stats_opt.ball_volume, "volume of the census balls");
  bool no_scatter = false;
  stats->add_flag("--no-scatter", no_scatter, "skip the per-vertex scatter files");

  std::string p_list = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9";
  auto* sweep = app.add_subcommand("sweep", "pooled clustering curves across link probabilities");
  add_model_flags(sweep, sweep_flags);
  sweep_flags.add(sweep, "--delta", "delta", "degree band half-width");
  sweep_flags.add(sweep, "--out", "output_dir", "output directory");
  sweep->add_option("--ps", p_list, "comma-separated p values; a2 is set to 10(1-p)/p");

  VerifyOptions verify_opt;
  std::uint64_t fault_step = 0;
  auto* verify = app.add_subcommand("verify", "compare indexed and reference generators and clustering");
  add_model_flags(verify, verify_flags);
  verify_flags.add(verify, "--split", "split", "old/new split: log or half");
  verify_flags.add(verify, "--omega-mode", "omega", "omega for the log split");
  verify->add_flag("--force", verify_opt.force, "allow n above the guard");
  verify->add_option("--guard", verify_opt.guard, "largest n without --force");
  auto* fault_opt = verify->add_option("--fault-step", fault_step,
                                       "test hook: the indexed search drops a candidate at this step");

  std::string traj_file;
  std::vector<std::uint64_t> traj_vertices;
  std::size_t traj_top = 20;
  auto* traj = app.add_subcommand("trajectory", "in-degree trajectories against k(t/n)^(pA1)");
  traj->add_option("graph", traj_file, "graph file")->required();
  traj->add_option("--vertex", traj_vertices, "vertices to report (default: top by in-degree)");
  traj->add_option("--top", traj_top, "number of top vertices");
  traj_flags.add(traj, "--omega-mode", "omega", "omega for the onset time");
  traj_flags.add(traj, "--out", "output_dir", "output directory");

  std::string scatter_file, scatter_variant = "all";
  bool scatter_no_split = false;
  auto* scatter = app.add_subcommand("scatter", "per-vertex (degree, clustering) pairs");
  scatter->add_option("graph", scatter_file, "graph file")->required();
  scatter->add_option("--variant", scatter_variant, "directed, undirected, old, new or all");
  add_analysis_flags(scatter, scatter_flags);
  scatter->add_flag("--no-split", scatter_no_split, "omit old/new values");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    RunConfig config;
    if (gen->parsed()) {
      gen_flags.apply(config);
      config.validate();
      return cmd_generate(config, gzip, out);
    }
    if (stats->parsed()) {
      stats_flags.apply(config);
      config.validate();
      stats_opt.scatter = !no_scatter;
      return cmd_stats(config, stats_opt, out);
    }
    if (sweep->parsed()) {
      config.model.n = 10000;
      sweep_flags.apply(config);
      return cmd_sweep(config, p_list, out);
    }
    if (verify->parsed()) {
      config.model.n = 2000;
      verify_flags.apply(config);
      config.validate();
      if (fault_opt->count() > 0) verify_opt.fault_step = fault_step;
      return cmd_verify(config, verify_opt, out);
    }
    if (traj->parsed()) {
      traj_flags.apply(config);
      return cmd_trajectory(config, traj_file, traj_vertices, traj_top, out);
    }
    if (scatter->parsed()) {
      scatter_flags.apply(config);
      config.validate();
      return cmd_scatter(config, scatter_file, scatter_variant, scatter_no_split, out);
    }
  } catch (const UsageError& e) {
    print_exception(err, e);
    return kUsage;
  } catch (const DomainError& e) {
    print_exception(err, e);
    return kUsage;
  } catch (const ResourceError& e) {
    print_exception(err, e);
    return kUsage;
  } catch (const ParseError& e) {
    print_exception(err, e);
    return kIo;
  } catch (const IoError& e) {
    print_exception(err, e);
    return kIo;
  } catch (const fs::filesystem_error& e) {
    print_exception(err, e);
    return kIo;
  }
  return kUsage;
}

}  // namespace spa::cli
